#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bsvem/levelset.hpp"

namespace bsvem {

/// Polyhedral bulk mesh with boundary-first vertex numbering.
///
/// Cells reference faces through signed entries: f >= 0 means face f with its
/// stored loop (outward for this cell), f < 0 means face ~f = -f-1 traversed in
/// reverse. Vertices 0 .. num_boundary_nodes-1 are exactly the vertices lying
/// on boundary faces, so the trace of a nodal vector onto the surface is plain
/// index truncation.
struct PolyMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<int>> faces;  ///< Vertex loops.
  std::vector<std::vector<int>> cells;  ///< Signed face references.
  int num_boundary_nodes = 0;
  std::vector<int> boundary_faces;  ///< Ascending face indices with one incident cell.
  double nominal_h = 0.0;           ///< Generator meshsize metadata; 0 when unknown.

  static int face_of(int ref) { return ref >= 0 ? ref : ~ref; }
  static bool is_reversed(int ref) { return ref < 0; }
  static int make_ref(int face, bool reversed) { return reversed ? ~face : face; }

  /// Loop of face k of cell c, traversed so its normal points out of the cell.
  std::vector<int> oriented_face_loop(int c, int k) const;

  /// Ascending unique vertex indices of a cell; defines its local dof order.
  std::vector<int> cell_vertex_ids(int c) const;
};

/// Polygonal surface mesh extracted from the boundary of a PolyMesh. Vertex
/// indices are shared with the bulk mesh (all < num_boundary_nodes).
struct SurfaceMesh {
  std::vector<Eigen::Vector3d> vertices;  ///< Copies of the first M bulk vertices.
  std::vector<std::vector<int>> faces;    ///< Outward-oriented loops.
  std::vector<int> bulk_face_index;       ///< Originating face in the bulk mesh.
};

/// Shape-regularity and size summary of a mesh.
struct QualityReport {
  double h_max = 0.0;             ///< Largest cell diameter.
  double h_reported = 0.0;        ///< Nominal meshsize (grid diagonal) when known.
  double gamma1_observed = 0.0;   ///< Worst centroid star-shapedness ratio.
  double gamma2_observed = 0.0;   ///< Worst node-separation/diameter ratio.
  int num_vertices = 0;
  int num_faces = 0;
  int num_cells = 0;
  int num_boundary_faces = 0;
  int num_boundary_nodes = 0;
};

/// Builds a bulk mesh of the implicit domain by keeping the background-grid
/// cubes that lie inside, extruding the outermost square faces to the zero
/// level set (projected quads and laterals are split into triangles along the
/// shorter diagonal when not planar), and renumbering vertices boundary-first.
/// The grid subdivides the domain bounding box n times per axis.
///
/// Throws NoInteriorCubeError when no grid cube lies fully inside, and
/// geometric errors when the construction produces invalid cells.
PolyMesh generate_cut_extrude(const LevelSetDomain& domain, int n);

/// Checks every structural invariant of the mesh: face/cell validity, closure
/// and positive volume of each cell, face-to-cell incidence, the boundary face
/// list, and boundary-first vertex numbering. Throws on the first violation.
void validate_mesh(const PolyMesh& mesh);

/// Collects the boundary faces into a surface mesh with outward orientation.
/// Throws OpenSurfaceError when the boundary is not a closed orientable
/// surface (every edge incident to exactly two faces, coherently oriented).
SurfaceMesh extract_surface(const PolyMesh& mesh);

/// Measures mesh size and the observed shape-regularity constants.
QualityReport check_regularity(const PolyMesh& mesh);

/// Writes the mesh as a JSON document (floats with 17 significant digits).
void save_mesh(const PolyMesh& mesh, const std::string& path);

/// Reads a mesh written by save_mesh and validates it. Structural problems
/// raise FormatError; geometric problems raise the corresponding errors.
PolyMesh load_mesh(const std::string& path);

}  // namespace bsvem
