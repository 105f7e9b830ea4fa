#include "bsvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "bsvem/exceptions.hpp"
#include "bsvem/geometry.hpp"

namespace bsvem {

std::vector<int> PolyMesh::oriented_face_loop(int c, int k) const {
  const int ref = cells[c][k];
  std::vector<int> loop = faces[face_of(ref)];
  if (is_reversed(ref)) std::reverse(loop.begin(), loop.end());
  return loop;
}

std::vector<int> PolyMesh::cell_vertex_ids(int c) const {
  std::vector<int> ids;
  for (int ref : cells[c]) {
    const auto& loop = faces[face_of(ref)];
    ids.insert(ids.end(), loop.begin(), loop.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

namespace {

/// Local vertex array and face loops of one cell, outward-oriented.
struct LocalCell {
  std::vector<Eigen::Vector3d> points;
  std::vector<std::vector<int>> faces;
  std::vector<int> global_ids;  ///< Ascending; local i corresponds to global_ids[i].
};

LocalCell local_cell(const PolyMesh& mesh, int c) {
  LocalCell lc;
  lc.global_ids = mesh.cell_vertex_ids(c);
  lc.points.reserve(lc.global_ids.size());
  for (int g : lc.global_ids) lc.points.push_back(mesh.vertices[g]);
  lc.faces.reserve(mesh.cells[c].size());
  for (std::size_t k = 0; k < mesh.cells[c].size(); ++k) {
    const auto loop = mesh.oriented_face_loop(c, static_cast<int>(k));
    std::vector<int> local;
    local.reserve(loop.size());
    for (int g : loop) {
      const auto it = std::lower_bound(lc.global_ids.begin(), lc.global_ids.end(), g);
      local.push_back(static_cast<int>(it - lc.global_ids.begin()));
    }
    lc.faces.push_back(std::move(local));
  }
  return lc;
}

}  // namespace

void validate_mesh(const PolyMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  const int nf = static_cast<int>(mesh.faces.size());
  const int nc = static_cast<int>(mesh.cells.size());
  if (mesh.num_boundary_nodes < 0 || mesh.num_boundary_nodes > nv)
    throw InvalidArgumentError("num_boundary_nodes out of range");

  for (int f = 0; f < nf; ++f) {
    const auto& loop = mesh.faces[f];
    if (loop.size() < 3) throw DegenerateFaceError("face with fewer than 3 vertices");
    std::set<int> distinct(loop.begin(), loop.end());
    if (distinct.size() != loop.size())
      throw DegenerateFaceError("face loop repeats a vertex");
    for (int v : loop)
      if (v < 0 || v >= nv) throw InvalidArgumentError("face references vertex out of range");
  }

  std::vector<int> incidence(nf, 0);
  std::vector<int> first_ref(nf, 0);
  for (int c = 0; c < nc; ++c) {
    const auto& refs = mesh.cells[c];
    if (refs.size() < 4) throw OpenCellError("cell with fewer than 4 faces");
    std::set<int> seen;
    for (int ref : refs) {
      const int f = PolyMesh::face_of(ref);
      if (f < 0 || f >= nf) throw InvalidArgumentError("cell references face out of range");
      if (!seen.insert(f).second) throw OpenCellError("cell references a face twice");
      if (incidence[f] == 0)
        first_ref[f] = ref;
      else if (incidence[f] == 1 && PolyMesh::is_reversed(first_ref[f]) ==
                                        PolyMesh::is_reversed(ref))
        throw OpenCellError("shared face used with the same orientation by both cells");
      ++incidence[f];
    }
    // Per-cell closure, planarity, and positive volume.
    const LocalCell lc = local_cell(mesh, c);
    cell_geometry(lc.points, lc.faces);
  }

  std::vector<int> boundary;
  for (int f = 0; f < nf; ++f) {
    if (incidence[f] == 0) throw InvalidArgumentError("face not referenced by any cell");
    if (incidence[f] > 2) throw OpenSurfaceError("face shared by more than two cells");
    if (incidence[f] == 1) boundary.push_back(f);
  }
  if (boundary != mesh.boundary_faces)
    throw InvalidArgumentError("boundary_faces does not match face incidence");

  std::vector<char> on_boundary(nv, 0);
  for (int f : boundary)
    for (int v : mesh.faces[f]) on_boundary[v] = 1;
  int count = 0;
  for (int v = 0; v < nv; ++v) {
    if (on_boundary[v]) {
      ++count;
      if (v >= mesh.num_boundary_nodes)
        throw InvalidArgumentError("boundary vertex numbered after num_boundary_nodes");
    }
  }
  if (count != mesh.num_boundary_nodes)
    throw InvalidArgumentError("num_boundary_nodes does not match boundary vertices");
}

SurfaceMesh extract_surface(const PolyMesh& mesh) {
  const int nf = static_cast<int>(mesh.faces.size());
  std::vector<int> incidence(nf, 0);
  std::vector<int> owner_ref(nf, 0);
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    for (int ref : mesh.cells[c]) {
      const int f = PolyMesh::face_of(ref);
      ++incidence[f];
      owner_ref[f] = ref;
    }
  }

  SurfaceMesh surf;
  surf.vertices.assign(mesh.vertices.begin(), mesh.vertices.begin() + mesh.num_boundary_nodes);
  std::map<std::pair<int, int>, int> edges;
  for (int f : mesh.boundary_faces) {
    if (incidence[f] != 1) throw OpenSurfaceError("boundary face with wrong cell incidence");
    std::vector<int> loop = mesh.faces[f];
    if (PolyMesh::is_reversed(owner_ref[f])) std::reverse(loop.begin(), loop.end());
    for (int v : loop)
      if (v >= mesh.num_boundary_nodes)
        throw InvalidArgumentError("boundary face vertex not boundary-first");
    const int n = static_cast<int>(loop.size());
    for (int i = 0; i < n; ++i) {
      const std::pair<int, int> e{loop[i], loop[(i + 1) % n]};
      if (++edges[e] > 1)
        throw OpenSurfaceError("surface edge traversed twice in the same direction");
    }
    surf.faces.push_back(std::move(loop));
    surf.bulk_face_index.push_back(f);
  }
  for (const auto& entry : edges) {
    const auto& e = entry.first;
    if (edges.find({e.second, e.first}) == edges.end())
      throw OpenSurfaceError("surface is not closed");
  }
  return surf;
}

QualityReport check_regularity(const PolyMesh& mesh) {
  QualityReport q;
  q.num_vertices = static_cast<int>(mesh.vertices.size());
  q.num_faces = static_cast<int>(mesh.faces.size());
  q.num_cells = static_cast<int>(mesh.cells.size());
  q.num_boundary_faces = static_cast<int>(mesh.boundary_faces.size());
  q.num_boundary_nodes = mesh.num_boundary_nodes;

  double g1 = std::numeric_limits<double>::max();
  double g2 = std::numeric_limits<double>::max();

  for (const auto& loop : mesh.faces) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(loop.size());
    for (int v : loop) pts.push_back(mesh.vertices[v]);
    const FaceGeometry fg = face_geometry(pts);
    const int n = static_cast<int>(loop.size());
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d a = fg.vertices2d.row(i);
      const Eigen::Vector2d b = fg.vertices2d.row((i + 1) % n);
      const double dist = (a.x() * b.y() - a.y() * b.x()) / (b - a).norm();
      g1 = std::min(g1, dist / fg.diameter);
      for (int j = i + 1; j < n; ++j) {
        const Eigen::Vector2d p = fg.vertices2d.row(j);
        g2 = std::min(g2, (p - a).norm() / fg.diameter);
      }
    }
  }

  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const LocalCell lc = local_cell(mesh, static_cast<int>(c));
    const CellGeometry cg = cell_geometry(lc.points, lc.faces);
    q.h_max = std::max(q.h_max, cg.diameter);
    for (const auto& f : lc.faces) {
      std::vector<Eigen::Vector3d> pts;
      pts.reserve(f.size());
      for (int v : f) pts.push_back(lc.points[v]);
      const FaceGeometry fg = face_geometry(pts);
      const double dist = (fg.frame.origin - cg.centroid).dot(fg.frame.normal);
      g1 = std::min(g1, dist / cg.diameter);
    }
    for (std::size_t i = 0; i < lc.points.size(); ++i)
      for (std::size_t j = i + 1; j < lc.points.size(); ++j)
        g2 = std::min(g2, (lc.points[i] - lc.points[j]).norm() / cg.diameter);
  }

  q.gamma1_observed = g1;
  q.gamma2_observed = g2;
  q.h_reported = mesh.nominal_h > 0.0 ? mesh.nominal_h : q.h_max;
  return q;
}

}  // namespace bsvem
