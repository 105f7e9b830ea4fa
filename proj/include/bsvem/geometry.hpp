#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bsvem {

/// Orthonormal in-plane coordinate system of a planar face.
///
/// The origin is the face centroid, axis1 points from the centroid toward the
/// first vertex of the loop, axis2 = normal x axis1, and the normal follows the
/// counter-clockwise orientation of the vertex loop.
struct FaceFrame {
  Eigen::Vector3d origin;
  Eigen::Vector3d axis1;
  Eigen::Vector3d axis2;
  Eigen::Vector3d normal;

  /// Maps a 3D point to in-plane coordinates relative to the origin.
  Eigen::Vector2d to_plane(const Eigen::Vector3d& p) const {
    const Eigen::Vector3d d = p - origin;
    return {d.dot(axis1), d.dot(axis2)};
  }

  /// Maps in-plane coordinates back to 3D.
  Eigen::Vector3d to_space(const Eigen::Vector2d& q) const {
    return origin + q.x() * axis1 + q.y() * axis2;
  }
};

/// Integrals of the scaled monomials m_a = ((x - centroid)/h)^a up to degree 2.
///
/// For faces the basis has 6 members ordered 1, X, Y, X^2, XY, Y^2 in frame
/// coordinates; for cells it has 10 members ordered 1, X, Y, Z, X^2, XY, XZ,
/// Y^2, YZ, Z^2.
struct MomentSet {
  double h = 0.0;        ///< Diameter used to scale the monomials.
  double measure = 0.0;  ///< Area of the face or volume of the cell.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::VectorXd moments;
};

/// Frame, measure and monomial moments of a planar polygonal face.
struct FaceGeometry {
  FaceFrame frame;
  double area = 0.0;
  double diameter = 0.0;
  MomentSet moments;
  /// Vertex coordinates in the frame, one row per loop vertex.
  Eigen::Matrix<double, Eigen::Dynamic, 2> vertices2d;
};

/// Measure and monomial moments of a polyhedral cell.
struct CellGeometry {
  double volume = 0.0;
  double diameter = 0.0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  MomentSet moments;
};

/// Computes the frame, area, centroid, diameter and degree-2 scaled-monomial
/// moments of the planar polygon described by a counter-clockwise vertex loop.
///
/// Throws DegenerateFaceError when the loop has fewer than 3 distinct vertices,
/// vanishing area, or deviates from its plane by more than 1e-9 relative to the
/// diameter.
FaceGeometry face_geometry(const std::vector<Eigen::Vector3d>& loop);

/// Computes volume, centroid, diameter and degree-2 scaled-monomial moments of
/// the polyhedron bounded by the given outward-oriented face loops (local
/// vertex indices into points).
///
/// Throws OpenCellError when the faces do not close up (every directed edge
/// must appear exactly once in each direction) and DegenerateCellError when the
/// volume is non-positive or vanishes relative to diameter^3.
CellGeometry cell_geometry(const std::vector<Eigen::Vector3d>& points,
                           const std::vector<std::vector<int>>& faces);

/// Evaluates the 6 scaled face monomials at in-plane coordinates q.
Eigen::Matrix<double, 6, 1> face_monomials(const Eigen::Vector2d& q, double h);

/// Evaluates the 10 scaled cell monomials at x relative to (centroid, h).
Eigen::Matrix<double, 10, 1> cell_monomials(const Eigen::Vector3d& x,
                                            const Eigen::Vector3d& centroid, double h);

}  // namespace bsvem
