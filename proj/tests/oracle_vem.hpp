#pragma once

#include <Eigen/Dense>
#include <vector>

// Reference constructions the virtual element operators are tested against.
// Everything here follows the defining integrals directly: linear finite
// element matrices from barycentric gradients, and projector systems assembled
// with dense quadrature in a frame chosen differently from the library's.
namespace bsvem::testing {

Eigen::Matrix3d fem_triangle_stiffness(const Eigen::Vector3d& a,
                                       const Eigen::Vector3d& b,
                                       const Eigen::Vector3d& c);
Eigen::Matrix3d fem_triangle_mass(const Eigen::Vector3d& a,
                                  const Eigen::Vector3d& b,
                                  const Eigen::Vector3d& c);
Eigen::Matrix4d fem_tet_stiffness(const Eigen::Vector3d& a,
                                  const Eigen::Vector3d& b,
                                  const Eigen::Vector3d& c,
                                  const Eigen::Vector3d& d);
Eigen::Matrix4d fem_tet_mass(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                             const Eigen::Vector3d& c, const Eigen::Vector3d& d);

struct DenseFaceOperators {
  double area = 0.0;
  double diameter = 0.0;
  Eigen::MatrixXd P;
  Eigen::MatrixXd stiffness;
  Eigen::MatrixXd mass;
  Eigen::VectorXd integral;
};

/// Face operators from the defining integrals, for a planar counterclockwise
/// polygon given as a 3d loop. Quadratures: Gauss-Legendre on edges, a fanned
/// Duffy rule in the interior.
DenseFaceOperators dense_face_operators(const std::vector<Eigen::Vector3d>& loop);

struct DenseCellOperators {
  double volume = 0.0;
  double diameter = 0.0;
  Eigen::MatrixXd P;
  Eigen::MatrixXd stiffness;
  Eigen::MatrixXd mass;
};

/// Cell operators from the defining integrals. Faces must be planar and
/// star-shaped with respect to their first vertex.
DenseCellOperators dense_cell_operators(
    const std::vector<Eigen::Vector3d>& points,
    const std::vector<std::vector<int>>& outward_loops);

}  // namespace bsvem::testing
