#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bsvem/geometry.hpp"

namespace bsvem {

/// Local operators of the lowest-order virtual element space on one polygonal
/// face with n vertex dofs. The polynomial basis is the scaled monomials
/// {1, X, Y} in the face frame.
struct FaceOperators {
  FaceGeometry geom;
  Eigen::MatrixXd D;          ///< n x 3, monomials evaluated at the vertices.
  Eigen::MatrixXd B;          ///< 3 x n, boundary-mean constraint row plus gradient rows.
  Eigen::Matrix3d G;          ///< 3 x 3, B*D; projector Gram matrix.
  Eigen::MatrixXd Pstar;      ///< 3 x n, dofs -> coefficients of the projection.
  Eigen::MatrixXd P;          ///< n x n, dofs -> vertex values of the projection.
  Eigen::MatrixXd stiffness;  ///< n x n, consistency + diameter-weighted stabilization.
  Eigen::MatrixXd mass;       ///< n x n, consistency + area-weighted stabilization.
  Eigen::VectorXd integral;   ///< n, functional with integral(v) = integral . dofs.
};

/// Builds the operators from a counter-clockwise 3D vertex loop.
FaceOperators build_face_operators(const std::vector<Eigen::Vector3d>& loop);

/// Same, reusing an already computed face geometry.
FaceOperators build_face_operators(const FaceGeometry& geom);

/// Coefficients (in the scaled monomial basis of ops.geom) of the projection
/// of the virtual function with the given vertex dofs.
Eigen::Vector3d apply_face_projection(const FaceOperators& ops, const Eigen::VectorXd& dofs);

}  // namespace bsvem
