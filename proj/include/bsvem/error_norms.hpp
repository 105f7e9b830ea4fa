#pragma once

#include <Eigen/Dense>

#include "bsvem/mesh.hpp"
#include "bsvem/problem.hpp"

namespace bsvem {

/// L2 distances between the exact fields and the cellwise / facewise linear
/// projections of the discrete solutions.
struct ErrorNorms {
  double bulk = 0.0;
  double surface = 0.0;
  double combined = 0.0;  ///< sqrt(bulk^2 + surface^2).
};

/// Integrates (u - proj U)^2 over every cell and (v - proj V)^2 over every
/// boundary face with fixed rules of degree 5 (cells) and 4 (faces) on
/// centroid-fan sub-tetrahedra and sub-triangles. The exact fields are
/// evaluated directly at the quadrature points.
ErrorNorms compute_error(const PolyMesh& mesh,
                         const Eigen::VectorXd& bulk_solution,
                         const Eigen::VectorXd& surface_solution,
                         const ManufacturedProblem& problem);

}  // namespace bsvem
