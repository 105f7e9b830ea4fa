#pragma once

#include <Eigen/Dense>

#include "bsvem/csr.hpp"

namespace bsvem {

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  double seconds = 0.0;
  bool converged = false;
};

/// Solves A x = b for a symmetric positive definite matrix with conjugate
/// gradients and a Jacobi preconditioner, starting from x = 0. Convergence is
/// declared when |b - A x| <= tol * |b|. When the iteration cap is hit the
/// best iterate is returned with stats->converged = false.
///
/// Throws SolverError when the diagonal is not positive or the iteration
/// breaks down on an indefinite matrix; max_iterations = 0 picks a default
/// based on the size.
Eigen::VectorXd jacobi_pcg(const SparseCsr& a, const Eigen::VectorXd& b,
                           double tol = 1e-10, int max_iterations = 0,
                           SolveStats* stats = nullptr);

}  // namespace bsvem
