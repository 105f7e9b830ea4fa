#pragma once

#include <Eigen/Dense>

#include "bsvem/assembly.hpp"
#include "bsvem/csr.hpp"
#include "bsvem/solver.hpp"

namespace bsvem {

/// Linear system on the stacked bulk (N) and surface (M) dofs.
///
/// For beta > 0 both equations are scaled (bulk by alpha, surface by beta) so
/// the matrix is symmetric positive definite. For beta = 0 the bulk equation
/// keeps its alpha scaling, the surface block stays unscaled, and the matrix
/// is block lower-triangular.
struct CoupledSystem {
  SparseCsr matrix;
  Eigen::VectorXd rhs;
  int bulk_dofs = 0;
  int surface_dofs = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Builds the coupled system. The blocks are
///   top-left:     alpha (A_bulk + M_bulk) + alpha^2 M_surf (padded),
///   off-diagonal: -alpha beta M_surf (padded),
///   bottom-right: beta (A_surf + M_surf) + beta^2 M_surf,
/// and the right-hand side is (alpha M_bulk f, beta M_surf g). The surface
/// padding uses the boundary-first index split directly. With beta = 0 the
/// bottom-right block is A_surf + M_surf, only the bulk-to-surface coupling
/// -alpha M_surf remains, and the surface load is M_surf g.
///
/// Requires alpha > 0, beta >= 0, f_nodal of length N and g_nodal of length M.
CoupledSystem build_coupled_system(const GlobalMatrices& mats, double alpha,
                                   double beta, const Eigen::VectorXd& f_nodal,
                                   const Eigen::VectorXd& g_nodal);

struct CoupledSolution {
  Eigen::VectorXd bulk;
  Eigen::VectorXd surface;
  SolveStats stats;
};

/// Solves the coupled system with Jacobi-preconditioned conjugate gradients:
/// one solve on the symmetric matrix for beta > 0, block forward substitution
/// with two solves for beta = 0. On hitting the iteration cap the best
/// iterate is returned with stats.converged = false.
CoupledSolution solve_coupled_system(const CoupledSystem& system,
                                     double tol = 1e-10,
                                     int max_iterations = 0);

}  // namespace bsvem
