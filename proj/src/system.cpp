#include "bsvem/system.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#include "bsvem/exceptions.hpp"

namespace bsvem {

namespace {

void append_scaled(std::vector<Triplet>& out, const SparseCsr& m, double scale,
                   int row_offset, int col_offset) {
  const auto& rp = m.row_ptr();
  const auto& ci = m.col_indices();
  const auto& vals = m.values();
  for (int r = 0; r < m.rows(); ++r) {
    for (int k = rp[r]; k < rp[r + 1]; ++k) {
      out.push_back({r + row_offset, ci[k] + col_offset, scale * vals[k]});
    }
  }
}

}  // namespace

CoupledSystem build_coupled_system(const GlobalMatrices& mats, double alpha,
                                   double beta, const Eigen::VectorXd& f_nodal,
                                   const Eigen::VectorXd& g_nodal) {
  if (!(alpha > 0.0)) {
    throw InvalidArgumentError("build_coupled_system: alpha must be positive");
  }
  if (!(beta >= 0.0)) {
    throw InvalidArgumentError(
        "build_coupled_system: beta must be nonnegative");
  }
  const int n = mats.bulk_dofs;
  const int m = mats.surface_dofs;
  if (f_nodal.size() != n) {
    throw InvalidArgumentError(
        "build_coupled_system: bulk load has wrong length");
  }
  if (g_nodal.size() != m) {
    throw InvalidArgumentError(
        "build_coupled_system: surface load has wrong length");
  }

  std::vector<Triplet> trips;
  trips.reserve(2 * static_cast<std::size_t>(mats.bulk_stiffness.nonzeros()) +
                4 * static_cast<std::size_t>(mats.surface_mass.nonzeros()));

  append_scaled(trips, mats.bulk_stiffness, alpha, 0, 0);
  append_scaled(trips, mats.bulk_mass, alpha, 0, 0);
  append_scaled(trips, mats.surface_mass, alpha * alpha, 0, 0);
  if (beta > 0.0) {
    append_scaled(trips, mats.surface_mass, -alpha * beta, 0, n);
    append_scaled(trips, mats.surface_mass, -alpha * beta, n, 0);
    append_scaled(trips, mats.surface_stiffness, beta, n, n);
    append_scaled(trips, mats.surface_mass, beta + beta * beta, n, n);
  } else {
    append_scaled(trips, mats.surface_mass, -alpha, n, 0);
    append_scaled(trips, mats.surface_stiffness, 1.0, n, n);
    append_scaled(trips, mats.surface_mass, 1.0, n, n);
  }

  CoupledSystem sys;
  sys.matrix = SparseCsr::from_triplets(n + m, n + m, trips);
  sys.rhs.resize(n + m);
  sys.rhs.head(n) = alpha * mats.bulk_mass.multiply(f_nodal);
  const Eigen::VectorXd mg = mats.surface_mass.multiply(g_nodal);
  sys.rhs.tail(m) = (beta > 0.0) ? Eigen::VectorXd(beta * mg) : mg;
  sys.bulk_dofs = n;
  sys.surface_dofs = m;
  sys.alpha = alpha;
  sys.beta = beta;
  return sys;
}

CoupledSolution solve_coupled_system(const CoupledSystem& system, double tol,
                                     int max_iterations) {
  const int n = system.bulk_dofs;
  const int m = system.surface_dofs;
  if (system.matrix.rows() != n + m || system.rhs.size() != n + m) {
    throw InvalidArgumentError(
        "solve_coupled_system: matrix does not match the dof split");
  }

  CoupledSolution sol;
  if (system.beta > 0.0) {
    const Eigen::VectorXd x =
        jacobi_pcg(system.matrix, system.rhs, tol, max_iterations, &sol.stats);
    sol.bulk = x.head(n);
    sol.surface = x.tail(m);
    return sol;
  }

  const SparseCsr bulk_block = system.matrix.block(0, n, 0, n);
  SolveStats bulk_stats;
  sol.bulk = jacobi_pcg(bulk_block, system.rhs.head(n), tol, max_iterations,
                        &bulk_stats);

  const SparseCsr coupling = system.matrix.block(n, n + m, 0, n);
  const SparseCsr surf_block = system.matrix.block(n, n + m, n, n + m);
  const Eigen::VectorXd surf_rhs =
      system.rhs.tail(m) - coupling.multiply(sol.bulk);
  SolveStats surf_stats;
  sol.surface =
      jacobi_pcg(surf_block, surf_rhs, tol, max_iterations, &surf_stats);

  sol.stats.iterations = bulk_stats.iterations + surf_stats.iterations;
  sol.stats.relative_residual =
      std::max(bulk_stats.relative_residual, surf_stats.relative_residual);
  sol.stats.seconds = bulk_stats.seconds + surf_stats.seconds;
  sol.stats.converged = bulk_stats.converged && surf_stats.converged;
  return sol;
}

}  // namespace bsvem
