#include "bsvem/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bsvem/exceptions.hpp"
#include "bsvem/kernels.hpp"

namespace bsvem {

Eigen::VectorXd jacobi_pcg(const SparseCsr& a, const Eigen::VectorXd& b,
                           double tol, int max_iterations, SolveStats* stats) {
  if (a.rows() != a.cols())
    throw InvalidArgumentError("conjugate gradients needs a square matrix");
  if (b.size() != a.rows())
    throw InvalidArgumentError("right-hand side length does not match matrix");
  const int n = a.rows();
  const std::size_t un = static_cast<std::size_t>(n);
  if (max_iterations <= 0) max_iterations = std::max(1000, 10 * n);
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double bnorm = std::sqrt(kernels::dot(b.data(), b.data(), un));
  if (bnorm == 0.0) {
    if (stats) *stats = SolveStats{0, 0.0, elapsed(), true};
    return x;
  }

  Eigen::VectorXd invdiag = a.diagonal();
  for (int i = 0; i < n; ++i) {
    if (!(invdiag(i) > 0.0))
      throw SolverError("matrix diagonal must be positive for the Jacobi preconditioner");
    invdiag(i) = 1.0 / invdiag(i);
  }

  Eigen::VectorXd r = b;
  Eigen::VectorXd z(n);
  kernels::ewmul(invdiag.data(), r.data(), z.data(), un);
  Eigen::VectorXd p = z;
  Eigen::VectorXd q(n);
  double rz = kernels::dot(r.data(), z.data(), un);
  double rnorm = bnorm;

  for (int it = 1; it <= max_iterations; ++it) {
    kernels::csr_spmv(a.row_ptr().data(), a.col_indices().data(),
                      a.values().data(), n, p.data(), q.data());
    const double pq = kernels::dot(p.data(), q.data(), un);
    if (!(pq > 0.0))
      throw SolverError("conjugate gradients broke down; the matrix is not positive definite");
    const double alpha = rz / pq;
    kernels::axpy(alpha, p.data(), x.data(), un);
    kernels::axpy(-alpha, q.data(), r.data(), un);

    rnorm = std::sqrt(kernels::dot(r.data(), r.data(), un));
    if (rnorm <= tol * bnorm) {
      if (stats) *stats = SolveStats{it, rnorm / bnorm, elapsed(), true};
      return x;
    }

    kernels::ewmul(invdiag.data(), r.data(), z.data(), un);
    const double rz_next = kernels::dot(r.data(), z.data(), un);
    kernels::aypx(rz_next / rz, z.data(), p.data(), un);
    rz = rz_next;
  }
  if (stats) *stats = SolveStats{max_iterations, rnorm / bnorm, elapsed(), false};
  return x;
}

}  // namespace bsvem
