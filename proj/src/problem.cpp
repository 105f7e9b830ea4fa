#include "bsvem/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bsvem/exceptions.hpp"

namespace bsvem {

ManufacturedProblem sphere_problem() {
  ManufacturedProblem p;
  p.name = "sphere";
  p.domain = LevelSetDomain::unit_sphere();
  p.alpha = 1.0;
  p.beta = 2.0;
  p.u = [](const Eigen::Vector3d& x) {
    return x[0] * x[1] * x[2] - x[0] * x[1];
  };
  p.v = [](const Eigen::Vector3d& x) {
    return 2.0 * x[0] * x[1] * x[2] - 1.5 * x[0] * x[1];
  };
  p.f = [](const Eigen::Vector3d& x) {
    return x[0] * x[1] * x[2] - x[0] * x[1];
  };
  p.g = [](const Eigen::Vector3d& x) {
    return 29.0 * x[0] * x[1] * x[2] - 12.5 * x[0] * x[1];
  };
  p.grad_u = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(x[1] * x[2] - x[1], x[0] * x[2] - x[0],
                           x[0] * x[1]);
  };
  p.grad_v = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(2.0 * x[1] * x[2] - 1.5 * x[1],
                           2.0 * x[0] * x[2] - 1.5 * x[0], 2.0 * x[0] * x[1]);
  };
  p.hess_u = [](const Eigen::Vector3d& x) {
    Eigen::Matrix3d h;
    h << 0.0, x[2] - 1.0, x[1],
         x[2] - 1.0, 0.0, x[0],
         x[1], x[0], 0.0;
    return h;
  };
  p.hess_v = [](const Eigen::Vector3d& x) {
    Eigen::Matrix3d h;
    h << 0.0, 2.0 * x[2] - 1.5, 2.0 * x[1],
         2.0 * x[2] - 1.5, 0.0, 2.0 * x[0],
         2.0 * x[1], 2.0 * x[0], 0.0;
    return h;
  };
  return p;
}

ManufacturedProblem problem_by_name(const std::string& name) {
  if (name == "sphere" || name == "sphere-paper") return sphere_problem();
  throw InvalidArgumentError("unknown problem \"" + name +
                             "\"; available: sphere, sphere-paper");
}

double compatibility_residual(const ManufacturedProblem& problem, int samples,
                              unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const Eigen::Vector3d lo = problem.domain.box_lo;
  const Eigen::Vector3d hi = problem.domain.box_hi;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector3d x;
    for (int k = 0; k < 3; ++k) x[k] = lo[k] + dist(rng) * (hi[k] - lo[k]);
    const Eigen::Vector3d p = closest_point_project(problem.domain, x);
    const Eigen::Vector3d nu = problem.domain.gradient(p).normalized();
    const double r = problem.grad_u(p).dot(nu) + problem.alpha * problem.u(p) -
                     problem.beta * problem.v(p);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace bsvem
