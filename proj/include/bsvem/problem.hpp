#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "bsvem/levelset.hpp"

namespace bsvem {

/// Exact solution pair with matching data for the coupled model
///   -lap u + u = f            in the bulk,
///   -lap_S v + v + du/dnu = g on the surface,
///   du/dnu = -alpha u + beta v,
/// with all fields given as closed-form expressions of the ambient point.
struct ManufacturedProblem {
  std::string name;
  LevelSetDomain domain;
  double alpha = 0.0;
  double beta = 0.0;
  std::function<double(const Eigen::Vector3d&)> u;
  std::function<double(const Eigen::Vector3d&)> v;
  std::function<double(const Eigen::Vector3d&)> f;
  std::function<double(const Eigen::Vector3d&)> g;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> grad_u;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> grad_v;
  std::function<Eigen::Matrix3d(const Eigen::Vector3d&)> hess_u;
  std::function<Eigen::Matrix3d(const Eigen::Vector3d&)> hess_v;
};

/// Unit-sphere benchmark with u = xyz - xy, v = 2xyz - (3/2)xy,
/// alpha = 1, beta = 2, f = xyz - xy, g = 29xyz - (25/2)xy.
ManufacturedProblem sphere_problem();

/// Looks up a problem by name; "sphere" and "sphere-paper" are aliases for
/// the unit-sphere benchmark. Throws InvalidArgumentError on unknown names.
ManufacturedProblem problem_by_name(const std::string& name);

/// Largest violation of the flux condition du/dnu + alpha u - beta v over
/// random points projected onto the surface.
double compatibility_residual(const ManufacturedProblem& problem, int samples,
                              unsigned seed);

}  // namespace bsvem
