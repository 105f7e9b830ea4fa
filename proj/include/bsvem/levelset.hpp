#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace bsvem {

/// Implicit domain description: value < 0 inside, 0 on the boundary, > 0 outside.
struct LevelSetDomain {
  std::string name;
  std::function<double(const Eigen::Vector3d&)> value;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> gradient;
  Eigen::Vector3d box_lo;  ///< Bounding box enclosing the domain.
  Eigen::Vector3d box_hi;

  /// Unit sphere centered at the origin (signed distance).
  static LevelSetDomain unit_sphere();

  /// Axis-aligned ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1.
  static LevelSetDomain ellipsoid(double a, double b, double c);

  /// Axis-aligned box [lo, hi]; its faces align with the background grid, so
  /// cut-and-extrude meshing produces pure cube meshes without extrusions.
  static LevelSetDomain box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi);

  /// Looks up a named domain ("sphere" or "cube"); throws InvalidArgumentError.
  static LevelSetDomain named(const std::string& name);
};

/// Projects x onto the zero level set by a damped Newton iteration on the
/// closest-point conditions, starting from x - d(x) grad d(x) / |grad d(x)|^2.
/// Stops when |d| and the step fall below tol (default 1e-12); throws
/// SolverError after max_iter iterations without convergence.
Eigen::Vector3d closest_point_project(const LevelSetDomain& domain, const Eigen::Vector3d& x,
                                      double tol = 1e-12, int max_iter = 50);

}  // namespace bsvem
