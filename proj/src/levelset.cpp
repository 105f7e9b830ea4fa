#include "bsvem/levelset.hpp"

#include <cmath>

#include "bsvem/exceptions.hpp"

namespace bsvem {

LevelSetDomain LevelSetDomain::unit_sphere() {
  LevelSetDomain d;
  d.name = "sphere";
  d.value = [](const Eigen::Vector3d& x) { return x.norm() - 1.0; };
  d.gradient = [](const Eigen::Vector3d& x) {
    const double r = x.norm();
    return r > 0.0 ? Eigen::Vector3d(x / r) : Eigen::Vector3d(1, 0, 0);
  };
  d.box_lo = Eigen::Vector3d(-1, -1, -1);
  d.box_hi = Eigen::Vector3d(1, 1, 1);
  return d;
}

LevelSetDomain LevelSetDomain::ellipsoid(double a, double b, double c) {
  if (a <= 0 || b <= 0 || c <= 0)
    throw InvalidArgumentError("ellipsoid semi-axes must be positive");
  LevelSetDomain d;
  d.name = "ellipsoid";
  d.value = [=](const Eigen::Vector3d& x) {
    return x.x() * x.x() / (a * a) + x.y() * x.y() / (b * b) + x.z() * x.z() / (c * c) - 1.0;
  };
  d.gradient = [=](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(2.0 * x.x() / (a * a), 2.0 * x.y() / (b * b), 2.0 * x.z() / (c * c));
  };
  d.box_lo = Eigen::Vector3d(-a, -b, -c);
  d.box_hi = Eigen::Vector3d(a, b, c);
  return d;
}

LevelSetDomain LevelSetDomain::box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  if ((hi - lo).minCoeff() <= 0.0) throw InvalidArgumentError("box extents must be positive");
  LevelSetDomain d;
  d.name = "box";
  const Eigen::Vector3d center = 0.5 * (lo + hi);
  const Eigen::Vector3d half = 0.5 * (hi - lo);
  d.value = [=](const Eigen::Vector3d& x) {
    const Eigen::Vector3d q = (x - center).cwiseAbs() - half;
    return q.maxCoeff();
  };
  d.gradient = [=](const Eigen::Vector3d& x) {
    const Eigen::Vector3d rel = x - center;
    const Eigen::Vector3d q = rel.cwiseAbs() - half;
    int axis = 0;
    q.maxCoeff(&axis);
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    g[axis] = rel[axis] >= 0.0 ? 1.0 : -1.0;
    return g;
  };
  d.box_lo = lo;
  d.box_hi = hi;
  return d;
}

LevelSetDomain LevelSetDomain::named(const std::string& name) {
  if (name == "sphere") return unit_sphere();
  if (name == "cube") return box(Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 1, 1));
  throw InvalidArgumentError("unknown domain '" + name + "'");
}

Eigen::Vector3d closest_point_project(const LevelSetDomain& domain, const Eigen::Vector3d& x,
                                      double tol, int max_iter) {
  const double scale = std::max(1.0, x.norm());
  Eigen::Vector3d g = domain.gradient(x);
  double g2 = g.squaredNorm();
  if (g2 <= 0.0) throw SolverError("closest-point projection: vanishing gradient");
  Eigen::Vector3d a = x - domain.value(x) * g / g2;

  auto merit = [&](const Eigen::Vector3d& p) {
    const double dv = domain.value(p);
    const Eigen::Vector3d nu = domain.gradient(p).normalized();
    const Eigen::Vector3d tang = (x - p) - (x - p).dot(nu) * nu;
    return dv * dv + tang.squaredNorm();
  };

  for (int it = 0; it < max_iter; ++it) {
    const double dv = domain.value(a);
    g = domain.gradient(a);
    const double gn = g.norm();
    if (gn <= 0.0) throw SolverError("closest-point projection: vanishing gradient");
    const Eigen::Vector3d nu = g / gn;
    const Eigen::Vector3d normal_step = -(dv / gn) * nu;
    const Eigen::Vector3d tangential = (x - a) - (x - a).dot(nu) * nu;
    if (std::abs(dv) <= tol && tangential.norm() <= tol * scale) return a;

    Eigen::Vector3d step = normal_step + tangential;
    const double m0 = merit(a);
    double lambda = 1.0;
    Eigen::Vector3d next = a + step;
    for (int back = 0; back < 40 && merit(next) > m0; ++back) {
      lambda *= 0.5;
      next = a + lambda * step;
    }
    if ((next - a).norm() <= tol * scale && std::abs(domain.value(next)) <= tol) return next;
    a = next;
  }
  if (std::abs(domain.value(a)) <= tol) return a;
  throw SolverError("closest-point projection did not converge");
}

}  // namespace bsvem
