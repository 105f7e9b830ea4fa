#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace bsvem {
namespace quad {

/// One-dimensional rule on [0,1]; weights sum to 1.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Rule on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2.
struct TriangleRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
};

/// Rule on the reference tetrahedron with vertices 0, e1, e2, e3; weights sum to 1/6.
struct TetRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with q points, exact for polynomials of degree 2q-1.
Rule1D gauss_legendre(int q);

/// Symmetric triangle rule exact for the requested total degree (supported: 2, 4).
TriangleRule triangle_rule(int degree);

/// Symmetric tetrahedron rule exact for the requested total degree (supported: 2, 5).
TetRule tet_rule(int degree);

/// Collapsed tensor Gauss rule on the triangle, exact for total degree <= 2q-2.
TriangleRule triangle_duffy(int q);

/// Collapsed tensor Gauss rule on the tetrahedron, exact for total degree <= 2q-3.
TetRule tet_duffy(int q);

/// Integrates f over the triangle (a,b,c) embedded in 3D, using the plane measure.
template <class F>
double integrate_triangle3d(const TriangleRule& rule, const Eigen::Vector3d& a,
                            const Eigen::Vector3d& b, const Eigen::Vector3d& c, F&& f) {
  const Eigen::Vector3d u = b - a;
  const Eigen::Vector3d v = c - a;
  const double jac = u.cross(v).norm();  // = 2 * area
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Eigen::Vector3d p = a + rule.points[i][0] * u + rule.points[i][1] * v;
    sum += rule.weights[i] * f(p);
  }
  return jac * sum;
}

/// Integrates f over the tetrahedron (a,b,c,d) with SIGNED volume; summing over a
/// fan of consistently oriented tetrahedra therefore gives exact integrals over any
/// closed polyhedron regardless of star-shapedness.
template <class F>
double integrate_tet_signed(const TetRule& rule, const Eigen::Vector3d& a,
                            const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                            const Eigen::Vector3d& d, F&& f) {
  const Eigen::Vector3d u = b - a;
  const Eigen::Vector3d v = c - a;
  const Eigen::Vector3d w = d - a;
  const double jac = u.cross(v).dot(w);  // = 6 * signed volume
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Eigen::Vector3d p =
        a + rule.points[i][0] * u + rule.points[i][1] * v + rule.points[i][2] * w;
    sum += rule.weights[i] * f(p);
  }
  return jac * sum;
}

}  // namespace quad
}  // namespace bsvem
