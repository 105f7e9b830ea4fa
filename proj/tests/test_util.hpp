#pragma once

#include <Eigen/Dense>
#include <random>
#include <utility>
#include <vector>

namespace testutil {

/// Axis-aligned cube of side s with corner at origin; faces oriented outward.
inline std::pair<std::vector<Eigen::Vector3d>, std::vector<std::vector<int>>> make_cube(
    const Eigen::Vector3d& origin = Eigen::Vector3d::Zero(), double s = 1.0) {
  std::vector<Eigen::Vector3d> pts = {
      origin + Eigen::Vector3d(0, 0, 0), origin + Eigen::Vector3d(s, 0, 0),
      origin + Eigen::Vector3d(s, s, 0), origin + Eigen::Vector3d(0, s, 0),
      origin + Eigen::Vector3d(0, 0, s), origin + Eigen::Vector3d(s, 0, s),
      origin + Eigen::Vector3d(s, s, s), origin + Eigen::Vector3d(0, s, s)};
  std::vector<std::vector<int>> faces = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                         {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  return {pts, faces};
}

/// Tetrahedron through four points; faces oriented outward for positive volume.
inline std::pair<std::vector<Eigen::Vector3d>, std::vector<std::vector<int>>> make_tet(
    const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
    const Eigen::Vector3d& d) {
  std::vector<Eigen::Vector3d> pts = {a, b, c, d};
  std::vector<std::vector<int>> faces = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
  return {pts, faces};
}

/// Random tetrahedron with volume bounded away from zero relative to its size.
inline std::pair<std::vector<Eigen::Vector3d>, std::vector<std::vector<int>>> random_tet(
    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Eigen::Vector3d p[4];
    for (auto& q : p) q = Eigen::Vector3d(u(rng), u(rng), u(rng));
    double vol = (p[1] - p[0]).cross(p[2] - p[0]).dot(p[3] - p[0]) / 6.0;
    if (vol < 0.0) {
      std::swap(p[2], p[3]);
      vol = -vol;
    }
    double diam = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) diam = std::max(diam, (p[i] - p[j]).norm());
    if (vol > 0.02 * diam * diam * diam) return make_tet(p[0], p[1], p[2], p[3]);
  }
}

/// Random simple polygon, star-shaped about the origin, in the z=0 plane of a
/// random rotated frame. Returns the 3D loop.
inline std::vector<Eigen::Vector3d> random_polygon(std::mt19937_64& rng, int n_min = 3,
                                                   int n_max = 8) {
  std::uniform_int_distribution<int> nd(n_min, n_max);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = nd(rng);
  std::vector<double> ang(n);
  for (;;) {
    for (auto& a : ang) a = 2.0 * M_PI * u(rng);
    std::sort(ang.begin(), ang.end());
    double sep = ang[0] + 2.0 * M_PI - ang[n - 1];
    for (int i = 1; i < n; ++i) sep = std::min(sep, ang[i] - ang[i - 1]);
    if (sep > 0.3 / n) break;
  }
  // Random orthonormal frame.
  Eigen::Vector3d e1 = Eigen::Vector3d(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5).normalized();
  Eigen::Vector3d t(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5);
  Eigen::Vector3d e2 = (t - t.dot(e1) * e1).normalized();
  Eigen::Vector3d shift(2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0);
  std::vector<Eigen::Vector3d> loop(n);
  for (int i = 0; i < n; ++i) {
    const double r = 0.5 + 0.5 * u(rng);
    loop[i] = shift + r * std::cos(ang[i]) * e1 + r * std::sin(ang[i]) * e2;
  }
  return loop;
}

/// Unit cube with jittered corners; every quad is split into two triangles so
/// all faces stay planar.
inline std::pair<std::vector<Eigen::Vector3d>, std::vector<std::vector<int>>>
perturbed_cube_cell(std::mt19937_64& rng, double jitter = 0.12) {
  auto [pts, quads] = make_cube();
  std::uniform_real_distribution<double> u(-jitter, jitter);
  for (auto& p : pts) p += Eigen::Vector3d(u(rng), u(rng), u(rng));
  std::vector<std::vector<int>> faces;
  for (const auto& q : quads) {
    faces.push_back({q[0], q[1], q[2]});
    faces.push_back({q[0], q[2], q[3]});
  }
  return {pts, faces};
}

/// Prism-like cell: a planar convex quad base at z=0 and a jittered top ring;
/// the top and lateral quads are split into triangles.
inline std::pair<std::vector<Eigen::Vector3d>, std::vector<std::vector<int>>>
extruded_cell(std::mt19937_64& rng, double jitter = 0.1) {
  std::uniform_real_distribution<double> u(-jitter, jitter);
  std::vector<Eigen::Vector3d> pts(8);
  const double bx[4] = {0, 1, 1, 0};
  const double by[4] = {0, 0, 1, 1};
  for (int i = 0; i < 4; ++i)
    pts[i] = Eigen::Vector3d(bx[i] + u(rng), by[i] + u(rng), 0.0);
  for (int i = 0; i < 4; ++i)
    pts[4 + i] = pts[i] + Eigen::Vector3d(u(rng), u(rng), 1.0 + u(rng));
  std::vector<std::vector<int>> faces = {{0, 3, 2, 1}, {4, 5, 6}, {4, 6, 7}};
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    faces.push_back({i, j, 4 + j});
    faces.push_back({i, 4 + j, 4 + i});
  }
  return {pts, faces};
}

}  // namespace testutil
