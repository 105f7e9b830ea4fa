#include "bsvem/quadrature.hpp"

#include <cmath>

#include "bsvem/exceptions.hpp"

namespace bsvem {
namespace quad {

Rule1D gauss_legendre(int q) {
  if (q < 1) throw InvalidArgumentError("gauss_legendre: need at least one point");
  Rule1D rule;
  rule.x.resize(q);
  rule.w.resize(q);
  // Newton iteration on the Legendre recurrence over [-1,1], then map to [0,1].
  const int m = (q + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = 0.5 * (1.0 - x);
    rule.x[q - 1 - i] = 0.5 * (1.0 + x);
    rule.w[i] = 0.5 * w;
    rule.w[q - 1 - i] = 0.5 * w;
  }
  return rule;
}

TriangleRule triangle_rule(int degree) {
  TriangleRule rule;
  if (degree <= 2) {
    // Edge-midpoint rule.
    rule.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  } else if (degree <= 4) {
    // Two three-point orbits (Dunavant degree 4).
    const double a1 = 0.445948490915965;
    const double w1 = 0.223381589678011 * 0.5;
    const double a2 = 0.091576213509771;
    const double w2 = 0.109951743655322 * 0.5;
    for (const double a : {a1, a2}) {
      const double b = 1.0 - 2.0 * a;
      rule.points.push_back({a, a});
      rule.points.push_back({b, a});
      rule.points.push_back({a, b});
    }
    rule.weights = {w1, w1, w1, w2, w2, w2};
  } else {
    throw InvalidArgumentError("triangle_rule: unsupported degree");
  }
  return rule;
}

TetRule tet_rule(int degree) {
  TetRule rule;
  if (degree <= 2) {
    const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    const double b = (5.0 - std::sqrt(5.0)) / 20.0;
    rule.points = {{a, b, b}, {b, a, b}, {b, b, a}, {b, b, b}};
    rule.weights = {1.0 / 24.0, 1.0 / 24.0, 1.0 / 24.0, 1.0 / 24.0};
  } else if (degree <= 5) {
    // Fourteen-point degree-5 rule: two vertex-type orbits and one edge-type orbit.
    const double b1 = 0.310885919263301;
    const double a1 = 1.0 - 3.0 * b1;
    const double w1 = 0.112687925718016 / 6.0;
    const double b2 = 0.092735250310891;
    const double a2 = 1.0 - 3.0 * b2;
    const double w2 = 0.073493043116362 / 6.0;
    const double c = 0.045503704125650;
    const double d = 0.5 - c;
    const double w3 = 0.042546020777081 / 6.0;
    auto push4 = [&rule](double a, double b, double w) {
      // Barycentric (a,b,b,b) and permutations; cartesian = last three coordinates.
      rule.points.push_back({b, b, b});
      rule.points.push_back({a, b, b});
      rule.points.push_back({b, a, b});
      rule.points.push_back({b, b, a});
      for (int i = 0; i < 4; ++i) rule.weights.push_back(w);
    };
    push4(a1, b1, w1);
    push4(a2, b2, w2);
    // Barycentric (c,c,d,d) permutations: 6 points.
    rule.points.push_back({c, d, d});
    rule.points.push_back({d, c, d});
    rule.points.push_back({d, d, c});
    rule.points.push_back({d, c, c});
    rule.points.push_back({c, d, c});
    rule.points.push_back({c, c, d});
    for (int i = 0; i < 6; ++i) rule.weights.push_back(w3);
  } else {
    throw InvalidArgumentError("tet_rule: unsupported degree");
  }
  return rule;
}

TriangleRule triangle_duffy(int q) {
  const Rule1D g = gauss_legendre(q);
  TriangleRule rule;
  rule.points.reserve(static_cast<std::size_t>(q) * q);
  rule.weights.reserve(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const double u = g.x[i];
      const double v = g.x[j];
      rule.points.push_back({u, v * (1.0 - u)});
      rule.weights.push_back(g.w[i] * g.w[j] * (1.0 - u));
    }
  }
  return rule;
}

TetRule tet_duffy(int q) {
  const Rule1D g = gauss_legendre(q);
  TetRule rule;
  rule.points.reserve(static_cast<std::size_t>(q) * q * q);
  rule.weights.reserve(static_cast<std::size_t>(q) * q * q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < q; ++k) {
        const double u = g.x[i];
        const double v = g.x[j];
        const double w = g.x[k];
        const double y = v * (1.0 - u);
        const double z = w * (1.0 - u) * (1.0 - v);
        rule.points.push_back({u, y, z});
        rule.weights.push_back(g.w[i] * g.w[j] * g.w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
      }
    }
  }
  return rule;
}

}  // namespace quad
}  // namespace bsvem
