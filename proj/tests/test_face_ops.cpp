#include "bsvem/face_ops.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "bsvem/exceptions.hpp"
#include "oracle_vem.hpp"
#include "test_util.hpp"

using namespace bsvem;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("triangle face operators coincide with linear finite elements") {
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Vector3d a(u(rng), u(rng), u(rng));
    Eigen::Vector3d b(u(rng), u(rng), u(rng));
    Eigen::Vector3d c(u(rng), u(rng), u(rng));
    const double area = 0.5 * (b - a).cross(c - a).norm();
    if (area < 0.05) {
      --trial;
      continue;
    }
    const FaceOperators ops =
        build_face_operators(std::vector<Eigen::Vector3d>{a, b, c});
    const Eigen::Matrix3d kf = testing::fem_triangle_stiffness(a, b, c);
    const Eigen::Matrix3d mf = testing::fem_triangle_mass(a, b, c);
    CHECK(max_abs_diff(ops.stiffness, kf) < 1e-12 * kf.cwiseAbs().maxCoeff());
    CHECK(max_abs_diff(ops.mass, mf) < 1e-12 * mf.cwiseAbs().maxCoeff());
    CHECK(max_abs_diff(ops.P, Eigen::Matrix3d::Identity()) < 1e-12);
  }
}

TEST_CASE("face projector reproduces affine functions") {
  std::mt19937_64 rng(402);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto loop = testutil::random_polygon(rng);
    const FaceOperators ops = build_face_operators(loop);
    const int n = static_cast<int>(loop.size());

    const Eigen::Vector3d g(u(rng), u(rng), u(rng));
    const double c0 = u(rng);
    Eigen::VectorXd dofs(n);
    for (int i = 0; i < n; ++i) dofs(i) = c0 + g.dot(loop[static_cast<std::size_t>(i)]);

    CHECK((ops.P * dofs - dofs).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + dofs.cwiseAbs().maxCoeff()));

    const Eigen::Vector3d nrm = ops.geom.frame.normal;
    const Eigen::Vector3d gt = g - g.dot(nrm) * nrm;
    const double energy = dofs.dot(ops.stiffness * dofs);
    CHECK(energy == doctest::Approx(ops.geom.area * gt.squaredNorm()).epsilon(1e-10));

    const Eigen::Vector3d coeffs = apply_face_projection(ops, dofs);
    const double at_centroid = c0 + g.dot(ops.geom.frame.origin);
    CHECK(coeffs(0) == doctest::Approx(at_centroid).epsilon(1e-10));
    CHECK(coeffs(1) == doctest::Approx(ops.geom.diameter * gt.dot(ops.geom.frame.axis1))
                           .epsilon(1e-10));
    CHECK(coeffs(2) == doctest::Approx(ops.geom.diameter * gt.dot(ops.geom.frame.axis2))
                           .epsilon(1e-10));
  }
}

TEST_CASE("face operator algebraic properties") {
  std::mt19937_64 rng(403);
  for (int trial = 0; trial < 20; ++trial) {
    const auto loop = testutil::random_polygon(rng);
    const FaceOperators ops = build_face_operators(loop);
    const int n = static_cast<int>(loop.size());
    const double kscale = ops.stiffness.cwiseAbs().maxCoeff();

    CHECK((ops.G - ops.B * ops.D).cwiseAbs().maxCoeff() < 1e-13 * (1.0 + ops.G.cwiseAbs().maxCoeff()));
    CHECK((ops.stiffness * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() < 1e-12 * kscale);
    CHECK(max_abs_diff(ops.stiffness, ops.stiffness.transpose()) < 1e-13 * kscale);
    CHECK(max_abs_diff(ops.mass, ops.mass.transpose()) < 1e-13 * ops.mass.cwiseAbs().maxCoeff());

    CHECK(ops.mass.sum() == doctest::Approx(ops.geom.area).epsilon(1e-12));
    CHECK(ops.integral.sum() == doctest::Approx(ops.geom.area).epsilon(1e-12));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.stiffness);
    CHECK(es.eigenvalues()(0) > -1e-12 * kscale);
    CHECK(es.eigenvalues()(0) < 1e-12 * kscale);
    CHECK(es.eigenvalues()(1) > 1e-8 * kscale);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(ops.mass);
    CHECK(em.eigenvalues()(0) > 0.0);
  }
}

TEST_CASE("face integral functional is exact for affine functions") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto loop = testutil::random_polygon(rng);
    const FaceOperators ops = build_face_operators(loop);
    const int n = static_cast<int>(loop.size());
    const Eigen::Vector3d g(u(rng), u(rng), u(rng));
    const double c0 = u(rng);
    Eigen::VectorXd dofs(n);
    for (int i = 0; i < n; ++i) dofs(i) = c0 + g.dot(loop[static_cast<std::size_t>(i)]);
    const double exact =
        ops.geom.area * (c0 + g.dot(ops.geom.frame.origin));
    CHECK(ops.integral.dot(dofs) == doctest::Approx(exact).epsilon(1e-11));
  }
}

TEST_CASE("face operators match dense-quadrature construction") {
  std::mt19937_64 rng(405);
  for (int trial = 0; trial < 15; ++trial) {
    const auto loop = testutil::random_polygon(rng, 4, 9);
    const FaceOperators ops = build_face_operators(loop);
    const testing::DenseFaceOperators ref = testing::dense_face_operators(loop);

    CHECK(ops.geom.area == doctest::Approx(ref.area).epsilon(1e-12));
    CHECK(max_abs_diff(ops.P, ref.P) < 1e-11);
    CHECK(max_abs_diff(ops.stiffness, ref.stiffness) <
          1e-11 * (1.0 + ref.stiffness.cwiseAbs().maxCoeff()));
    CHECK(max_abs_diff(ops.mass, ref.mass) <
          1e-11 * (1.0 + ref.mass.cwiseAbs().maxCoeff()));
    CHECK((ops.integral - ref.integral).cwiseAbs().maxCoeff() <
          1e-11 * (1.0 + ref.integral.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("apply_face_projection validates input size") {
  const auto [pts, faces] = testutil::make_cube();
  (void)faces;
  const FaceOperators ops = build_face_operators(
      std::vector<Eigen::Vector3d>{pts[0], pts[1], pts[2], pts[3]});
  CHECK_THROWS_AS(apply_face_projection(ops, Eigen::VectorXd::Zero(3)),
                  InvalidArgumentError);
}
