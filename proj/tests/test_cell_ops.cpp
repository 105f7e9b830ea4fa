#include "bsvem/cell_ops.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "oracle_vem.hpp"
#include "test_util.hpp"

using namespace bsvem;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("tetrahedron cell operators coincide with linear finite elements") {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [pts, faces] = testutil::random_tet(rng);
    const CellOperators ops = build_cell_operators(pts, faces);
    const Eigen::Matrix4d kf =
        testing::fem_tet_stiffness(pts[0], pts[1], pts[2], pts[3]);
    const Eigen::Matrix4d mf =
        testing::fem_tet_mass(pts[0], pts[1], pts[2], pts[3]);
    CHECK(max_abs_diff(ops.stiffness, kf) < 1e-12 * kf.cwiseAbs().maxCoeff());
    CHECK(max_abs_diff(ops.mass, mf) < 1e-12 * mf.cwiseAbs().maxCoeff());
    CHECK(max_abs_diff(ops.P, Eigen::Matrix4d::Identity()) < 1e-12);
  }
}

TEST_CASE("cell operators match dense-quadrature construction") {
  std::mt19937_64 rng(502);

  auto compare = [](const std::vector<Eigen::Vector3d>& pts,
                    const std::vector<std::vector<int>>& faces) {
    const CellOperators ops = build_cell_operators(pts, faces);
    const testing::DenseCellOperators ref = testing::dense_cell_operators(pts, faces);
    CHECK(ops.geom.volume == doctest::Approx(ref.volume).epsilon(1e-12));
    CHECK(max_abs_diff(ops.P, ref.P) < 1e-11);
    CHECK(max_abs_diff(ops.stiffness, ref.stiffness) <
          1e-11 * (1.0 + ref.stiffness.cwiseAbs().maxCoeff()));
    CHECK(max_abs_diff(ops.mass, ref.mass) <
          1e-11 * (1.0 + ref.mass.cwiseAbs().maxCoeff()));
  };

  const auto [cube_pts, cube_faces] = testutil::make_cube();
  compare(cube_pts, cube_faces);

  for (int trial = 0; trial < 10; ++trial) {
    const auto [pts, faces] = testutil::perturbed_cube_cell(rng);
    compare(pts, faces);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto [pts, faces] = testutil::extruded_cell(rng);
    compare(pts, faces);
  }
}

TEST_CASE("cell projector reproduces affine functions") {
  std::mt19937_64 rng(503);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [pts, faces] = testutil::perturbed_cube_cell(rng);
    const CellOperators ops = build_cell_operators(pts, faces);
    const int n = static_cast<int>(pts.size());

    const Eigen::Vector3d g(u(rng), u(rng), u(rng));
    const double c0 = u(rng);
    Eigen::VectorXd dofs(n);
    for (int i = 0; i < n; ++i) dofs(i) = c0 + g.dot(pts[static_cast<std::size_t>(i)]);

    CHECK((ops.P * dofs - dofs).cwiseAbs().maxCoeff() <
          1e-12 * (1.0 + dofs.cwiseAbs().maxCoeff()));
    CHECK(dofs.dot(ops.stiffness * dofs) ==
          doctest::Approx(ops.geom.volume * g.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("cell operator algebraic properties") {
  std::mt19937_64 rng(504);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [pts, faces] =
        trial % 2 == 0 ? testutil::perturbed_cube_cell(rng) : testutil::extruded_cell(rng);
    const CellOperators ops = build_cell_operators(pts, faces);
    const int n = static_cast<int>(pts.size());
    const double kscale = ops.stiffness.cwiseAbs().maxCoeff();

    const double v = ops.geom.volume;
    const double h = ops.geom.diameter;
    for (int al = 1; al < 4; ++al)
      CHECK(ops.G(al, al) == doctest::Approx(v / (h * h)).epsilon(1e-12));
    for (int al = 1; al < 4; ++al)
      for (int be = 1; be < 4; ++be)
        if (al != be) CHECK(std::abs(ops.G(al, be)) < 1e-13);
    CHECK(ops.G(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    for (int al = 1; al < 4; ++al) CHECK(std::abs(ops.G(al, 0)) < 1e-13);

    CHECK((ops.stiffness * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() <
          1e-12 * kscale);
    CHECK(max_abs_diff(ops.stiffness, ops.stiffness.transpose()) < 1e-13 * kscale);
    CHECK(max_abs_diff(ops.mass, ops.mass.transpose()) <
          1e-13 * ops.mass.cwiseAbs().maxCoeff());
    CHECK(ops.mass.sum() == doctest::Approx(v).epsilon(1e-12));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.stiffness);
    CHECK(es.eigenvalues()(0) > -1e-12 * kscale);
    CHECK(es.eigenvalues()(0) < 1e-12 * kscale);
    CHECK(es.eigenvalues()(1) > 1e-8 * kscale);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(ops.mass);
    CHECK(em.eigenvalues()(0) > 0.0);
  }
}

TEST_CASE("shared-face form matches the loop form") {
  const auto [pts, faces] = testutil::make_cube();
  const CellOperators direct = build_cell_operators(pts, faces);

  std::vector<FaceOperators> owned;
  std::vector<CellFace> cell_faces;
  owned.reserve(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    std::vector<int> loop = faces[k];
    const bool reversed = k % 2 == 1;
    if (reversed) std::reverse(loop.begin(), loop.end());
    std::vector<Eigen::Vector3d> face_pts;
    for (int v : loop) face_pts.push_back(pts[static_cast<std::size_t>(v)]);
    owned.push_back(build_face_operators(face_pts));
    cell_faces.push_back(CellFace{nullptr, loop, reversed ? -1.0 : 1.0});
  }
  for (std::size_t k = 0; k < faces.size(); ++k) cell_faces[k].ops = &owned[k];

  const CellOperators shared = build_cell_operators(pts, cell_faces);
  CHECK(max_abs_diff(direct.stiffness, shared.stiffness) <
        1e-13 * direct.stiffness.cwiseAbs().maxCoeff());
  CHECK(max_abs_diff(direct.mass, shared.mass) <
        1e-13 * direct.mass.cwiseAbs().maxCoeff());
  CHECK(max_abs_diff(direct.P, shared.P) < 1e-13);
}

TEST_CASE("cube cache returns one shared build per side") {
  CubeCache cache;
  const CellOperators& a = cache.get(0.5);
  const CellOperators& b = cache.get(0.5);
  CHECK(&a == &b);
  CHECK(cache.build_count() == 1);

  const CellOperators direct = build_cell_operators(
      canonical_cube_points(0.5), std::vector<std::vector<int>>{{0, 3, 2, 1},
                                                                {4, 5, 6, 7},
                                                                {0, 1, 5, 4},
                                                                {1, 2, 6, 5},
                                                                {2, 3, 7, 6},
                                                                {3, 0, 4, 7}});
  CHECK((a.stiffness - direct.stiffness).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.mass - direct.mass).cwiseAbs().maxCoeff() == 0.0);

  cache.get(0.25);
  CHECK(cache.build_count() == 2);
  cache.get(0.5 * (1.0 + 1e-14));
  CHECK(cache.build_count() == 2);
}

TEST_CASE("cube detection and permutation mapping") {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  std::vector<Eigen::Vector3d> pts = canonical_cube_points(0.4);
  const Eigen::Vector3d shift(u(rng), u(rng), u(rng));
  for (auto& p : pts) p += shift;
  std::shuffle(pts.begin(), pts.end(), rng);

  double side = 0.0;
  std::array<int, 8> perm{};
  REQUIRE(detect_cube(pts, side, perm));
  CHECK(side == doctest::Approx(0.4).epsilon(1e-13));
  const std::vector<Eigen::Vector3d> canon = canonical_cube_points(side);
  Eigen::Vector3d lo = pts[0];
  for (const auto& p : pts) lo = lo.cwiseMin(p);
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector3d expect = lo + canon[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    CHECK((pts[static_cast<std::size_t>(i)] - expect).norm() < 1e-12);
  }

  SUBCASE("permuted cached operators match a direct build") {
    std::vector<std::vector<int>> loops;
    {
      const auto [cpts, cfaces] = testutil::make_cube(shift, 0.4);
      std::vector<int> order(8);
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j)
          if ((pts[static_cast<std::size_t>(j)] - cpts[static_cast<std::size_t>(i)]).norm() < 1e-14)
            order[static_cast<std::size_t>(i)] = j;
      }
      for (const auto& f : cfaces) {
        std::vector<int> loop;
        for (int v : f) loop.push_back(order[static_cast<std::size_t>(v)]);
        loops.push_back(loop);
      }
    }
    const CellOperators direct = build_cell_operators(pts, loops);

    CubeCache cache;
    const CellOperators& canon_ops = cache.get(side);
    Eigen::MatrixXd mapped_k(8, 8), mapped_m(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        mapped_k(i, j) = canon_ops.stiffness(perm[static_cast<std::size_t>(i)],
                                             perm[static_cast<std::size_t>(j)]);
        mapped_m(i, j) = canon_ops.mass(perm[static_cast<std::size_t>(i)],
                                        perm[static_cast<std::size_t>(j)]);
      }
    CHECK((mapped_k - direct.stiffness).cwiseAbs().maxCoeff() <
          1e-12 * direct.stiffness.cwiseAbs().maxCoeff());
    CHECK((mapped_m - direct.mass).cwiseAbs().maxCoeff() <
          1e-12 * direct.mass.cwiseAbs().maxCoeff());
  }

  SUBCASE("non-cubes are rejected") {
    std::mt19937_64 rng2(506);
    double s = 0.0;
    std::array<int, 8> p{};
    {
      const auto [tpts, tfaces] = testutil::random_tet(rng2);
      (void)tfaces;
      CHECK_FALSE(detect_cube(tpts, s, p));
    }
    {
      auto [jpts, jfaces] = testutil::perturbed_cube_cell(rng2, 1e-3);
      (void)jfaces;
      CHECK_FALSE(detect_cube(jpts, s, p));
    }
    {
      std::vector<Eigen::Vector3d> box = canonical_cube_points(1.0);
      for (auto& q : box) q.z() *= 0.5;
      CHECK_FALSE(detect_cube(box, s, p));
    }
  }
}
