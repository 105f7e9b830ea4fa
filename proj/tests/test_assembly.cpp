#include "bsvem/assembly.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "bsvem/exceptions.hpp"
#include "bsvem/mesh.hpp"

using bsvem::assemble_global;
using bsvem::AssemblyOptions;
using bsvem::CubeCache;
using bsvem::GlobalMatrices;
using bsvem::PolyMesh;

namespace {

PolyMesh single_cube_mesh() {
  PolyMesh mesh;
  mesh.vertices = bsvem::canonical_cube_points(1.0);
  mesh.faces = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  mesh.cells = {{0, 1, 2, 3, 4, 5}};
  mesh.num_boundary_nodes = 8;
  mesh.boundary_faces = {0, 1, 2, 3, 4, 5};
  mesh.nominal_h = std::sqrt(3.0);
  return mesh;
}

double matrix_sum(const bsvem::SparseCsr& m) {
  double s = 0.0;
  for (double v : m.values()) s += v;
  return s;
}

double constant_residual(const bsvem::SparseCsr& m) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.cols());
  return m.multiply(ones).lpNorm<Eigen::Infinity>();
}

// Volume and area of the closed boundary surface from fan triangles alone,
// independent of the moment machinery used by assembly.
void surface_measures(const PolyMesh& mesh, double& volume, double& area) {
  const bsvem::SurfaceMesh surf = bsvem::extract_surface(mesh);
  volume = 0.0;
  area = 0.0;
  for (const auto& loop : surf.faces) {
    const Eigen::Vector3d& a = surf.vertices[static_cast<std::size_t>(loop[0])];
    for (std::size_t k = 1; k + 1 < loop.size(); ++k) {
      const Eigen::Vector3d& b = surf.vertices[static_cast<std::size_t>(loop[k])];
      const Eigen::Vector3d& c =
          surf.vertices[static_cast<std::size_t>(loop[k + 1])];
      volume += a.dot(b.cross(c)) / 6.0;
      area += 0.5 * (b - a).cross(c - a).norm();
    }
  }
}

bool bitwise_equal(const bsvem::SparseCsr& a, const bsvem::SparseCsr& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.row_ptr() != b.row_ptr() || a.col_indices() != b.col_indices())
    return false;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k)
    if (av[k] != bv[k]) return false;
  return true;
}

}  // namespace

TEST_CASE("single cube mesh assembles to exact measures") {
  const PolyMesh mesh = single_cube_mesh();
  bsvem::validate_mesh(mesh);

  CubeCache cache;
  const GlobalMatrices gm = assemble_global(mesh, cache);

  CHECK(gm.bulk_dofs == 8);
  CHECK(gm.surface_dofs == 8);
  CHECK(gm.cube_cells == 1);
  CHECK(gm.cell_builds == 1);
  CHECK(gm.domain_volume == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gm.surface_area == doctest::Approx(6.0).epsilon(1e-14));

  CHECK(matrix_sum(gm.bulk_mass) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(matrix_sum(gm.surface_mass) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(constant_residual(gm.bulk_stiffness) < 1e-13);
  CHECK(constant_residual(gm.surface_stiffness) < 1e-13);
}

TEST_CASE("sphere mesh satisfies the global invariants") {
  const bsvem::LevelSetDomain domain = bsvem::LevelSetDomain::unit_sphere();
  const PolyMesh mesh = bsvem::generate_cut_extrude(domain, 6);
  bsvem::validate_mesh(mesh);

  CubeCache cache;
  const GlobalMatrices gm = assemble_global(mesh, cache);

  CHECK(constant_residual(gm.bulk_stiffness) < 1e-10);
  CHECK(constant_residual(gm.surface_stiffness) < 1e-10);

  double volume = 0.0;
  double area = 0.0;
  surface_measures(mesh, volume, area);
  CHECK(matrix_sum(gm.bulk_mass) ==
        doctest::Approx(volume).epsilon(1e-10));
  CHECK(matrix_sum(gm.surface_mass) ==
        doctest::Approx(area).epsilon(1e-10));
  CHECK(gm.domain_volume == doctest::Approx(volume).epsilon(1e-10));
  CHECK(gm.surface_area == doctest::Approx(area).epsilon(1e-10));

  const double sphere_volume = 4.0 * M_PI / 3.0;
  CHECK(volume < sphere_volume);
  CHECK(volume > 0.6 * sphere_volume);

  SUBCASE("distinct builds stay within the exterior-cell budget") {
    std::vector<bool> is_boundary_face(mesh.faces.size(), false);
    for (int f : mesh.boundary_faces)
      is_boundary_face[static_cast<std::size_t>(f)] = true;
    int exterior = 0;
    for (const auto& refs : mesh.cells) {
      bool touches = false;
      for (int ref : refs)
        touches = touches || is_boundary_face[static_cast<std::size_t>(
                                 PolyMesh::face_of(ref))];
      exterior += touches ? 1 : 0;
    }
    CHECK(gm.cube_cells >= 1);
    CHECK(gm.cell_builds <= exterior + 1);
    CHECK(gm.cube_cells + gm.cell_builds >=
          static_cast<int>(mesh.cells.size()));
  }

  SUBCASE("reassembly is bitwise identical") {
    CubeCache fresh;
    const GlobalMatrices again = assemble_global(mesh, fresh);
    CHECK(bitwise_equal(gm.bulk_stiffness, again.bulk_stiffness));
    CHECK(bitwise_equal(gm.bulk_mass, again.bulk_mass));
    CHECK(bitwise_equal(gm.surface_stiffness, again.surface_stiffness));
    CHECK(bitwise_equal(gm.surface_mass, again.surface_mass));
  }

  SUBCASE("cube cache changes nothing but the build count") {
    CubeCache unused;
    AssemblyOptions options;
    options.use_cube_cache = false;
    const GlobalMatrices direct = assemble_global(mesh, unused, options);
    CHECK(direct.cube_cells == 0);
    CHECK(direct.cell_builds == static_cast<int>(mesh.cells.size()));

    const Eigen::MatrixXd dk = gm.bulk_stiffness.dense();
    const Eigen::MatrixXd dm = gm.bulk_mass.dense();
    CHECK((dk - direct.bulk_stiffness.dense()).cwiseAbs().maxCoeff() <
          1e-11 * dk.cwiseAbs().maxCoeff());
    CHECK((dm - direct.bulk_mass.dense()).cwiseAbs().maxCoeff() <
          1e-11 * dm.cwiseAbs().maxCoeff());
    CHECK(bitwise_equal(gm.surface_stiffness, direct.surface_stiffness));
    CHECK(bitwise_equal(gm.surface_mass, direct.surface_mass));
  }
}

TEST_CASE("assembly failures name the offending entity") {
  PolyMesh mesh = single_cube_mesh();
  mesh.faces[2] = {0, 1, 1, 4};
  CubeCache cache;
  try {
    assemble_global(mesh, cache);
    FAIL("expected a degenerate face error");
  } catch (const bsvem::DegenerateFaceError& e) {
    CHECK(std::string(e.what()).find("face 2") != std::string::npos);
  }

  PolyMesh open_cell = single_cube_mesh();
  open_cell.cells[0] = {0, 1, 2, 3, 4};
  try {
    assemble_global(open_cell, cache);
    FAIL("expected an open cell error");
  } catch (const bsvem::OpenCellError& e) {
    CHECK(std::string(e.what()).find("cell 0") != std::string::npos);
  }
}
