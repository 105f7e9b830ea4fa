#include "bsvem/error_norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "bsvem/cell_ops.hpp"
#include "bsvem/exceptions.hpp"
#include "bsvem/face_ops.hpp"
#include "bsvem/quadrature.hpp"

namespace bsvem {

namespace {

bool cube_candidate(const PolyMesh& mesh, int c) {
  const std::vector<int>& refs = mesh.cells[static_cast<std::size_t>(c)];
  if (refs.size() != 6) return false;
  for (int ref : refs)
    if (mesh.faces[static_cast<std::size_t>(PolyMesh::face_of(ref))].size() != 4)
      return false;
  return true;
}

int local_index(const std::vector<int>& ascending_ids, int global) {
  const auto it =
      std::lower_bound(ascending_ids.begin(), ascending_ids.end(), global);
  return static_cast<int>(it - ascending_ids.begin());
}

}  // namespace

ErrorNorms compute_error(const PolyMesh& mesh,
                         const Eigen::VectorXd& bulk_solution,
                         const Eigen::VectorXd& surface_solution,
                         const ManufacturedProblem& problem) {
  const int n = static_cast<int>(mesh.vertices.size());
  const int m = mesh.num_boundary_nodes;
  if (bulk_solution.size() != n)
    throw InvalidArgumentError("compute_error: bulk solution has wrong length");
  if (surface_solution.size() != m)
    throw InvalidArgumentError(
        "compute_error: surface solution has wrong length");

  const quad::TetRule tet = quad::tet_rule(5);
  const quad::TriangleRule tri = quad::triangle_rule(4);
  CubeCache cache;

  double bulk2 = 0.0;
  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    const std::vector<int> ids = mesh.cell_vertex_ids(c);
    std::vector<Eigen::Vector3d> points;
    points.reserve(ids.size());
    for (int v : ids) points.push_back(mesh.vertices[static_cast<std::size_t>(v)]);

    Eigen::VectorXd local(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      local[static_cast<Eigen::Index>(i)] =
          bulk_solution[ids[i]];

    Eigen::Vector4d coeffs;
    Eigen::Vector3d centroid;
    double h = 0.0;
    double side = 0.0;
    std::array<int, 8> perm{};
    if (cube_candidate(mesh, c) && detect_cube(points, side, perm)) {
      const CellOperators& ops = cache.get(side);
      Eigen::VectorXd canon(8);
      for (int i = 0; i < 8; ++i)
        canon[perm[static_cast<std::size_t>(i)]] = local[i];
      coeffs = ops.Pstar * canon;
      Eigen::Vector3d lo = points[0];
      for (const auto& p : points) lo = lo.cwiseMin(p);
      centroid = lo + 0.5 * side * Eigen::Vector3d::Ones();
      h = ops.geom.diameter;
    } else {
      const std::vector<int>& refs = mesh.cells[static_cast<std::size_t>(c)];
      std::vector<std::vector<int>> loops;
      loops.reserve(refs.size());
      for (int k = 0; k < static_cast<int>(refs.size()); ++k) {
        const std::vector<int> global_loop = mesh.oriented_face_loop(c, k);
        std::vector<int> loop(global_loop.size());
        for (std::size_t j = 0; j < global_loop.size(); ++j)
          loop[j] = local_index(ids, global_loop[j]);
        loops.push_back(std::move(loop));
      }
      const CellOperators ops = build_cell_operators(points, loops);
      coeffs = ops.Pstar * local;
      centroid = ops.geom.centroid;
      h = ops.geom.diameter;
    }

    const auto projected = [&](const Eigen::Vector3d& p) {
      return coeffs[0] + coeffs.tail<3>().dot((p - centroid) / h);
    };

    const std::vector<int>& refs = mesh.cells[static_cast<std::size_t>(c)];
    for (int k = 0; k < static_cast<int>(refs.size()); ++k) {
      const std::vector<int> loop = mesh.oriented_face_loop(c, k);
      Eigen::Vector3d fc = Eigen::Vector3d::Zero();
      for (int v : loop) fc += mesh.vertices[static_cast<std::size_t>(v)];
      fc /= static_cast<double>(loop.size());
      for (std::size_t j = 0; j < loop.size(); ++j) {
        const Eigen::Vector3d& pa =
            mesh.vertices[static_cast<std::size_t>(loop[j])];
        const Eigen::Vector3d& pb = mesh.vertices[static_cast<std::size_t>(
            loop[(j + 1) % loop.size()])];
        bulk2 += quad::integrate_tet_signed(
            tet, centroid, fc, pa, pb, [&](const Eigen::Vector3d& p) {
              const double d = problem.u(p) - projected(p);
              return d * d;
            });
      }
    }
  }

  double surf2 = 0.0;
  for (int f : mesh.boundary_faces) {
    const std::vector<int>& loop = mesh.faces[static_cast<std::size_t>(f)];
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(loop.size());
    for (int v : loop) pts.push_back(mesh.vertices[static_cast<std::size_t>(v)]);
    const FaceOperators ops = build_face_operators(pts);

    Eigen::VectorXd local(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i)
      local[static_cast<Eigen::Index>(i)] = surface_solution[loop[i]];
    const Eigen::Vector3d coeffs = ops.Pstar * local;
    const double h = ops.geom.diameter;
    const auto projected = [&](const Eigen::Vector3d& p) {
      const Eigen::Vector2d q = ops.geom.frame.to_plane(p);
      return coeffs[0] + (coeffs[1] * q.x() + coeffs[2] * q.y()) / h;
    };

    const Eigen::Vector3d& fc = ops.geom.frame.origin;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Eigen::Vector3d& pa = pts[j];
      const Eigen::Vector3d& pb = pts[(j + 1) % pts.size()];
      surf2 += quad::integrate_triangle3d(
          tri, fc, pa, pb, [&](const Eigen::Vector3d& p) {
            const double d = problem.v(p) - projected(p);
            return d * d;
          });
    }
  }

  ErrorNorms out;
  out.bulk = std::sqrt(std::max(0.0, bulk2));
  out.surface = std::sqrt(std::max(0.0, surf2));
  out.combined = std::sqrt(std::max(0.0, bulk2 + surf2));
  return out;
}

}  // namespace bsvem
