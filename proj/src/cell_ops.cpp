#include "bsvem/cell_ops.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "bsvem/exceptions.hpp"

namespace bsvem {

namespace {

Eigen::Matrix4d moment_matrix(const Eigen::VectorXd& mom) {
  Eigen::Matrix4d h;
  h << mom(0), mom(1), mom(2), mom(3),
       mom(1), mom(4), mom(5), mom(6),
       mom(2), mom(5), mom(7), mom(8),
       mom(3), mom(6), mom(8), mom(9);
  return h;
}

}  // namespace

CellOperators build_cell_operators(const std::vector<Eigen::Vector3d>& points,
                                   const std::vector<CellFace>& faces) {
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<int>> loops;
  loops.reserve(faces.size());
  for (const CellFace& f : faces) {
    if (f.ops == nullptr) throw InvalidArgumentError("cell face without operators");
    if (f.dofs.size() != static_cast<std::size_t>(f.ops->geom.vertices2d.rows()))
      throw InvalidArgumentError("cell face dof map does not match its operators");
    std::vector<int> loop = f.dofs;
    if (f.sign < 0.0) std::reverse(loop.begin(), loop.end());
    loops.push_back(std::move(loop));
  }

  CellOperators ops;
  ops.geom = cell_geometry(points, loops);
  const double h = ops.geom.diameter;
  const Eigen::Vector3d xc = ops.geom.centroid;

  ops.D.resize(n, 4);
  for (int i = 0; i < n; ++i) ops.D.row(i) = cell_monomials(points[i], xc, h);

  double boundary_area = 0.0;
  for (const CellFace& f : faces) boundary_area += f.ops->geom.area;

  ops.B = Eigen::MatrixXd::Zero(4, n);
  for (const CellFace& f : faces) {
    const Eigen::Vector3d normal = f.sign * f.ops->geom.frame.normal;
    const int m = static_cast<int>(f.dofs.size());
    for (int j = 0; j < m; ++j) {
      const double w = f.ops->integral(j);
      const int i = f.dofs[j];
      ops.B(0, i) += w / boundary_area;
      ops.B(1, i) += normal.x() / h * w;
      ops.B(2, i) += normal.y() / h * w;
      ops.B(3, i) += normal.z() / h * w;
    }
  }

  ops.G = ops.B * ops.D;
  {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(ops.G);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin > 1e12)
      throw SingularProjectorError("cell projector system is numerically singular");
  }
  ops.Pstar = ops.G.partialPivLu().solve(ops.B);
  ops.P = ops.D * ops.Pstar;

  Eigen::Matrix4d gt = ops.G;
  gt.row(0).setZero();
  const Eigen::Matrix4d hm = moment_matrix(ops.geom.moments.moments);
  const Eigen::MatrixXd s =
      (Eigen::MatrixXd::Identity(n, n) - ops.P).transpose() *
      (Eigen::MatrixXd::Identity(n, n) - ops.P);
  ops.stiffness = ops.Pstar.transpose() * gt * ops.Pstar + h * s;
  ops.mass = ops.Pstar.transpose() * hm * ops.Pstar + ops.geom.volume * s;
  return ops;
}

CellOperators build_cell_operators(const std::vector<Eigen::Vector3d>& points,
                                   const std::vector<std::vector<int>>& outward_loops) {
  std::vector<FaceOperators> owned;
  owned.reserve(outward_loops.size());
  for (const std::vector<int>& loop : outward_loops) {
    std::vector<Eigen::Vector3d> face_pts;
    face_pts.reserve(loop.size());
    for (int v : loop) face_pts.push_back(points.at(static_cast<std::size_t>(v)));
    owned.push_back(build_face_operators(face_pts));
  }
  std::vector<CellFace> faces;
  faces.reserve(outward_loops.size());
  for (std::size_t k = 0; k < outward_loops.size(); ++k)
    faces.push_back(CellFace{&owned[k], outward_loops[k], 1.0});
  return build_cell_operators(points, faces);
}

std::vector<Eigen::Vector3d> canonical_cube_points(double side) {
  const double s = side;
  return {{0, 0, 0}, {s, 0, 0}, {s, s, 0}, {0, s, 0},
          {0, 0, s}, {s, 0, s}, {s, s, s}, {0, s, s}};
}

namespace {

const std::vector<std::vector<int>>& canonical_cube_loops() {
  static const std::vector<std::vector<int>> loops = {
      {0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
      {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  return loops;
}

double snap_side(double side) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", side);
  return std::strtod(buf, nullptr);
}

}  // namespace

const CellOperators& CubeCache::get(double side) {
  const double key = snap_side(side);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto ops = std::make_unique<CellOperators>(
        build_cell_operators(canonical_cube_points(key), canonical_cube_loops()));
    ++builds_;
    it = cache_.emplace(key, std::move(ops)).first;
  }
  return *it->second;
}

const CellOperators& cached_cube_operators(CubeCache& cache, double side) {
  return cache.get(side);
}

bool detect_cube(const std::vector<Eigen::Vector3d>& points, double& side,
                 std::array<int, 8>& to_canonical) {
  if (points.size() != 8) return false;
  Eigen::Vector3d lo = points[0];
  Eigen::Vector3d hi = points[0];
  for (const Eigen::Vector3d& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Eigen::Vector3d ext = hi - lo;
  const double s = ext.maxCoeff();
  if (s <= 0.0) return false;
  const double tol = 1e-9 * s;
  if ((ext.array() - s).abs().maxCoeff() > tol) return false;

  bool seen[8] = {};
  for (int i = 0; i < 8; ++i) {
    int code = 0;
    for (int a = 0; a < 3; ++a) {
      const double d = points[static_cast<std::size_t>(i)](a) - lo(a);
      if (std::abs(d) <= tol) {
        continue;
      } else if (std::abs(d - s) <= tol) {
        code |= 1 << a;
      } else {
        return false;
      }
    }
    static const int kFromBits[8] = {0, 1, 3, 2, 4, 5, 7, 6};
    const int c = kFromBits[code];
    if (seen[c]) return false;
    seen[c] = true;
    to_canonical[static_cast<std::size_t>(i)] = c;
  }
  side = s;
  return true;
}

}  // namespace bsvem
