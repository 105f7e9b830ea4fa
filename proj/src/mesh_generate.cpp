#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "bsvem/exceptions.hpp"
#include "bsvem/geometry.hpp"
#include "bsvem/mesh.hpp"

namespace bsvem {

namespace {

// Tolerances of the cut classification: a cube is kept when all 8 corners
// satisfy d <= kKeepTol and its center satisfies d < -kCenterTol; a point with
// |d| <= kOnSurfaceTol already lies on the discrete boundary and is not moved.
constexpr double kKeepTol = 1e-12;
constexpr double kCenterTol = 1e-12;
constexpr double kOnSurfaceTol = 1e-10;

// Corner offsets and outward-oriented faces of the unit cube; face k points in
// direction kFaceDir[k].
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kFace[6][4] = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                             {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
constexpr int kFaceDir[6][3] = {{0, 0, -1}, {0, 0, 1},  {0, -1, 0},
                                {1, 0, 0},  {0, 1, 0},  {-1, 0, 0}};

/// Registers faces once and hands out signed references.
class FaceRegistry {
 public:
  explicit FaceRegistry(std::vector<std::vector<int>>& faces) : faces_(faces) {}

  /// Returns the signed reference realizing `loop` (which must traverse an
  /// existing face forward or backward, or a new one).
  int reference(const std::vector<int>& loop) {
    std::vector<int> key = loop;
    std::sort(key.begin(), key.end());
    const auto it = index_.find(key);
    if (it == index_.end()) {
      const int id = static_cast<int>(faces_.size());
      faces_.push_back(loop);
      index_.emplace(std::move(key), id);
      return id;
    }
    const int id = it->second;
    if (same_cycle(faces_[id], loop)) return id;
    std::vector<int> rev = loop;
    std::reverse(rev.begin(), rev.end());
    if (same_cycle(faces_[id], rev)) return ~id;
    throw OpenCellError("face registered with incompatible vertex loops");
  }

 private:
  static bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    if (n != static_cast<int>(b.size())) return false;
    for (int shift = 0; shift < n; ++shift) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = a[i] == b[(i + shift) % n];
      if (ok) return true;
    }
    return false;
  }

  std::vector<std::vector<int>>& faces_;
  std::map<std::vector<int>, int> index_;
};

bool coplanar(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::Vector3d nrm = Eigen::Vector3d::Zero();
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    nrm += pts[i].cross(pts[(i + 1) % n]);
    mean += pts[i];
  }
  mean /= n;
  const double len = nrm.norm();
  double diam = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) diam = std::max(diam, (pts[i] - pts[j]).norm());
  if (len <= 1e-12 * diam * diam) return false;
  nrm /= len;
  for (const auto& p : pts)
    if (std::abs((p - mean).dot(nrm)) > 1e-9 * diam) return false;
  return true;
}

}  // namespace

PolyMesh generate_cut_extrude(const LevelSetDomain& domain, int n) {
  if (n < 2) throw InvalidArgumentError("generate_cut_extrude: need n >= 2");
  const Eigen::Vector3d lo = domain.box_lo;
  const Eigen::Vector3d step = (domain.box_hi - domain.box_lo) / n;
  if (step.minCoeff() <= 0.0) throw InvalidArgumentError("degenerate bounding box");

  const int np = n + 1;
  auto lattice_point = [&](int i, int j, int k) {
    return Eigen::Vector3d(lo.x() + i * step.x(), lo.y() + j * step.y(), lo.z() + k * step.z());
  };
  auto lidx = [np](int i, int j, int k) { return (i * np + j) * np + k; };

  std::vector<double> dval(static_cast<std::size_t>(np) * np * np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      for (int k = 0; k < np; ++k) dval[lidx(i, j, k)] = domain.value(lattice_point(i, j, k));

  auto cube_kept = [&](int ci, int cj, int ck) {
    for (const auto& c : kCorner)
      if (dval[lidx(ci + c[0], cj + c[1], ck + c[2])] > kKeepTol) return false;
    const Eigen::Vector3d center = lo + Eigen::Vector3d((ci + 0.5) * step.x(),
                                                        (cj + 0.5) * step.y(),
                                                        (ck + 0.5) * step.z());
    return domain.value(center) < -kCenterTol;
  };

  std::vector<char> kept(static_cast<std::size_t>(n) * n * n, 0);
  auto cidx = [n](int ci, int cj, int ck) { return (ci * n + cj) * n + ck; };
  int kept_count = 0;
  for (int ci = 0; ci < n; ++ci)
    for (int cj = 0; cj < n; ++cj)
      for (int ck = 0; ck < n; ++ck)
        if (cube_kept(ci, cj, ck)) {
          kept[cidx(ci, cj, ck)] = 1;
          ++kept_count;
        }
  if (kept_count == 0)
    throw NoInteriorCubeError("no background cube lies fully inside the domain");

  PolyMesh mesh;
  mesh.nominal_h = step.norm();
  std::map<int, int> lattice_to_vertex;
  auto grid_vertex = [&](int i, int j, int k) {
    const int li = lidx(i, j, k);
    const auto it = lattice_to_vertex.find(li);
    if (it != lattice_to_vertex.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(lattice_point(i, j, k));
    lattice_to_vertex.emplace(li, id);
    return id;
  };

  FaceRegistry registry(mesh.faces);

  // Pass 1: cells for the kept cubes, in grid scan order.
  for (int ci = 0; ci < n; ++ci)
    for (int cj = 0; cj < n; ++cj)
      for (int ck = 0; ck < n; ++ck) {
        if (!kept[cidx(ci, cj, ck)]) continue;
        std::array<int, 8> corner{};
        for (int v = 0; v < 8; ++v)
          corner[v] = grid_vertex(ci + kCorner[v][0], cj + kCorner[v][1], ck + kCorner[v][2]);
        std::vector<int> refs;
        refs.reserve(6);
        for (const auto& f : kFace)
          refs.push_back(registry.reference({corner[f[0]], corner[f[1]], corner[f[2]],
                                             corner[f[3]]}));
        mesh.cells.push_back(std::move(refs));
      }

  // Pass 2: extrude the outermost faces of the kept region to the level set.
  std::map<int, int> projected;  // lattice index -> projected vertex id
  auto surface_vertex = [&](int i, int j, int k) {
    const int li = lidx(i, j, k);
    if (std::abs(dval[li]) <= kOnSurfaceTol) return grid_vertex(i, j, k);
    const auto it = projected.find(li);
    if (it != projected.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(closest_point_project(domain, lattice_point(i, j, k)));
    projected.emplace(li, id);
    return id;
  };

  auto quad_refs = [&](std::array<int, 4> q, std::vector<int>& refs) {
    // Registers the (possibly non-planar) quad, split along the shorter
    // diagonal into two triangles when needed.
    const std::vector<Eigen::Vector3d> pts = {mesh.vertices[q[0]], mesh.vertices[q[1]],
                                              mesh.vertices[q[2]], mesh.vertices[q[3]]};
    if (coplanar(pts)) {
      refs.push_back(registry.reference({q[0], q[1], q[2], q[3]}));
      return;
    }
    const double d02 = (pts[0] - pts[2]).squaredNorm();
    const double d13 = (pts[1] - pts[3]).squaredNorm();
    bool use02 = d02 < d13;
    if (d02 == d13) use02 = std::min(q[0], q[2]) < std::min(q[1], q[3]);
    if (use02) {
      refs.push_back(registry.reference({q[0], q[1], q[2]}));
      refs.push_back(registry.reference({q[0], q[2], q[3]}));
    } else {
      refs.push_back(registry.reference({q[0], q[1], q[3]}));
      refs.push_back(registry.reference({q[1], q[2], q[3]}));
    }
  };

  for (int ci = 0; ci < n; ++ci)
    for (int cj = 0; cj < n; ++cj)
      for (int ck = 0; ck < n; ++ck) {
        if (!kept[cidx(ci, cj, ck)]) continue;
        for (int fdir = 0; fdir < 6; ++fdir) {
          const int ni = ci + kFaceDir[fdir][0];
          const int nj = cj + kFaceDir[fdir][1];
          const int nk = ck + kFaceDir[fdir][2];
          const bool neighbor_kept = ni >= 0 && nj >= 0 && nk >= 0 && ni < n && nj < n &&
                                     nk < n && kept[cidx(ni, nj, nk)];
          if (neighbor_kept) continue;

          std::array<int, 4> bi{}, bj{}, bk{};
          std::array<int, 4> base{};
          bool on_surface = true;
          for (int v = 0; v < 4; ++v) {
            const int* c = kCorner[kFace[fdir][v]];
            bi[v] = ci + c[0];
            bj[v] = cj + c[1];
            bk[v] = ck + c[2];
            base[v] = grid_vertex(bi[v], bj[v], bk[v]);
            on_surface = on_surface && std::abs(dval[lidx(bi[v], bj[v], bk[v])]) <= kOnSurfaceTol;
          }
          if (on_surface) continue;  // Face already lies on the boundary.

          std::array<int, 4> top{};
          for (int v = 0; v < 4; ++v) top[v] = surface_vertex(bi[v], bj[v], bk[v]);

          std::vector<int> refs;
          refs.push_back(registry.reference(
              {base[3], base[2], base[1], base[0]}));  // bottom, reversed
          quad_refs(top, refs);
          for (int v = 0; v < 4; ++v) {
            const int w = (v + 1) % 4;
            const int p = base[v], q = base[w], qq = top[w], pp = top[v];
            if (pp == p && qq == q) continue;
            if (pp == p)
              refs.push_back(registry.reference({p, q, qq}));
            else if (qq == q)
              refs.push_back(registry.reference({p, q, pp}));
            else
              quad_refs({p, q, qq, pp}, refs);
          }
          mesh.cells.push_back(std::move(refs));
        }
      }

  // Boundary faces = faces with exactly one incident cell.
  std::vector<int> incidence(mesh.faces.size(), 0);
  for (const auto& cell : mesh.cells)
    for (int ref : cell) ++incidence[PolyMesh::face_of(ref)];
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    if (incidence[f] > 2) throw OpenSurfaceError("face shared by more than two cells");
    if (incidence[f] == 1) mesh.boundary_faces.push_back(static_cast<int>(f));
  }

  // Boundary-first renumbering, stable in the original vertex order.
  std::vector<char> on_boundary(mesh.vertices.size(), 0);
  for (int f : mesh.boundary_faces)
    for (int v : mesh.faces[f]) on_boundary[v] = 1;
  std::vector<int> perm(mesh.vertices.size());
  int next = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    if (on_boundary[v]) perm[v] = next++;
  mesh.num_boundary_nodes = next;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    if (!on_boundary[v]) perm[v] = next++;
  std::vector<Eigen::Vector3d> reordered(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) reordered[perm[v]] = mesh.vertices[v];
  mesh.vertices = std::move(reordered);
  for (auto& loop : mesh.faces)
    for (int& v : loop) v = perm[v];

  validate_mesh(mesh);
  return mesh;
}

}  // namespace bsvem
