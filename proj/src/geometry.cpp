#include "bsvem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "bsvem/exceptions.hpp"
#include "bsvem/quadrature.hpp"

namespace bsvem {

namespace {

double max_pairwise_distance(const std::vector<Eigen::Vector3d>& pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d2 = std::max(d2, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(d2);
}

}  // namespace

Eigen::Matrix<double, 6, 1> face_monomials(const Eigen::Vector2d& q, double h) {
  const double x = q.x() / h;
  const double y = q.y() / h;
  Eigen::Matrix<double, 6, 1> m;
  m << 1.0, x, y, x * x, x * y, y * y;
  return m;
}

Eigen::Matrix<double, 10, 1> cell_monomials(const Eigen::Vector3d& p,
                                            const Eigen::Vector3d& centroid, double h) {
  const double x = (p.x() - centroid.x()) / h;
  const double y = (p.y() - centroid.y()) / h;
  const double z = (p.z() - centroid.z()) / h;
  Eigen::Matrix<double, 10, 1> m;
  m << 1.0, x, y, z, x * x, x * y, x * z, y * y, y * z, z * z;
  return m;
}

FaceGeometry face_geometry(const std::vector<Eigen::Vector3d>& loop) {
  const int n = static_cast<int>(loop.size());
  if (n < 3) throw DegenerateFaceError("face has fewer than 3 vertices");

  FaceGeometry g;
  g.diameter = max_pairwise_distance(loop);
  if (g.diameter <= 0.0) throw DegenerateFaceError("face vertices coincide");
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if ((loop[j] - loop[i]).norm() <= 1e-12 * g.diameter)
      throw DegenerateFaceError("face has repeated consecutive vertices");
  }

  // Newell normal; its magnitude is twice the polygon area.
  Eigen::Vector3d nrm = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) nrm += loop[i].cross(loop[(i + 1) % n]);
  const double nrm_len = nrm.norm();
  if (nrm_len <= 1e-12 * g.diameter * g.diameter)
    throw DegenerateFaceError("face area vanishes");
  g.frame.normal = nrm / nrm_len;

  // Provisional frame at the vertex mean, refined below to the area centroid.
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& v : loop) mean += v;
  mean /= n;

  auto in_plane_axis = [&](const Eigen::Vector3d& origin) {
    Eigen::Vector3d a = loop[0] - origin;
    a -= a.dot(g.frame.normal) * g.frame.normal;
    if (a.norm() <= 1e-12 * g.diameter) {
      a = loop[1] - loop[0];
      a -= a.dot(g.frame.normal) * g.frame.normal;
    }
    return Eigen::Vector3d(a.normalized());
  };

  g.frame.origin = mean;
  g.frame.axis1 = in_plane_axis(mean);
  g.frame.axis2 = g.frame.normal.cross(g.frame.axis1);

  // Shoelace area and centroid in provisional coordinates.
  std::vector<Eigen::Vector2d> q(n);
  for (int i = 0; i < n; ++i) q[i] = g.frame.to_plane(loop[i]);
  double area2 = 0.0;
  Eigen::Vector2d c2 = Eigen::Vector2d::Zero();
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double cr = q[i].x() * q[j].y() - q[j].x() * q[i].y();
    area2 += cr;
    c2 += cr * (q[i] + q[j]);
  }
  g.area = 0.5 * area2;
  if (g.area <= 1e-12 * g.diameter * g.diameter)
    throw DegenerateFaceError("face area vanishes");
  c2 /= 6.0 * g.area;

  g.frame.origin = g.frame.to_space(c2);
  g.frame.axis1 = in_plane_axis(g.frame.origin);
  g.frame.axis2 = g.frame.normal.cross(g.frame.axis1);

  g.vertices2d.resize(n, 2);
  double offplane = 0.0;
  for (int i = 0; i < n; ++i) {
    g.vertices2d.row(i) = g.frame.to_plane(loop[i]).transpose();
    offplane = std::max(offplane, std::abs((loop[i] - g.frame.origin).dot(g.frame.normal)));
  }
  if (offplane > 1e-9 * g.diameter) throw DegenerateFaceError("face is not planar");

  // Degree-2 moments of the scaled monomials over a signed fan around the centroid.
  const quad::TriangleRule rule = quad::triangle_rule(2);
  Eigen::VectorXd mom = Eigen::VectorXd::Zero(6);
  const double h = g.diameter;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Eigen::Vector2d a = g.vertices2d.row(i);
    const Eigen::Vector2d b = g.vertices2d.row(j);
    const double jac = a.x() * b.y() - b.x() * a.y();  // 2 * signed triangle area
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const Eigen::Vector2d p = rule.points[k][0] * a + rule.points[k][1] * b;
      mom += (jac * rule.weights[k]) * face_monomials(p, h);
    }
  }
  g.moments.h = h;
  g.moments.measure = g.area;
  g.moments.centroid = g.frame.origin;
  g.moments.moments = mom;
  return g;
}

CellGeometry cell_geometry(const std::vector<Eigen::Vector3d>& points,
                           const std::vector<std::vector<int>>& faces) {
  if (faces.size() < 4) throw OpenCellError("cell has fewer than 4 faces");

  // Every directed edge must appear exactly once in each direction.
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& f : faces) {
    const int nf = static_cast<int>(f.size());
    if (nf < 3) throw DegenerateFaceError("cell face has fewer than 3 vertices");
    for (int i = 0; i < nf; ++i) {
      const int a = f[i];
      const int b = f[(i + 1) % nf];
      if (a < 0 || b < 0 || a >= static_cast<int>(points.size()) ||
          b >= static_cast<int>(points.size()))
        throw InvalidArgumentError("cell face references vertex out of range");
      if (++edge_count[{a, b}] > 1)
        throw OpenCellError("directed edge repeated; cell faces inconsistently oriented");
    }
  }
  for (const auto& entry : edge_count) {
    const auto& e = entry.first;
    if (edge_count.find({e.second, e.first}) == edge_count.end())
      throw OpenCellError("cell boundary is not closed");
  }

  std::vector<char> used(points.size(), 0);
  for (const auto& f : faces)
    for (int v : f) used[v] = 1;
  std::vector<Eigen::Vector3d> pts;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (used[i]) pts.push_back(points[i]);

  CellGeometry g;
  g.diameter = max_pairwise_distance(pts);
  if (g.diameter <= 0.0) throw DegenerateCellError("cell vertices coincide");

  Eigen::Vector3d apex = Eigen::Vector3d::Zero();
  for (const auto& p : pts) apex += p;
  apex /= static_cast<double>(pts.size());

  // Signed fan of tetrahedra (apex, face centroid, edge) over all faces; exact
  // for any closed oriented boundary regardless of star-shapedness.
  std::vector<FaceGeometry> fg;
  fg.reserve(faces.size());
  for (const auto& f : faces) {
    std::vector<Eigen::Vector3d> loop;
    loop.reserve(f.size());
    for (int v : f) loop.push_back(points[v]);
    fg.push_back(face_geometry(loop));
  }

  double vol = 0.0;
  Eigen::Vector3d cent = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& f = faces[k];
    const Eigen::Vector3d fc = fg[k].frame.origin;
    const int nf = static_cast<int>(f.size());
    for (int i = 0; i < nf; ++i) {
      const Eigen::Vector3d a = points[f[i]];
      const Eigen::Vector3d b = points[f[(i + 1) % nf]];
      const double dv = (fc - apex).cross(a - apex).dot(b - apex) / 6.0;
      vol += dv;
      cent += dv * 0.25 * (apex + fc + a + b);
    }
  }
  if (vol <= 0.0) throw DegenerateCellError("cell volume is not positive");
  if (vol <= 1e-12 * g.diameter * g.diameter * g.diameter)
    throw DegenerateCellError("cell volume vanishes");
  g.volume = vol;
  g.centroid = cent / vol;

  const quad::TetRule rule = quad::tet_rule(2);
  Eigen::VectorXd mom = Eigen::VectorXd::Zero(10);
  const double h = g.diameter;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& f = faces[k];
    const Eigen::Vector3d fc = fg[k].frame.origin;
    const int nf = static_cast<int>(f.size());
    for (int i = 0; i < nf; ++i) {
      const Eigen::Vector3d u = fc - apex;
      const Eigen::Vector3d v = points[f[i]] - apex;
      const Eigen::Vector3d w = points[f[(i + 1) % nf]] - apex;
      const double jac = u.cross(v).dot(w);
      for (std::size_t r = 0; r < rule.points.size(); ++r) {
        const Eigen::Vector3d p =
            apex + rule.points[r][0] * u + rule.points[r][1] * v + rule.points[r][2] * w;
        mom += (jac * rule.weights[r]) * cell_monomials(p, g.centroid, h);
      }
    }
  }
  g.moments.h = h;
  g.moments.measure = g.volume;
  g.moments.centroid = g.centroid;
  g.moments.moments = mom;
  return g;
}

}  // namespace bsvem
