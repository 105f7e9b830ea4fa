#include "bsvem/face_ops.hpp"

#include <cmath>

#include "bsvem/exceptions.hpp"

namespace bsvem {

FaceOperators build_face_operators(const std::vector<Eigen::Vector3d>& loop) {
  return build_face_operators(face_geometry(loop));
}

FaceOperators build_face_operators(const FaceGeometry& geom) {
  FaceOperators ops;
  ops.geom = geom;
  const int n = static_cast<int>(geom.vertices2d.rows());
  const double h = geom.diameter;
  const double area = geom.area;

  ops.D.resize(n, 3);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d q = geom.vertices2d.row(i);
    ops.D(i, 0) = 1.0;
    ops.D(i, 1) = q.x() / h;
    ops.D(i, 2) = q.y() / h;
  }

  // Edge lengths and outward in-plane normals of the counter-clockwise loop.
  std::vector<double> len(n);
  std::vector<Eigen::Vector2d> nrm(n);
  double perimeter = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d a = geom.vertices2d.row(i);
    const Eigen::Vector2d b = geom.vertices2d.row((i + 1) % n);
    const Eigen::Vector2d e = b - a;
    len[i] = e.norm();
    nrm[i] = Eigen::Vector2d(e.y(), -e.x()) / len[i];
    perimeter += len[i];
  }

  // Row 0: mean of the trace over the boundary (edgewise-linear, so the
  // trapezoid rule is exact). Rows 1,2: integration by parts of
  // grad v . grad m against the constant gradients (1/h, 0) and (0, 1/h).
  ops.B.setZero(3, n);
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    ops.B(0, i) = 0.5 * (len[prev] + len[i]) / perimeter;
    ops.B(1, i) = 0.5 * (nrm[prev].x() * len[prev] + nrm[i].x() * len[i]) / h;
    ops.B(2, i) = 0.5 * (nrm[prev].y() * len[prev] + nrm[i].y() * len[i]) / h;
  }

  ops.G = ops.B * ops.D;

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(ops.G);
  const double cond = svd.singularValues()(0) / svd.singularValues()(2);
  if (!std::isfinite(cond) || cond > 1e12)
    throw SingularProjectorError("face projector Gram matrix is singular");

  ops.Pstar = ops.G.partialPivLu().solve(ops.B);
  ops.P = ops.D * ops.Pstar;

  // Mass Gram matrix of the scaled monomials from the precomputed moments.
  const Eigen::VectorXd& mom = geom.moments.moments;
  Eigen::Matrix3d H;
  H << mom[0], mom[1], mom[2],
       mom[1], mom[3], mom[4],
       mom[2], mom[4], mom[5];

  Eigen::Matrix3d Gt = ops.G;
  Gt.row(0).setZero();

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd S = (I - ops.P).transpose() * (I - ops.P);
  ops.stiffness = ops.Pstar.transpose() * Gt * ops.Pstar + h * S;
  ops.mass = ops.Pstar.transpose() * H * ops.Pstar + area * S;

  // Enhancement property: the integral of a virtual function equals the
  // integral of its projection, a known polynomial.
  ops.integral = ops.Pstar.transpose() * mom.head<3>();
  return ops;
}

Eigen::Vector3d apply_face_projection(const FaceOperators& ops, const Eigen::VectorXd& dofs) {
  if (dofs.size() != ops.D.rows())
    throw InvalidArgumentError("apply_face_projection: dof vector has wrong length");
  return ops.Pstar * dofs;
}

}  // namespace bsvem
