#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "bsvem/face_ops.hpp"
#include "bsvem/geometry.hpp"

namespace bsvem {

/// Local operators of the lowest-order virtual element space on one polyhedral
/// cell with n vertex dofs. The polynomial basis is the scaled monomials
/// {1, X, Y, Z} centered at the cell centroid.
struct CellOperators {
  CellGeometry geom;
  Eigen::MatrixXd D;          ///< n x 4
  Eigen::MatrixXd B;          ///< 4 x n
  Eigen::Matrix4d G;          ///< B*D
  Eigen::MatrixXd Pstar;      ///< 4 x n
  Eigen::MatrixXd P;          ///< n x n
  Eigen::MatrixXd stiffness;  ///< n x n, consistency + diameter-weighted stabilization.
  Eigen::MatrixXd mass;       ///< n x n, consistency + volume-weighted stabilization.
};

/// One face of a cell, described through its (shareable) face operators.
struct CellFace {
  const FaceOperators* ops;  ///< Built on the face's stored vertex loop.
  std::vector<int> dofs;     ///< Cell-local vertex index of each face dof.
  double sign;               ///< +1 when ops->geom.frame.normal points out of the cell.
};

/// Builds the operators from shared per-face data. The face-integral
/// functionals of the faces make every boundary integral computable without
/// evaluating the virtual functions in the interior.
CellOperators build_cell_operators(const std::vector<Eigen::Vector3d>& points,
                                   const std::vector<CellFace>& faces);

/// Convenience overload that builds the face operators from outward-oriented
/// local vertex loops.
CellOperators build_cell_operators(const std::vector<Eigen::Vector3d>& points,
                                   const std::vector<std::vector<int>>& outward_loops);

/// Shares one operator build among all axis-aligned cube cells of equal side.
/// The cached block is computed on the canonical cube [0,s]^3 with the fixed
/// corner order (0,0,0),(1,0,0),(1,1,0),(0,1,0),(0,0,1),(1,0,1),(1,1,1),(0,1,1);
/// translated copies reuse it after an index permutation only, which is exact
/// because the construction depends on coordinates only through their offset
/// from the centroid.
class CubeCache {
 public:
  /// Operators of the canonical cube with the given side; side values equal to
  /// 12 significant digits share one entry. Thread-safe.
  const CellOperators& get(double side);

  /// Number of cell-operator builds performed so far.
  int build_count() const { return builds_; }

 private:
  std::map<double, std::unique_ptr<CellOperators>> cache_;
  int builds_ = 0;
  std::mutex mutex_;
};

/// Free-function form of CubeCache::get.
const CellOperators& cached_cube_operators(CubeCache& cache, double side);

/// Canonical corner coordinates of the cube [0,s]^3 in the cache's dof order.
std::vector<Eigen::Vector3d> canonical_cube_points(double side);

/// Detects whether the given points are the corners of an axis-aligned cube;
/// when they are, returns true and fills `side` and `to_canonical` such that
/// points[i] corresponds to canonical corner to_canonical[i].
bool detect_cube(const std::vector<Eigen::Vector3d>& points, double& side,
                 std::array<int, 8>& to_canonical);

}  // namespace bsvem
