#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace bsvem {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix. Assembly from triplets is deterministic:
/// entries are grouped with a stable sort and duplicates are summed in
/// insertion order, so identical input always yields identical bits.
class SparseCsr {
 public:
  SparseCsr() = default;

  /// Throws InvalidArgumentError when an index lies outside the matrix.
  static SparseCsr from_triplets(int rows, int cols,
                                 const std::vector<Triplet>& triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const { return vals_.size(); }

  /// y = A x through the dispatched sparse kernel.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

  /// Main diagonal as a dense vector (absent entries are zero).
  Eigen::VectorXd diagonal() const;

  /// Dense copy, for small matrices in tests.
  Eigen::MatrixXd dense() const;

  /// Submatrix of rows [row_begin, row_end) and columns [col_begin, col_end).
  SparseCsr block(int row_begin, int row_end, int col_begin, int col_end) const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return vals_; }

  /// Writes the matrix in MatrixMarket coordinate format with full precision.
  /// With symmetric = true only the lower triangle is stored under the
  /// symmetric header; the caller asserts the symmetry.
  void write_matrix_market(std::ostream& os, bool symmetric = false) const;
  void write_matrix_market(const std::string& path, bool symmetric = false) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_ = {0};
  std::vector<int> col_indices_;
  std::vector<double> vals_;
};

}  // namespace bsvem
