#include "bsvem/csr.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "bsvem/exceptions.hpp"
#include "bsvem/kernels.hpp"

namespace bsvem {

SparseCsr SparseCsr::from_triplets(int rows, int cols,
                                   const std::vector<Triplet>& triplets) {
  SparseCsr m;
  m.rows_ = rows;
  m.cols_ = cols;
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw InvalidArgumentError("triplet index out of range");

  std::vector<std::size_t> order(triplets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (triplets[a].row != triplets[b].row)
                       return triplets[a].row < triplets[b].row;
                     return triplets[a].col < triplets[b].col;
                   });

  m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (std::size_t k = 0; k < order.size();) {
    const Triplet& head = triplets[order[k]];
    double sum = 0.0;
    while (k < order.size() && triplets[order[k]].row == head.row &&
           triplets[order[k]].col == head.col) {
      sum += triplets[order[k]].value;
      ++k;
    }
    m.col_indices_.push_back(head.col);
    m.vals_.push_back(sum);
    ++m.row_ptr_[static_cast<std::size_t>(head.row) + 1];
  }
  for (int r = 0; r < rows; ++r)
    m.row_ptr_[static_cast<std::size_t>(r) + 1] +=
        m.row_ptr_[static_cast<std::size_t>(r)];
  return m;
}

Eigen::VectorXd SparseCsr::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != cols_)
    throw InvalidArgumentError("vector length does not match matrix columns");
  Eigen::VectorXd y(rows_);
  kernels::csr_spmv(row_ptr_.data(), col_indices_.data(), vals_.data(), rows_,
                    x.data(), y.data());
  return y;
}

Eigen::VectorXd SparseCsr::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(rows_);
  for (int r = 0; r < rows_ && r < cols_; ++r)
    for (int k = row_ptr_[static_cast<std::size_t>(r)];
         k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
      if (col_indices_[static_cast<std::size_t>(k)] == r)
        d(r) = vals_[static_cast<std::size_t>(k)];
  return d;
}

Eigen::MatrixXd SparseCsr::dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[static_cast<std::size_t>(r)];
         k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
      a(r, col_indices_[static_cast<std::size_t>(k)]) +=
          vals_[static_cast<std::size_t>(k)];
  return a;
}

SparseCsr SparseCsr::block(int row_begin, int row_end, int col_begin,
                           int col_end) const {
  if (row_begin < 0 || row_end > rows_ || row_begin > row_end ||
      col_begin < 0 || col_end > cols_ || col_begin > col_end)
    throw InvalidArgumentError("block range outside matrix");
  SparseCsr out;
  out.rows_ = row_end - row_begin;
  out.cols_ = col_end - col_begin;
  out.row_ptr_.assign(static_cast<std::size_t>(out.rows_) + 1, 0);
  for (int r = row_begin; r < row_end; ++r) {
    for (int k = row_ptr_[static_cast<std::size_t>(r)];
         k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
      const int c = col_indices_[static_cast<std::size_t>(k)];
      if (c < col_begin || c >= col_end) continue;
      out.col_indices_.push_back(c - col_begin);
      out.vals_.push_back(vals_[static_cast<std::size_t>(k)]);
    }
    out.row_ptr_[static_cast<std::size_t>(r - row_begin) + 1] =
        static_cast<int>(out.vals_.size());
  }
  return out;
}

void SparseCsr::write_matrix_market(std::ostream& os, bool symmetric) const {
  os << "%%MatrixMarket matrix coordinate real "
     << (symmetric ? "symmetric" : "general") << "\n";
  std::size_t count = vals_.size();
  if (symmetric) {
    count = 0;
    for (int r = 0; r < rows_; ++r)
      for (int k = row_ptr_[static_cast<std::size_t>(r)];
           k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
        if (col_indices_[static_cast<std::size_t>(k)] <= r) ++count;
  }
  os << rows_ << " " << cols_ << " " << count << "\n";
  char buf[64];
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[static_cast<std::size_t>(r)];
         k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
      const int c = col_indices_[static_cast<std::size_t>(k)];
      if (symmetric && c > r) continue;
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, c + 1,
                    vals_[static_cast<std::size_t>(k)]);
      os << buf;
    }
}

void SparseCsr::write_matrix_market(const std::string& path, bool symmetric) const {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  write_matrix_market(os, symmetric);
  if (!os) throw FormatError("failed writing " + path);
}

}  // namespace bsvem
