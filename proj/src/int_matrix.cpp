#include "sseq/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace sseq {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::initializer_list<long> row_major)
    : IntMatrix(rows, cols) {
  if (row_major.size() != rows * cols)
    throw std::invalid_argument("IntMatrix: literal size mismatch");
  std::size_t k = 0;
  for (long v : row_major) a_[k++] = v;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  for (const Int& v : a_)
    if (v != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("IntMatrix: product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("IntMatrix: apply shape mismatch");
  std::vector<Int> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) y[i] += at(i, j) * x[j];
  return y;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
  std::vector<Int> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

void IntMatrix::set_column(std::size_t j, const std::vector<Int>& col) {
  if (col.size() != rows_)
    throw std::invalid_argument("IntMatrix: set_column shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = col[i];
}

IntMatrix IntMatrix::from_columns(std::size_t rows,
                                  const std::vector<std::vector<Int>>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& right) const {
  if (rows_ != right.rows_)
    throw std::invalid_argument("IntMatrix: hstack row mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j)
      m.at(i, cols_ + j) = right.at(i, j);
  }
  return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

void IntMatrix::submul_row(std::size_t dst, std::size_t src, const Int& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < cols_; ++k) at(dst, k) -= c * at(src, k);
}

void IntMatrix::submul_col(std::size_t dst, std::size_t src, const Int& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < rows_; ++k) at(k, dst) -= c * at(k, src);
}

void IntMatrix::add_row(std::size_t dst, std::size_t src) {
  for (std::size_t k = 0; k < cols_; ++k) at(dst, k) += at(src, k);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? " " : "") << at(i, j).get_str();
  }
  os << "]";
  return os.str();
}

}  // namespace sseq
