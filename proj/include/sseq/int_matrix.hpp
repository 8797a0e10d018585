#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace sseq {

/// Arbitrary-precision integer. All engine arithmetic is exact.
using Int = mpz_class;

/// Dense matrix of arbitrary-precision integers, row-major storage.
///
/// Everything in the engine (differentials, subgroup bases, unimodular
/// transforms) is an IntMatrix; there is deliberately no fixed-width path.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  /// Convenience constructor for literals in tests: row-major entries.
  IntMatrix(std::size_t rows, std::size_t cols,
            std::initializer_list<long> row_major);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const IntMatrix&) const = default;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<Int> apply(const std::vector<Int>& x) const;

  std::vector<Int> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<Int>& col);
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<std::vector<Int>>& cols);
  /// Horizontal concatenation [this | right]; row counts must agree.
  IntMatrix hstack(const IntMatrix& right) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  /// row[dst] -= c * row[src]
  void submul_row(std::size_t dst, std::size_t src, const Int& c);
  /// col[dst] -= c * col[src]
  void submul_col(std::size_t dst, std::size_t src, const Int& c);
  void add_row(std::size_t dst, std::size_t src);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

}  // namespace sseq
