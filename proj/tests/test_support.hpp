#pragma once

// Shared helpers for the unit suites: a self-contained deterministic RNG and
// brute-force oracles kept independent of the library code paths they check.

#include <cstdint>
#include <vector>

#include "sseq/int_matrix.hpp"

namespace test_support {

/// splitmix64; deterministic across platforms, unlike <random> distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi], inclusive.
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline sseq::IntMatrix random_matrix(Rng& rng, std::size_t rows,
                                     std::size_t cols, long bound) {
  sseq::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = rng.uniform(-bound, bound);
  return m;
}

/// Random unimodular matrix built from elementary row operations.
inline sseq::IntMatrix random_unimodular(Rng& rng, std::size_t n,
                                         int ops = 12) {
  sseq::IntMatrix m = sseq::IntMatrix::identity(n);
  if (n < 2) return m;
  for (int k = 0; k < ops; ++k) {
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    if (i == j) {
      m.negate_row(i);
      continue;
    }
    m.submul_row(i, j, sseq::Int(rng.uniform(-2, 2)));
  }
  return m;
}

/// Determinant by Laplace expansion; oracle for small matrices only.
inline sseq::Int det_oracle(const sseq::IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  sseq::Int det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    sseq::IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    sseq::Int term = m.at(0, j) * det_oracle(minor);
    if (j % 2 == 1) term = -term;
    det += term;
  }
  return det;
}

namespace detail {

inline void enumerate_subsets(std::size_t n, std::size_t k, std::size_t start,
                              std::vector<std::size_t>& current,
                              std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    current.push_back(i);
    enumerate_subsets(n, k, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace detail

/// Invariant factors via determinantal divisors: d_k = D_k / D_{k-1} where
/// D_k is the gcd of all k x k minors. Independent of the elimination-based
/// Smith implementation; exponential, keep matrices small.
inline std::vector<sseq::Int> invariant_factors_via_minors(
    const sseq::IntMatrix& m) {
  using sseq::Int;
  std::vector<Int> factors;
  Int prev_divisor = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    std::vector<std::size_t> scratch;
    detail::enumerate_subsets(m.rows(), k, 0, scratch, row_sets);
    detail::enumerate_subsets(m.cols(), k, 0, scratch, col_sets);
    Int divisor = 0;
    for (const auto& rs : row_sets)
      for (const auto& cs : col_sets) {
        sseq::IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
        Int d = det_oracle(sub);
        mpz_gcd(divisor.get_mpz_t(), divisor.get_mpz_t(), d.get_mpz_t());
      }
    if (divisor == 0) break;  // rank reached
    factors.push_back(divisor / prev_divisor);
    prev_divisor = divisor;
  }
  return factors;
}

}  // namespace test_support
