#pragma once

#include <optional>
#include <vector>

#include "sseq/abelian_group.hpp"
#include "sseq/int_matrix.hpp"

namespace sseq {

/// u * m * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ... >= 0.
/// Pivoting always selects the smallest-magnitude nonzero entry (ties broken
/// by row then column index), so the output is deterministic for fixed input.
struct SmithResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  std::size_t rank = 0;

  std::vector<Int> invariant_factors() const;  // the nonzero diagonal
};

SmithResult smith_normal_form(const IntMatrix& m);

/// Unique row Hermite normal form of the row span of m; zero rows dropped.
/// Pivots positive, entries above a pivot reduced into [0, pivot).
IntMatrix row_hermite(const IntMatrix& m);

/// Columns form a basis of { x : m x = 0 }, saturated by construction,
/// canonicalized so the result is unique per kernel lattice.
IntMatrix kernel_basis(const IntMatrix& m);

/// One integer solution of m x = b, or nullopt. Deterministic (free
/// coordinates set to zero).
std::optional<std::vector<Int>> solve(const IntMatrix& m,
                                      const std::vector<Int>& b);

/// Same, reusing a precomputed Smith decomposition of m.
std::optional<std::vector<Int>> solve(const SmithResult& snf_of_m,
                                      const std::vector<Int>& b);

/// Isomorphism class of Z^rows / column span of m.
AbelianGroup cokernel(const IntMatrix& m);

/// Invariant factors of the diagonal group +_i Z/values[i] (values may be
/// arbitrary nonnegative; 0 means a free summand).
AbelianGroup diagonal_group(const std::vector<Int>& values);

}  // namespace sseq
