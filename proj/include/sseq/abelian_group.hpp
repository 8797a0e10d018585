#pragma once

#include <string>
#include <vector>

#include "sseq/int_matrix.hpp"

namespace sseq {

/// Isomorphism class of a finitely generated abelian group in invariant-factor
/// normal form: Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k,
/// every d_i >= 2. The representation is unique, so operator== decides
/// isomorphism.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup&) const = default;

  static AbelianGroup free_of_rank(std::size_t n) { return {n, {}}; }

  std::string to_string() const;
};

/// Direct sum, renormalized to invariant factors.
AbelianGroup direct_sum(const std::vector<AbelianGroup>& parts);

}  // namespace sseq
