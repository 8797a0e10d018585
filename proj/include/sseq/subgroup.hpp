#pragma once

#include <vector>

#include "sseq/abelian_group.hpp"
#include "sseq/int_matrix.hpp"
#include "sseq/normal_forms.hpp"

namespace sseq {

/// Coefficient ring of the engine. Rational mode models Q-vector spaces by
/// keeping every subgroup saturated (the lattice of Q-subspaces embeds as the
/// saturated sublattices of Z^n, and all operations commute with saturation).
enum class Coefficients { integers, rationals };

/// A subgroup of the free module Z^ambient, stored as the unique column
/// Hermite basis of its span. Equality of lattices is therefore syntactic.
/// Spans need not be saturated in integer mode (2Z inside Z is legal).
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup from_columns(std::size_t ambient, const IntMatrix& cols,
                               Coefficients c = Coefficients::integers);
  static Subgroup zero(std::size_t ambient);
  static Subgroup full(std::size_t ambient);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  bool is_zero() const { return basis_.cols() == 0; }
  bool is_full() const;

  bool operator==(const Subgroup&) const = default;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;  // ambient x rank, canonical
};

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b,
                      Coefficients c = Coefficients::integers);
Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b,
                               Coefficients c = Coefficients::integers);

/// B a subset of A, as spans.
bool contains(const Subgroup& a, const Subgroup& b);
/// x an element of the span of A.
bool contains_element(const Subgroup& a, const std::vector<Int>& x);

/// Image f(S) as a subgroup of Z^{f.rows()}.
Subgroup image(const IntMatrix& f, const Subgroup& s,
               Coefficients c = Coefficients::integers);

/// { x in domain : f x in target }. Always contains ker f intersect domain.
Subgroup preimage(const IntMatrix& f, const Subgroup& domain,
                  const Subgroup& target,
                  Coefficients c = Coefficients::integers);

/// Saturation (span_Q of s) intersect Z^n.
Subgroup saturate(const Subgroup& s);

/// Isomorphism class of a/b; requires b a subset of a.
AbelianGroup subquotient(const Subgroup& a, const Subgroup& b,
                         Coefficients c = Coefficients::integers);

}  // namespace sseq
