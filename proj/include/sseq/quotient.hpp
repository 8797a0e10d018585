#pragma once

#include <vector>

#include "sseq/subgroup.hpp"

namespace sseq {

/// Presentation of the quotient num/den of two nested subgroups of Z^n,
/// with a coordinate map normalizing elements of num into the invariant-factor
/// shape of the quotient: torsion coordinates first (reduced into [0, d_i)),
/// then free coordinates.
class QuotientPresentation {
 public:
  QuotientPresentation() = default;
  QuotientPresentation(Subgroup num, Subgroup den, Coefficients c);

  const AbelianGroup& group() const { return cls_; }
  const Subgroup& numerator() const { return num_; }
  const Subgroup& denominator() const { return den_; }
  std::size_t coord_count() const { return kept_.size(); }

  /// Coordinates of an element of num (given in ambient coordinates).
  /// Throws if the element is not in num.
  std::vector<Int> coords(const std::vector<Int>& ambient_elt) const;
  bool zero_class(const std::vector<Int>& ambient_elt) const;

  /// Reduce a raw coordinate vector into normal form (torsion mod d_i).
  std::vector<Int> reduce(std::vector<Int> raw) const;

  /// Ambient representatives of the retained coordinate generators, one per
  /// coordinate, in coordinate order.
  const std::vector<std::vector<Int>>& generator_reps() const { return reps_; }

 private:
  Subgroup num_, den_;
  AbelianGroup cls_;
  SmithResult num_snf_;           // of the numerator basis, for coords()
  IntMatrix rel_u_;               // row transform from the relation SNF
  std::vector<Int> diag_;         // invariant factors padded with zeros
  std::vector<std::size_t> kept_; // retained rows of rel_u_ (torsion, then free)
  std::vector<std::vector<Int>> reps_;
};

}  // namespace sseq
