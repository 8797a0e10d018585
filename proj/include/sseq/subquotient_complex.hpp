#pragma once

#include <map>

#include "sseq/cochain_complex.hpp"

namespace sseq {

/// Complex of finitely generated abelian groups presented degreewise as
/// num_l / den_l for nested d-stable subgroups of the base complex.
/// The differential is the one induced by the base differential; cohomology
/// is computed entirely by subgroup arithmetic in the ambient module:
///   H^l = { x in num_l : d x in den_{l+1} } / ( den_l + d(num_{l-1}) ).
class SubquotientComplex {
 public:
  SubquotientComplex(ComplexPtr base,
                     std::map<int, std::pair<Subgroup, Subgroup>> layers);

  const CochainComplex& base() const { return *base_; }

  const Subgroup& numerator(int l) const;
  const Subgroup& denominator(int l) const;

  /// Class of the degree-l piece num_l/den_l.
  AbelianGroup group_at(int l) const;
  QuotientPresentation cohomology_presentation(int l) const;
  AbelianGroup cohomology(int l) const;

  bool is_zero() const;
  /// Alternating sum of free ranks of the pieces.
  Int euler_characteristic() const;

  /// d-stability of both layers; empty when the presentation is coherent.
  std::vector<std::string> validate() const;

  /// Literal equality of the defining subgroup pairs, degree by degree.
  bool operator==(const SubquotientComplex& other) const;

 private:
  ComplexPtr base_;
  std::map<int, std::pair<Subgroup, Subgroup>> layers_;
  mutable std::map<int, std::pair<Subgroup, Subgroup>> zero_cache_;
};

}  // namespace sseq
