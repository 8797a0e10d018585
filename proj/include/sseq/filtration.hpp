#pragma once

#include <array>
#include <optional>

#include "sseq/subquotient_complex.hpp"

namespace sseq {

/// Finite decreasing filtration of a bounded cochain complex by d-stable
/// subcomplexes. Steps are stored for p in [window_lo, window_hi]; the
/// accessor extends them by F^p = everything for p < window_lo and F^p = 0
/// for p > window_hi. An empty stored window (lo = hi + 1) is legal and
/// encodes the trivial filtration jumping at hi.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// steps[p - lo][l - base.min_degree()] is F^p in degree l.
  FilteredComplex(ComplexPtr base, int lo,
                  std::vector<std::vector<Subgroup>> steps);

  /// F^p = everything for p <= jump_at, zero above.
  static FilteredComplex trivial(ComplexPtr base, int jump_at);

  const CochainComplex& base() const { return *base_; }
  const ComplexPtr& base_ptr() const { return base_; }
  Coefficients coefficients() const { return base_->coefficients(); }

  int window_lo() const { return lo_; }
  int window_hi() const { return lo_ + static_cast<int>(steps_.size()) - 1; }

  Subgroup step(int p, int l) const;

  struct Violation {
    int p;
    int degree;
    std::string what;
  };
  std::vector<Violation> validate() const;
  void ensure_valid() const;

  /// Drop stored steps that repeat the accessor's boundary semantics.
  FilteredComplex trimmed() const;

  /// Stepwise equality as filtrations (independent of stored windows).
  bool same_filtration(const FilteredComplex& other) const;

 private:
  ComplexPtr base_;
  int lo_ = 0;
  std::vector<std::vector<Subgroup>> steps_;
};

/// Two filtrations on one base complex; `first` plays the role of the
/// externally supplied filtration (P), `second` the flag-style one (F).
struct BifilteredComplex {
  ComplexPtr base;
  FilteredComplex first;
  FilteredComplex second;

  BifilteredComplex(FilteredComplex p, FilteredComplex f);
};

/// Smallest [a, b] containing all p with Gr^p nonzero; nullopt when every
/// graded piece vanishes.
std::optional<std::array<int, 2>> filtration_type(const FilteredComplex& f);

/// Gr^p = F^p / F^{p+1} with the induced differential.
SubquotientComplex graded_piece(const FilteredComplex& f, int p);

/// Deligne's shifted filtration:
/// Dec(F)^p L^l = { x in F^{p+l} L^l : d x in F^{p+l+1} L^{l+1} }.
FilteredComplex decale(const FilteredComplex& f);

/// Reindexed filtration with shifted^p = original^{p - s}.
FilteredComplex shift_filtration(const FilteredComplex& f, int s);

/// Diagonal filtration delta^p = sum over i+j=p of F^i intersect G^j.
FilteredComplex diagonal(const FilteredComplex& f, const FilteredComplex& g);

/// Gr^i_F Gr^j_G as the Zassenhaus subquotient
/// (F^i n G^j) / ((F^{i+1} n G^j) + (F^i n G^{j+1})), symmetric in the
/// two inputs.
SubquotientComplex bigraded_piece(const FilteredComplex& f,
                                  const FilteredComplex& g, int i, int j);
/// Gr^i_{second} Gr^j_{first} of a bifiltered complex.
SubquotientComplex bigraded_piece(const BifilteredComplex& b, int i, int j);

/// The filtration induced on H^l, realized as the chain of cocycle-space
/// subgroups S_p = (cocycles n F^p) + coboundaries. Two induced filtrations
/// agree on H^l exactly when these subgroups agree.
class CohomologyFiltration {
 public:
  CohomologyFiltration(const FilteredComplex& f, int degree);

  int degree() const { return degree_; }
  const QuotientPresentation& cohomology() const { return h_; }
  int window_lo() const { return lo_; }
  int window_hi() const { return lo_ + static_cast<int>(steps_.size()) - 1; }

  /// S_p; cocycles below the window, coboundaries above it.
  const Subgroup& step(int p) const;
  /// Class of the p-th induced filtration subgroup of H^l (S_p modulo
  /// coboundaries).
  AbelianGroup piece(int p) const;
  /// Class of the graded quotient S_p / S_{p+1}.
  AbelianGroup graded(int p) const;

 private:
  int degree_;
  Coefficients coeffs_;
  QuotientPresentation h_;
  int lo_;
  std::vector<Subgroup> steps_;
};

CohomologyFiltration induced_filtration_on_cohomology(const FilteredComplex& f,
                                                      int degree);

}  // namespace sseq
