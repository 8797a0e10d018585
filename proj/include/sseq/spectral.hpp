#pragma once

#include <map>
#include <tuple>

#include "sseq/filtration.hpp"

namespace sseq {

/// Spectral sequence of a filtered complex, by the approximate-cycle
/// construction:
///   Z_r^{p,q} = { x in F^p K^{p+q} : d x in F^{p+r} K^{p+q+1} },
///   E_r^{p,q} = Z_r^{p,q} / ( Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2} ),
/// with d_r induced by d. All cells are exact presentations; pages are
/// computed up to the structural bound past which every Z and boundary group
/// is provably constant, so the last computed page is E_infinity.
class SpectralSequence {
 public:
  explicit SpectralSequence(FilteredComplex f, int max_page = -1);

  const FilteredComplex& filtration() const { return f_; }

  /// Pages r >= structural_bound() are all equal (the filtration is finite).
  int structural_bound() const { return structural_; }
  /// Pages computed: 0 .. max_computed_page().
  int max_computed_page() const { return computed_; }
  /// Earliest page from which all later computed pages agree and all later
  /// differentials vanish.
  int stabilization_page() const { return stabilization_; }

  /// Group class at a cell; r is clamped into the computed range (pages are
  /// constant beyond it when the full range was computed).
  AbelianGroup group(int r, int p, int q) const;
  /// Presentation of a nonzero cell, or nullptr.
  const QuotientPresentation* cell(int r, int p, int q) const;
  /// Matrix of d_r : E_r^{p,q} -> E_r^{p+r,q-r+1} in presentation
  /// coordinates (target coordinate count x source generator count).
  IntMatrix differential_matrix(int r, int p, int q) const;
  std::vector<std::pair<int, int>> support(int r) const;

  int p_lo() const { return plo_; }
  int p_hi() const { return phi_; }

  /// Internal consistency: d_r after d_r vanishes in coordinates, and
  /// E_{r+1} matches ker d_r / im d_r recomputed by subgroup arithmetic.
  /// Nonempty output means an engine bug, never bad input.
  const std::vector<std::string>& internal_check_failures() const {
    return check_failures_;
  }

  CohomologyFiltration abutment(int degree) const;

  struct AbutmentMismatch {
    int degree;
    int p;
    AbelianGroup einfty;
    AbelianGroup graded;
  };
  /// E_infinity cells against the graded pieces of the induced filtration.
  std::vector<AbutmentMismatch> compare_einfty_with_abutment() const;

 private:
  using Key = std::tuple<int, int, int>;  // (r, p, q)

  const Subgroup& approx_cycles(int p, int n, int r) const;
  const Subgroup& cycle_image(int p, int n, int r) const;  // d(Z_r^{p, n})
  Subgroup boundary_group(int p, int n, int r) const;

  void compute(int max_page);

  FilteredComplex f_;
  int plo_ = 0, phi_ = -1;
  int structural_ = 1;
  int computed_ = 0;
  int stabilization_ = 0;
  std::map<Key, QuotientPresentation> cells_;
  std::map<Key, IntMatrix> diffs_;
  std::vector<std::string> check_failures_;
  mutable std::map<Key, Subgroup> z_cache_;   // (p, n, r)
  mutable std::map<Key, Subgroup> dz_cache_;  // (p, n, r)
};

/// Both halves of the shifted-filtration identity:
/// pages  E_r^{p,q}(Dec F) = E_{r+1}^{2p+q,-p}(F) as group classes, and
/// abutment  Dec(F)^p H^l = F^{p+l} H^l as literal subgroups.
struct DecReindexReport {
  bool pass = true;
  int first_page = 1;
  int last_page = 1;

  struct PageMismatch {
    int r, p, q;  // coordinates on the Dec side
    AbelianGroup dec_side;
    AbelianGroup shifted_side;
  };
  std::vector<PageMismatch> page_mismatches;

  struct AbutmentMismatch {
    int degree;
    int p;
  };
  std::vector<AbutmentMismatch> abutment_mismatches;
};

DecReindexReport check_dec_reindex(const FilteredComplex& f, int max_page = -1);

}  // namespace sseq
