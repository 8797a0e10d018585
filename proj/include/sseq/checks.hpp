#pragma once

#include "sseq/spectral.hpp"

namespace sseq {

/// One offending cohomology group of a vanishing condition.
struct VanishingViolation {
  int r;
  int a;
  int b;  // unused (0) for single-index conditions
  AbelianGroup offending;
};

struct VanishingReport {
  std::string condition;
  std::vector<VanishingViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Concentration condition for a bifiltered complex (P = first, F = second):
/// H^r(Gr^a_F Gr^b_P L) = 0 whenever r != a - b.
VanishingReport check_sta(const BifilteredComplex& b);

/// Which side of a cellular resolution the condition models: `left` is the
/// ordinary-cohomology flavor, `right` the compact-supports flavor realized
/// on a compactification-pair complex. The predicate is concentration of
/// H^r(Gr^p) in r = p either way.
enum class CellularSide { left, right };

VanishingReport check_cellular_vanishing(const FilteredComplex& f,
                                         CellularSide side);

struct PEqualsDecReport {
  bool precondition_holds = false;  // (sta) for the given (L, P, F)
  VanishingReport sta;

  bool abutment_equal = false;
  struct FiltrationMismatch {
    int degree;
    int p;
  };
  std::vector<FiltrationMismatch> filtration_mismatches;

  bool pages_match = false;
  struct PageMismatch {
    int r, p, q;
    AbelianGroup p_side, dec_side;
  };
  std::vector<PageMismatch> page_mismatches;

  /// Set when one filtration contains the other stepwise; then the identity
  /// induces maps of pages and those maps are checked to be isomorphisms
  /// commuting with d_1.
  bool comparable = false;
  bool induced_maps_iso = false;
  bool d1_commutes = false;
  std::vector<std::string> comparison_failures;

  bool pass() const {
    return precondition_holds && abutment_equal && pages_match &&
           (!comparable || (induced_maps_iso && d1_commutes));
  }
};

/// Mechanical consequences of the key bifiltered-complex proposition: under
/// (sta), the P-induced and Dec(F)-induced filtrations on every H^l agree as
/// subgroups and the two spectral sequences agree pagewise. Refuses (throws
/// input_error) when the precondition fails, pointing at the (sta) report.
PEqualsDecReport check_p_equals_decf(const BifilteredComplex& b,
                                     int max_page = -1);

/// The (sta) report for (L, Dec(F), F); a universal property of decalage.
VanishingReport check_lmlu(const FilteredComplex& f);

}  // namespace sseq
