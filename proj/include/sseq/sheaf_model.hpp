#pragma once

#include "sseq/checks.hpp"
#include "sseq/simplicial.hpp"

namespace sseq {

/// Cochain realization of a cellular sheaf on a simplicial complex:
/// C^l = direct sum of stalks over l-simplices, with the signed restriction
/// differential. Keeps the block layout so that subcomplex conditions become
/// coordinate subgroups.
struct SheafModel {
  SimplicialComplexPtr space;
  CellularSheafPtr sheaf;
  ComplexPtr complex;
  std::vector<std::size_t> block_offset;  // per simplex id, within its degree

  /// Cochains vanishing on a closed subcomplex (a subcomplex of the cochain
  /// complex because faces of masked simplices are masked).
  Subgroup vanishing_subgroup(int l, const SimplicialComplex::Mask& closed) const;
  /// Cochains supported on the given simplices.
  Subgroup supported_subgroup(int l, const SimplicialComplex::Mask& allowed) const;
};

SheafModel build_sheaf_cochains(SimplicialComplexPtr x, CellularSheafPtr s,
                                Coefficients c = Coefficients::integers);

/// A filtration remembering the simplicial data it came from.
struct FlaggedFiltration {
  SheafModel model;
  ClosedSubcomplexFlag flag;
  FilteredComplex filtration;
};

/// F^p = cochains vanishing on Y_{p-1}; type within [-depth, 0].
FlaggedFiltration flag_filtration_F(const SheafModel& m,
                                    const ClosedSubcomplexFlag& flag);

/// Support filtration on the barycentric subdivision: G^p = cochains
/// supported on the open star of the subdivided copy of Z_{-p}. Its
/// cohomology computes sections supported near Z_{-p}.
struct SupportFiltration {
  SheafModel subdivided_model;
  Subdivision subdivision;
  FilteredComplex filtration;
};

SupportFiltration support_filtration_G(const SheafModel& m,
                                       const ClosedSubcomplexFlag& flag);

/// Both flag filtrations realized on one subdivided base, ready for the
/// diagonal filtration.
struct DeltaInputs {
  SheafModel subdivided_model;
  Subdivision subdivision;
  FilteredComplex f;  // from the Y flag, subdivided
  FilteredComplex g;  // from the Z flag, star supports
};

DeltaInputs delta_inputs(const SheafModel& m, const ClosedSubcomplexFlag& y,
                         const ClosedSubcomplexFlag& z);

/// Standalone relative cochain complex of the pair (within, within n out):
/// cochains on simplices of `within` vanishing on `out`.
struct RelativeComplex {
  ComplexPtr complex;  // degrees 0..dim
  /// Per degree: ambient coordinate of each local coordinate.
  std::vector<std::vector<std::size_t>> global_index;

  std::vector<Int> extend_by_zero(int l, const std::vector<Int>& local,
                                  std::size_t ambient_rank) const;
  std::vector<Int> project(int l, const std::vector<Int>& ambient) const;
};

RelativeComplex relative_complex(const SheafModel& m,
                                 const SimplicialComplex::Mask& within,
                                 const SimplicialComplex::Mask& out);

/// H^*(X, A) for a closed subcomplex A, one group per degree 0..dim.
std::vector<AbelianGroup> relative_cohomology(
    const SheafModel& m, const SimplicialComplex::Mask& closed_a);

ClosedSubcomplexFlag preimage_flag(const SimplicialMap& f,
                                   const ClosedSubcomplexFlag& on_target);

/// Y_{-p} = (n-p)-skeleton; requires n = dim X.
ClosedSubcomplexFlag skeletal_flag(const SimplicialComplexPtr& x, int n);

/// The flag filtration reindexed so that Gr^p is supported on p-simplices
/// (the degreewise normalization the cellular vanishing predicate expects).
FilteredComplex skeletal_filtration(const SheafModel& m);

/// Abutment of the flag filtration against the restriction-kernel filtration
/// Ker(H^l(X) -> H^l(Y_{p-1})), computed independently.
struct KerFormulaReport {
  bool pass = true;
  struct Mismatch {
    int degree;
    int p;
  };
  std::vector<Mismatch> mismatches;
};

KerFormulaReport check_flag_ker_formula(const FlaggedFiltration& ff);

/// E_1 cells against relative cohomology of consecutive flag pairs, and d_1
/// against the connecting map of the triple (Y_{p+1}, Y_p, Y_{p-1}) computed
/// from relative cochain complexes.
struct TripleReport {
  bool pass = true;
  struct CellMismatch {
    int p, q;
    AbelianGroup e1, relative;
  };
  std::vector<CellMismatch> cell_mismatches;
  struct MapMismatch {
    int p, q;
    std::string what;
  };
  std::vector<MapMismatch> map_mismatches;
};

TripleReport check_e1_triples(const FlaggedFiltration& ff);

/// Leray-style comparison: the abutment of the preimage-flag filtration on
/// H^*(X) against the kernel filtration of restriction to the preimages,
/// computed independently. Also reports the graded ranks of the shifted
/// abutment.
struct PushforwardComparison {
  bool pass = true;
  std::vector<KerFormulaReport::Mismatch> mismatches;
  /// graded free rank of the shifted (decale) abutment per (degree, step)
  std::map<int, std::map<int, std::size_t>> shifted_graded_ranks;
};

PushforwardComparison pushforward_flag_comparison(
    const SimplicialMap& f, const CellularSheafPtr& sheaf_on_source,
    const ClosedSubcomplexFlag& target_flag,
    Coefficients c = Coefficients::integers);

}  // namespace sseq
