#pragma once

#include <filesystem>
#include <istream>

#include <json.hpp>

#include "sseq/checks.hpp"
#include "sseq/sheaf_model.hpp"

namespace sseq {

using json = nlohmann::json;
/// Reports are emitted with insertion-ordered keys so identical inputs give
/// byte-identical files.
using ojson = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& p);
/// FNV-1a 64-bit content hash, hex encoded; embedded in every report.
std::string content_hash(std::string_view bytes);

/// Integers round-trip as JSON numbers while they fit 53 bits, as decimal
/// strings beyond that.
Int int_from_json(const json& j);
ojson int_to_json(const Int& v);

IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);
ojson matrix_to_json(const IntMatrix& m);

ojson group_to_json(const AbelianGroup& g);

ComplexPtr complex_from_json(const json& j, Coefficients c);
ojson complex_to_json(const CochainComplex& k);

FilteredComplex filtration_from_json(const json& steps, ComplexPtr base);
ojson filtration_to_json(const FilteredComplex& f);

/// A parsed abstract input document: one complex plus named filtrations
/// ("filtration", "P", "F", "G" keys when present).
struct Document {
  ComplexPtr complex;
  std::map<std::string, FilteredComplex> filtrations;

  const FilteredComplex& named(const std::string& name) const;
  bool has(const std::string& name) const {
    return filtrations.count(name) != 0;
  }
};

Document document_from_json(const json& j, Coefficients c);
Document load_document(const std::filesystem::path& p, Coefficients c);
ojson document_to_json(const CochainComplex& k,
                       const std::vector<std::pair<std::string, const FilteredComplex*>>& filts);

/// Text format: one simplex per line, whitespace-separated vertex labels;
/// '#' starts a comment. Faces are added automatically.
SimplicialComplexPtr simplicial_from_text(std::istream& in);
/// Text format: each line is "<step index> <vertex labels...>" putting one
/// simplex (and its faces) into flag step Y_{index}, index <= -1.
ClosedSubcomplexFlag flag_from_text(std::istream& in, SimplicialComplexPtr x);

/// {"constant": r} or {"stalks": {"a b": r, ...}, "restrictions":
/// {"a|a b": [[...]], ...}} with faces listed by their space-separated labels.
CellularSheafPtr sheaf_from_json(const json& j, SimplicialComplexPtr x);

/// {"vertex_map": {"source label": "target label", ...}}
SimplicialMap map_from_json(const json& j, SimplicialComplexPtr source,
                            SimplicialComplexPtr target);

// Report fragments.
ojson vanishing_report_to_json(const VanishingReport& r);
ojson dec_reindex_to_json(const DecReindexReport& r);
ojson pdec_to_json(const PEqualsDecReport& r);
ojson ker_formula_to_json(const KerFormulaReport& r);
ojson triples_to_json(const TripleReport& r);
ojson pushforward_to_json(const PushforwardComparison& r);
ojson pages_to_json(const SpectralSequence& ss, bool with_generators);
ojson abutment_to_json(const SpectralSequence& ss);
std::string page_tsv(const SpectralSequence& ss, int r);

/// Every leaf of `expected` must exist and compare equal in `actual`.
bool json_subset(const json& expected, const json& actual,
                 std::string* first_mismatch = nullptr);

}  // namespace sseq
