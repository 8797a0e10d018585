#include "sseq/io.hpp"

#include <fstream>
#include <sstream>

namespace sseq {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
  return os.str();
}

namespace {

constexpr long long kSafeBound = 1LL << 53;

int degree_key(const std::string& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw input_error("bad integer key: " + s);
    return v;
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error("bad integer key: " + s);
  }
}

}  // namespace

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw input_error("bad integer literal: " + j.get<std::string>());
    }
  }
  throw input_error("expected an integer (number or decimal string)");
}

ojson int_to_json(const Int& v) {
  if (v.fits_slong_p()) {
    long x = v.get_si();
    if (x < kSafeBound && x > -kSafeBound) return ojson(x);
  }
  return ojson(v.get_str());
}

IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw input_error("matrix must be an array of rows");
  if (j.size() != rows)
    throw input_error("matrix has " + std::to_string(j.size()) +
                      " rows, expected " + std::to_string(rows));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw input_error("matrix row " + std::to_string(i) + " has wrong size");
    for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = int_from_json(row[k]);
  }
  return m;
}

ojson matrix_to_json(const IntMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson group_to_json(const AbelianGroup& g) {
  ojson out;
  out["freeRank"] = g.free_rank;
  ojson torsion = ojson::array();
  for (const Int& t : g.torsion) torsion.push_back(int_to_json(t));
  out["torsion"] = std::move(torsion);
  return out;
}

ComplexPtr complex_from_json(const json& j, Coefficients c) {
  if (!j.is_object()) throw input_error("complex document must be an object");
  if (!j.contains("degrees") || !j["degrees"].is_array() ||
      j["degrees"].size() != 2)
    throw input_error("complex needs \"degrees\": [min, max]");
  const bool chain = j.value("convention", "cochain") == std::string("chain");
  int lo = j["degrees"][0].get<int>();
  int hi = j["degrees"][1].get<int>();
  if (chain) {
    int nlo = -hi, nhi = -lo;
    lo = nlo;
    hi = nhi;
  }
  if (hi < lo - 1) throw input_error("complex degree range is reversed");

  std::vector<std::size_t> ranks;
  for (int l = lo; l <= hi; ++l) {
    std::size_t r = 0;
    const std::string key = std::to_string(chain ? -l : l);
    if (j.contains("ranks") && j["ranks"].contains(key))
      r = j["ranks"][key].get<std::size_t>();
    ranks.push_back(r);
  }
  std::vector<IntMatrix> diffs;
  for (int l = lo; l < hi; ++l) {
    const std::size_t rows = ranks[static_cast<std::size_t>(l - lo + 1)];
    const std::size_t cols = ranks[static_cast<std::size_t>(l - lo)];
    // chain input: d_m : C_m -> C_{m-1} is the cochain d^{-m}
    const std::string key = std::to_string(chain ? -l : l);
    if (j.contains("differentials") && j["differentials"].contains(key))
      diffs.push_back(matrix_from_json(j["differentials"][key], rows, cols));
    else
      diffs.push_back(IntMatrix(rows, cols));
  }
  auto out = std::make_shared<CochainComplex>(lo, std::move(ranks),
                                              std::move(diffs), c);
  out->ensure_valid();
  return out;
}

ojson complex_to_json(const CochainComplex& k) {
  ojson out;
  out["degrees"] = ojson::array({k.min_degree(), k.max_degree()});
  ojson ranks;
  for (int l = k.min_degree(); l <= k.max_degree(); ++l)
    ranks[std::to_string(l)] = k.rank(l);
  out["ranks"] = std::move(ranks);
  ojson diffs;
  for (int l = k.min_degree(); l < k.max_degree(); ++l)
    diffs[std::to_string(l)] = matrix_to_json(k.differential(l));
  out["differentials"] = std::move(diffs);
  return out;
}

FilteredComplex filtration_from_json(const json& steps_doc, ComplexPtr base) {
  if (!steps_doc.is_object() || !steps_doc.contains("steps"))
    throw input_error("filtration document needs a \"steps\" object");
  const json& steps = steps_doc["steps"];
  std::map<int, json> by_p;
  for (auto it = steps.begin(); it != steps.end(); ++it)
    by_p[degree_key(it.key())] = it.value();
  if (by_p.empty()) {
    const int jump = steps_doc.value("jump", 0);
    return FilteredComplex::trivial(std::move(base), jump);
  }
  const int lo = by_p.begin()->first;
  const int hi = by_p.rbegin()->first;
  std::vector<std::vector<Subgroup>> out;
  for (int p = lo; p <= hi; ++p) {
    auto it = by_p.find(p);
    if (it == by_p.end())
      throw input_error("filtration steps must be contiguous; missing p=" +
                        std::to_string(p));
    std::vector<Subgroup> per_degree;
    for (int l = base->min_degree(); l <= base->max_degree(); ++l) {
      const std::size_t n = base->rank(l);
      if (it->second.is_string()) {
        const std::string& s = it->second.get_ref<const std::string&>();
        if (s == "full")
          per_degree.push_back(base->full_subgroup(l));
        else if (s == "zero")
          per_degree.push_back(base->zero_subgroup(l));
        else
          throw input_error(
              "filtration step must be \"full\", \"zero\" or an object");
        continue;
      }
      const std::string key = std::to_string(l);
      if (!it->second.contains(key)) {
        per_degree.push_back(base->zero_subgroup(l));
        continue;
      }
      const json& cols_json = it->second[key];
      if (cols_json.is_string()) {
        const std::string& s = cols_json.get_ref<const std::string&>();
        if (s == "full")
          per_degree.push_back(base->full_subgroup(l));
        else if (s == "zero")
          per_degree.push_back(base->zero_subgroup(l));
        else
          throw input_error("bad step shorthand: " + s);
        continue;
      }
      if (!cols_json.is_array())
        throw input_error("filtration step generators must be an array");
      IntMatrix gens(n, cols_json.size());
      for (std::size_t col = 0; col < cols_json.size(); ++col) {
        const json& cj = cols_json[col];
        if (!cj.is_array() || cj.size() != n)
          throw input_error("generator column has wrong length at p=" +
                            std::to_string(p) + ", degree " + key);
        for (std::size_t i = 0; i < n; ++i)
          gens.at(i, col) = int_from_json(cj[i]);
      }
      per_degree.push_back(
          Subgroup::from_columns(n, gens, base->coefficients()));
    }
    out.push_back(std::move(per_degree));
  }
  FilteredComplex f(std::move(base), lo, std::move(out));
  f.ensure_valid();
  return f;
}

ojson filtration_to_json(const FilteredComplex& f) {
  ojson steps = ojson::object();
  for (int p = f.window_lo(); p <= f.window_hi(); ++p) {
    ojson per_degree;
    for (int l = f.base().min_degree(); l <= f.base().max_degree(); ++l) {
      Subgroup s = f.step(p, l);
      ojson cols = ojson::array();
      for (std::size_t j = 0; j < s.rank(); ++j) {
        ojson col = ojson::array();
        for (std::size_t i = 0; i < s.ambient_rank(); ++i)
          col.push_back(int_to_json(s.basis().at(i, j)));
        cols.push_back(std::move(col));
      }
      per_degree[std::to_string(l)] = std::move(cols);
    }
    steps[std::to_string(p)] = std::move(per_degree);
  }
  ojson out;
  out["steps"] = std::move(steps);
  // An empty stored window encodes the trivial filtration jumping at hi.
  if (f.window_lo() > f.window_hi()) out["jump"] = f.window_hi();
  return out;
}

const FilteredComplex& Document::named(const std::string& name) const {
  auto it = filtrations.find(name);
  if (it == filtrations.end())
    throw input_error("document has no filtration named \"" + name + "\"");
  return it->second;
}

Document document_from_json(const json& j, Coefficients c) {
  Document d;
  if (!j.is_object() || !j.contains("complex"))
    throw input_error("document needs a \"complex\" object");
  d.complex = complex_from_json(j["complex"], c);
  for (const char* name : {"filtration", "P", "F", "G"})
    if (j.contains(name))
      d.filtrations.emplace(name, filtration_from_json(j[name], d.complex));
  return d;
}

Document load_document(const std::filesystem::path& p, Coefficients c) {
  json j;
  try {
    j = json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw input_error("JSON parse error in " + p.string() + ": " + e.what());
  }
  return document_from_json(j, c);
}

ojson document_to_json(
    const CochainComplex& k,
    const std::vector<std::pair<std::string, const FilteredComplex*>>& filts) {
  ojson out;
  out["complex"] = complex_to_json(k);
  for (const auto& [name, f] : filts) out[name] = filtration_to_json(*f);
  return out;
}

SimplicialComplexPtr simplicial_from_text(std::istream& in) {
  std::vector<std::vector<std::string>> simplices;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> verts;
    std::string tok;
    while (ls >> tok) verts.push_back(tok);
    if (!verts.empty()) simplices.push_back(std::move(verts));
  }
  if (simplices.empty())
    throw input_error("simplicial complex file has no simplices");
  return std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_simplices(simplices));
}

ClosedSubcomplexFlag flag_from_text(std::istream& in, SimplicialComplexPtr x) {
  std::map<int, SimplicialComplex::Mask> steps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string idx_tok;
    if (!(ls >> idx_tok)) continue;
    int idx;
    try {
      idx = std::stoi(idx_tok);
    } catch (const std::exception&) {
      throw input_error("flag file line " + std::to_string(lineno) +
                        ": step index expected first");
    }
    if (idx > -1)
      throw input_error("flag step indices must be negative (Y_0 is implicit)");
    std::vector<std::string> verts;
    std::string tok;
    while (ls >> tok) verts.push_back(tok);
    auto id = x->find_by_labels(verts);
    if (!id)
      throw input_error("flag file line " + std::to_string(lineno) +
                        ": simplex not in the complex");
    auto [it, inserted] = steps.emplace(idx, x->empty_mask());
    it->second[*id] = 1;
  }
  ClosedSubcomplexFlag flag;
  flag.ambient = x;
  if (steps.empty()) return flag;
  const int depth = -steps.begin()->first;
  SimplicialComplex::Mask deeper = x->empty_mask();
  for (int k = depth; k >= 1; --k) {
    auto it = steps.find(-k);
    SimplicialComplex::Mask m =
        it == steps.end() ? x->empty_mask() : it->second;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (deeper[i]) m[i] = 1;  // deeper steps are contained in shallower ones
    m = x->close_mask(std::move(m));
    deeper = m;
    flag.steps.insert(flag.steps.begin(), std::move(m));
  }
  flag.ensure_valid();
  return flag;
}

CellularSheafPtr sheaf_from_json(const json& j, SimplicialComplexPtr x) {
  if (j.is_object() && j.contains("constant"))
    return std::make_shared<CellularSheaf>(CellularSheaf::constant(
        std::move(x), j["constant"].get<std::size_t>()));
  if (!j.is_object() || !j.contains("stalks"))
    throw input_error("sheaf document needs \"constant\" or \"stalks\"");

  auto parse_simplex = [&](const std::string& label) {
    std::istringstream ls(label);
    std::vector<std::string> verts;
    std::string tok;
    while (ls >> tok) verts.push_back(tok);
    auto id = x->find_by_labels(verts);
    if (!id) throw input_error("sheaf mentions unknown simplex: " + label);
    return *id;
  };

  std::vector<std::size_t> stalks(x->simplex_count(), 0);
  for (auto it = j["stalks"].begin(); it != j["stalks"].end(); ++it)
    stalks[parse_simplex(it.key())] = it.value().get<std::size_t>();

  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restr;
  if (j.contains("restrictions")) {
    for (auto it = j["restrictions"].begin(); it != j["restrictions"].end();
         ++it) {
      const std::string key = it.key();
      auto bar = key.find('|');
      if (bar == std::string::npos)
        throw input_error("restriction key must be \"face|coface\": " + key);
      std::size_t face = parse_simplex(key.substr(0, bar));
      std::size_t coface = parse_simplex(key.substr(bar + 1));
      restr[{face, coface}] =
          matrix_from_json(it.value(), stalks[coface], stalks[face]);
    }
  }
  auto sheaf = std::make_shared<CellularSheaf>(std::move(x), std::move(stalks),
                                               std::move(restr));
  sheaf->ensure_valid();
  return sheaf;
}

SimplicialMap map_from_json(const json& j, SimplicialComplexPtr source,
                            SimplicialComplexPtr target) {
  if (!j.is_object() || !j.contains("vertex_map"))
    throw input_error("map document needs a \"vertex_map\" object");
  std::vector<int> img(source->vertex_labels().size(), -1);
  for (auto it = j["vertex_map"].begin(); it != j["vertex_map"].end(); ++it) {
    auto s = source->find_by_labels({it.key()});
    auto t = target->find_by_labels({it.value().get<std::string>()});
    if (!s) throw input_error("vertex_map: unknown source vertex " + it.key());
    if (!t)
      throw input_error("vertex_map: unknown target vertex " +
                        it.value().get<std::string>());
    img[static_cast<std::size_t>(source->simplex(*s)[0])] =
        target->simplex(*t)[0];
  }
  for (std::size_t v = 0; v < img.size(); ++v)
    if (img[v] < 0)
      throw input_error("vertex_map: source vertex " +
                        source->vertex_labels()[v] + " unmapped");
  SimplicialMap map{std::move(source), std::move(target), std::move(img)};
  map.ensure_valid();
  return map;
}

ojson vanishing_report_to_json(const VanishingReport& r) {
  ojson out;
  out["condition"] = r.condition;
  out["pass"] = r.pass();
  ojson v = ojson::array();
  for (const auto& viol : r.violations) {
    ojson one;
    one["r"] = viol.r;
    one["a"] = viol.a;
    one["b"] = viol.b;
    one["group"] = group_to_json(viol.offending);
    v.push_back(std::move(one));
  }
  out["violations"] = std::move(v);
  return out;
}

ojson dec_reindex_to_json(const DecReindexReport& r) {
  ojson out;
  out["pass"] = r.pass;
  out["pages"] = ojson::array({r.first_page, r.last_page});
  ojson pm = ojson::array();
  for (const auto& m : r.page_mismatches) {
    ojson one;
    one["r"] = m.r;
    one["p"] = m.p;
    one["q"] = m.q;
    one["decSide"] = group_to_json(m.dec_side);
    one["shiftedSide"] = group_to_json(m.shifted_side);
    pm.push_back(std::move(one));
  }
  out["pageMismatches"] = std::move(pm);
  ojson am = ojson::array();
  for (const auto& m : r.abutment_mismatches) {
    ojson one;
    one["degree"] = m.degree;
    one["p"] = m.p;
    am.push_back(std::move(one));
  }
  out["abutmentMismatches"] = std::move(am);
  return out;
}

ojson pdec_to_json(const PEqualsDecReport& r) {
  ojson out;
  out["pass"] = r.pass();
  out["preconditionHolds"] = r.precondition_holds;
  out["sta"] = vanishing_report_to_json(r.sta);
  out["abutmentEqual"] = r.abutment_equal;
  ojson fm = ojson::array();
  for (const auto& m : r.filtration_mismatches) {
    ojson one;
    one["degree"] = m.degree;
    one["p"] = m.p;
    fm.push_back(std::move(one));
  }
  out["filtrationMismatches"] = std::move(fm);
  out["pagesMatch"] = r.pages_match;
  ojson pm = ojson::array();
  for (const auto& m : r.page_mismatches) {
    ojson one;
    one["r"] = m.r;
    one["p"] = m.p;
    one["q"] = m.q;
    one["pSide"] = group_to_json(m.p_side);
    one["decSide"] = group_to_json(m.dec_side);
    pm.push_back(std::move(one));
  }
  out["pageMismatches"] = std::move(pm);
  out["comparable"] = r.comparable;
  if (r.comparable) {
    out["inducedMapsIso"] = r.induced_maps_iso;
    out["d1Commutes"] = r.d1_commutes;
  }
  if (!r.comparison_failures.empty())
    out["comparisonFailures"] = r.comparison_failures;
  return out;
}

ojson ker_formula_to_json(const KerFormulaReport& r) {
  ojson out;
  out["pass"] = r.pass;
  ojson mm = ojson::array();
  for (const auto& m : r.mismatches) {
    ojson one;
    one["degree"] = m.degree;
    one["p"] = m.p;
    mm.push_back(std::move(one));
  }
  out["mismatches"] = std::move(mm);
  return out;
}

ojson triples_to_json(const TripleReport& r) {
  ojson out;
  out["pass"] = r.pass;
  ojson cm = ojson::array();
  for (const auto& m : r.cell_mismatches) {
    ojson one;
    one["p"] = m.p;
    one["q"] = m.q;
    one["e1"] = group_to_json(m.e1);
    one["relative"] = group_to_json(m.relative);
    cm.push_back(std::move(one));
  }
  out["cellMismatches"] = std::move(cm);
  ojson mm = ojson::array();
  for (const auto& m : r.map_mismatches) {
    ojson one;
    one["p"] = m.p;
    one["q"] = m.q;
    one["what"] = m.what;
    mm.push_back(std::move(one));
  }
  out["mapMismatches"] = std::move(mm);
  return out;
}

ojson pushforward_to_json(const PushforwardComparison& r) {
  ojson out;
  out["pass"] = r.pass;
  ojson mm = ojson::array();
  for (const auto& m : r.mismatches) {
    ojson one;
    one["degree"] = m.degree;
    one["p"] = m.p;
    mm.push_back(std::move(one));
  }
  out["mismatches"] = std::move(mm);
  ojson ranks;
  for (const auto& [l, per_step] : r.shifted_graded_ranks) {
    ojson row;
    for (const auto& [p, rank] : per_step) row[std::to_string(p)] = rank;
    ranks[std::to_string(l)] = std::move(row);
  }
  out["shiftedGradedRanks"] = std::move(ranks);
  return out;
}

ojson pages_to_json(const SpectralSequence& ss, bool with_generators) {
  ojson pages;
  for (int r = 0; r <= ss.max_computed_page(); ++r) {
    ojson page;
    for (auto [p, q] : ss.support(r)) {
      const QuotientPresentation* cell = ss.cell(r, p, q);
      ojson one = group_to_json(cell->group());
      if (with_generators) {
        ojson gens = ojson::array();
        for (const auto& rep : cell->generator_reps()) {
          ojson col = ojson::array();
          for (const Int& v : rep) col.push_back(int_to_json(v));
          gens.push_back(std::move(col));
        }
        one["generators"] = std::move(gens);
      }
      page[std::to_string(p) + "," + std::to_string(q)] = std::move(one);
    }
    pages[std::to_string(r)] = std::move(page);
  }
  ojson diffs;
  for (int r = 0; r <= ss.max_computed_page(); ++r) {
    ojson page;
    for (auto [p, q] : ss.support(r)) {
      IntMatrix m = ss.differential_matrix(r, p, q);
      if (m.rows() == 0 || m.is_zero()) continue;
      page[std::to_string(p) + "," + std::to_string(q)] = matrix_to_json(m);
    }
    if (!page.empty()) diffs[std::to_string(r)] = std::move(page);
  }
  ojson out;
  out["pages"] = std::move(pages);
  out["differentials"] = std::move(diffs);
  out["stabilizationPage"] = ss.stabilization_page();
  return out;
}

ojson abutment_to_json(const SpectralSequence& ss) {
  ojson out;
  const CochainComplex& k = ss.filtration().base();
  for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
    CohomologyFiltration a = ss.abutment(l);
    ojson row;
    row["cohomology"] = group_to_json(a.cohomology().group());
    ojson steps;
    for (int p = a.window_lo() - 1; p <= a.window_hi(); ++p)
      steps[std::to_string(p)] = group_to_json(a.piece(p));
    row["steps"] = std::move(steps);
    ojson graded;
    for (int p = a.window_lo() - 1; p <= a.window_hi(); ++p) {
      AbelianGroup g = a.graded(p);
      if (!g.is_trivial()) graded[std::to_string(p)] = group_to_json(g);
    }
    row["graded"] = std::move(graded);
    out[std::to_string(l)] = std::move(row);
  }
  return out;
}

std::string page_tsv(const SpectralSequence& ss, int r) {
  auto cells = ss.support(r);
  int plo = 0, phi = -1, qlo = 0, qhi = -1;
  bool any = false;
  for (auto [p, q] : cells) {
    if (!any) {
      plo = phi = p;
      qlo = qhi = q;
      any = true;
    } else {
      plo = std::min(plo, p);
      phi = std::max(phi, p);
      qlo = std::min(qlo, q);
      qhi = std::max(qhi, q);
    }
  }
  std::ostringstream os;
  os << "page " << r << "\n";
  os << "q\\p";
  for (int p = plo; p <= phi; ++p) os << "\t" << p;
  os << "\n";
  for (int q = qhi; q >= qlo; --q) {
    os << q;
    for (int p = plo; p <= phi; ++p)
      os << "\t" << ss.group(r, p, q).to_string();
    os << "\n";
  }
  return os.str();
}

bool json_subset(const json& expected, const json& actual,
                 std::string* first_mismatch) {
  if (expected.is_object()) {
    if (!actual.is_object()) {
      if (first_mismatch) *first_mismatch = "expected an object";
      return false;
    }
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) {
        if (first_mismatch) *first_mismatch = "missing key " + it.key();
        return false;
      }
      std::string inner;
      if (!json_subset(it.value(), actual[it.key()], &inner)) {
        if (first_mismatch) *first_mismatch = it.key() + "." + inner;
        return false;
      }
    }
    return true;
  }
  if (expected == actual) return true;
  if (first_mismatch)
    *first_mismatch = "expected " + expected.dump() + ", got " + actual.dump();
  return false;
}

}  // namespace sseq
