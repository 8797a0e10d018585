#include "sseq/scenario.hpp"

#include <fstream>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

namespace sseq {

namespace {

struct ScenarioContext {
  std::filesystem::path dir;
  std::string name;
  Coefficients coeffs;

  // abstract documents
  std::optional<Document> document;

  // simplicial model
  std::optional<SheafModel> model;
  std::map<std::string, ClosedSubcomplexFlag> flags;
  std::optional<FlaggedFiltration> flag_f;
  std::optional<FilteredComplex> p_filtration;

  // map scenario
  std::optional<SimplicialMap> map;
  std::optional<ClosedSubcomplexFlag> target_flag;

  const FilteredComplex* filtration_named(const std::string& n) const {
    if (document && document->has(n)) return &document->named(n);
    if (n == "F" && flag_f) return &flag_f->filtration;
    if (n == "P" && p_filtration) return &*p_filtration;
    return nullptr;
  }

  const FilteredComplex& require(const std::string& n) const {
    const FilteredComplex* f = filtration_named(n);
    if (!f)
      throw input_error("scenario provides no filtration named \"" + n + "\"");
    return *f;
  }
};

ScenarioContext load_context(const std::filesystem::path& scenario_path,
                             const json& j, const RunOptions& opts) {
  ScenarioContext ctx;
  ctx.dir = scenario_path.parent_path();
  ctx.name = j.value("name", scenario_path.stem().string());
  ctx.coeffs = opts.coefficients;
  if (j.value("coefficients", "") == std::string("rat"))
    ctx.coeffs = Coefficients::rationals;

  if (j.contains("document"))
    ctx.document =
        load_document(ctx.dir / j["document"].get<std::string>(), ctx.coeffs);

  if (j.contains("complex")) {
    std::ifstream in(ctx.dir / j["complex"].get<std::string>());
    if (!in)
      throw input_error("cannot open complex file " +
                        j["complex"].get<std::string>());
    SimplicialComplexPtr x = simplicial_from_text(in);
    CellularSheafPtr sheaf;
    if (j.contains("sheaf")) {
      if (j["sheaf"].is_string()) {
        json sj = json::parse(read_file(ctx.dir / j["sheaf"].get<std::string>()));
        sheaf = sheaf_from_json(sj, x);
      } else {
        sheaf = sheaf_from_json(j["sheaf"], x);
      }
    } else {
      sheaf = std::make_shared<CellularSheaf>(CellularSheaf::constant(x, 1));
    }
    ctx.model = build_sheaf_cochains(x, sheaf, ctx.coeffs);

    if (j.contains("flags")) {
      for (auto it = j["flags"].begin(); it != j["flags"].end(); ++it) {
        if (it.value().is_object() && it.value().value("skeletal", false)) {
          ctx.flags.emplace(it.key(), skeletal_flag(x, x->dimension()));
          continue;
        }
        std::ifstream fin(ctx.dir / it.value().get<std::string>());
        if (!fin)
          throw input_error("cannot open flag file " +
                            it.value().get<std::string>());
        ctx.flags.emplace(it.key(), flag_from_text(fin, x));
      }
    }
    if (ctx.flags.count("Y"))
      ctx.flag_f = flag_filtration_F(*ctx.model, ctx.flags.at("Y"));

    if (j.contains("P")) {
      json pj = json::parse(read_file(ctx.dir / j["P"].get<std::string>()));
      ctx.p_filtration = filtration_from_json(pj, ctx.model->complex);
    }

    if (j.contains("map")) {
      const json& mj = j["map"];
      std::ifstream tin(ctx.dir / mj["target"].get<std::string>());
      if (!tin)
        throw input_error("cannot open map target " +
                          mj["target"].get<std::string>());
      SimplicialComplexPtr target = simplicial_from_text(tin);
      json vm = mj.contains("vertex_map_file")
                    ? json::parse(read_file(
                          ctx.dir / mj["vertex_map_file"].get<std::string>()))
                    : mj;
      ctx.map = map_from_json(vm, x, target);
      if (mj.contains("flag")) {
        std::ifstream fin(ctx.dir / mj["flag"].get<std::string>());
        if (!fin)
          throw input_error("cannot open target flag " +
                            mj["flag"].get<std::string>());
        ctx.target_flag = flag_from_text(fin, target);
      }
    }
  }
  return ctx;
}

ojson run_one_check(const ScenarioContext& ctx, const std::string& name,
                    const RunOptions& opts, bool& pass) {
  ojson out;
  if (name == "validate") {
    ojson violations = ojson::array();
    auto collect = [&](const FilteredComplex& f, const std::string& fname) {
      for (const auto& v : f.validate()) {
        std::ostringstream os;
        os << fname << " p=" << v.p << " degree=" << v.degree << ": " << v.what;
        violations.push_back(os.str());
      }
    };
    if (ctx.document) {
      for (const auto& v : ctx.document->complex->validate())
        violations.push_back("complex degree " + std::to_string(v.degree) +
                             ": " + v.what);
      for (const auto& [n, f] : ctx.document->filtrations) collect(f, n);
    }
    if (ctx.flag_f) collect(ctx.flag_f->filtration, "F");
    if (ctx.p_filtration) collect(*ctx.p_filtration, "P");
    pass = violations.empty();
    out["pass"] = pass;
    out["violations"] = std::move(violations);
    return out;
  }
  if (name == "cohomology") {
    const CochainComplex& k =
        ctx.model ? *ctx.model->complex : *ctx.document->complex;
    for (int l = k.min_degree(); l <= k.max_degree(); ++l)
      out[std::to_string(l)] = group_to_json(k.cohomology(l));
    pass = true;
    return out;
  }
  if (name == "sta") {
    BifilteredComplex bi(ctx.require("P"), ctx.require("F"));
    VanishingReport r = check_sta(bi);
    pass = r.pass();
    return vanishing_report_to_json(r);
  }
  if (name == "lmlu") {
    VanishingReport r = check_lmlu(ctx.require("F"));
    pass = r.pass();
    return vanishing_report_to_json(r);
  }
  if (name == "pdec") {
    try {
      BifilteredComplex bi(ctx.require("P"), ctx.require("F"));
      PEqualsDecReport r = check_p_equals_decf(bi, opts.max_page);
      pass = r.pass();
      return pdec_to_json(r);
    } catch (const input_error& e) {
      pass = false;
      out["pass"] = false;
      out["refused"] = true;
      out["error"] = e.what();
      return out;
    }
  }
  if (name == "cellular") {
    const FilteredComplex* f = ctx.filtration_named("F");
    FilteredComplex shifted;
    if (ctx.flag_f) {
      shifted = shift_filtration(ctx.flag_f->filtration, ctx.flag_f->flag.depth());
      f = &shifted;
    } else if (!f && ctx.document && ctx.document->has("filtration")) {
      f = &ctx.document->named("filtration");
    }
    if (!f) throw input_error("cellular check needs a filtration");
    VanishingReport r = check_cellular_vanishing(*f, CellularSide::left);
    pass = r.pass();
    return vanishing_report_to_json(r);
  }
  if (name == "dec-reindex") {
    DecReindexReport r = check_dec_reindex(ctx.require("F"), opts.max_page);
    pass = r.pass;
    return dec_reindex_to_json(r);
  }
  if (name == "ker-formula") {
    if (!ctx.flag_f) throw input_error("ker-formula needs a flag scenario");
    KerFormulaReport r = check_flag_ker_formula(*ctx.flag_f);
    pass = r.pass;
    return ker_formula_to_json(r);
  }
  if (name == "e1-triples") {
    if (!ctx.flag_f) throw input_error("e1-triples needs a flag scenario");
    TripleReport r = check_e1_triples(*ctx.flag_f);
    pass = r.pass;
    return triples_to_json(r);
  }
  if (name == "abutment") {
    pass = true;
    for (const char* n : {"filtration", "P", "F", "G"}) {
      const FilteredComplex* f = ctx.filtration_named(n);
      if (!f) continue;
      SpectralSequence ss(*f, opts.max_page);
      bool ok = ss.internal_check_failures().empty() &&
                ss.compare_einfty_with_abutment().empty();
      pass = pass && ok;
      ojson one = abutment_to_json(ss);
      one["einftyMatchesGraded"] = ok;
      out[n] = std::move(one);
    }
    if (out.empty()) throw input_error("abutment check needs a filtration");
    return out;
  }
  if (name == "pages") {
    SpectralSequence ss(ctx.require("F"), opts.max_page);
    pass = ss.internal_check_failures().empty();
    return pages_to_json(ss, false);
  }
  if (name == "leray") {
    if (!ctx.map || !ctx.target_flag || !ctx.model)
      throw input_error("leray needs a simplicial map with a target flag");
    PushforwardComparison r = pushforward_flag_comparison(
        *ctx.map, ctx.model->sheaf, *ctx.target_flag, ctx.coeffs);
    pass = r.pass;
    return pushforward_to_json(r);
  }
  throw input_error("unknown check: " + name);
}

}  // namespace

ScenarioResult run_scenario(const std::filesystem::path& scenario_path,
                            const RunOptions& opts) {
  ScenarioResult result;
  std::string bytes;
  json j;
  try {
    bytes = read_file(scenario_path);
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    result.exit_code = 2;
    result.pass = false;
    result.lines.push_back(std::string("[ERROR] ") + e.what());
    return result;
  } catch (const input_error& e) {
    result.exit_code = 2;
    result.pass = false;
    result.lines.push_back(std::string("[ERROR] ") + e.what());
    return result;
  }

  try {
    ScenarioContext ctx = load_context(scenario_path, j, opts);
    result.report["name"] = ctx.name;
    result.report["inputHash"] = content_hash(bytes);
    ojson results;
    bool all_pass = true;
    if (j.contains("checks")) {
      for (const auto& c : j["checks"]) {
        const std::string name = c.get<std::string>();
        bool pass = false;
        results[name] = run_one_check(ctx, name, opts, pass);
        all_pass = all_pass && pass;
        result.lines.push_back(std::string(pass ? "[PASS] " : "[FAIL] ") +
                               name);
      }
    }

    if (j.contains("expected")) {
      json expected =
          json::parse(read_file(ctx.dir / j["expected"].get<std::string>()));
      std::string mismatch;
      bool ok = json_subset(expected, json::parse(results.dump()), &mismatch);
      ojson cmp;
      cmp["pass"] = ok;
      if (!ok) cmp["mismatch"] = mismatch;
      results["expected"] = std::move(cmp);
      all_pass = all_pass && ok;
      result.lines.push_back(std::string(ok ? "[PASS] " : "[FAIL] ") +
                             "expected-results");
    }

    result.report["results"] = std::move(results);
    result.report["pass"] = all_pass;
    result.pass = all_pass;
    result.exit_code = all_pass ? 0 : 1;
  } catch (const input_error& e) {
    result.exit_code = 2;
    result.pass = false;
    result.lines.push_back(std::string("[ERROR] ") + e.what());
    return result;
  }

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream out(opts.out_dir /
                      (result.report["name"].get<std::string>() +
                       ".report.json"));
    out << result.report.dump(2) << "\n";
  }
  return result;
}

namespace {

/// Runs fn(i) for i in [0, count) on `jobs` threads, collecting results in
/// index order so reports stay deterministic.
std::vector<ojson> parallel_ordered(int count, int jobs,
                                    const std::function<ojson(int)>& fn) {
  std::vector<ojson> results(static_cast<std::size_t>(count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i)
      results[static_cast<std::size_t>(i)] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      results[static_cast<std::size_t>(i)] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

ojson element_failure(std::uint64_t index, const std::string& what) {
  ojson out;
  out["index"] = index;
  out["what"] = what;
  return out;
}

}  // namespace

CorpusCheckResult run_corpus_check(const std::string& name, std::uint64_t seed,
                                   int count, const CorpusParams& params,
                                   int jobs, int max_page) {
  auto one = [&](int i) -> ojson {
    CorpusElement el =
        corpus_element(seed, static_cast<std::uint64_t>(i), params);
    if (name == "dec-reindex") {
      DecReindexReport r = check_dec_reindex(el.f, max_page);
      if (r.pass) return {};
      ojson f = element_failure(el.index, "reindex identity failed");
      f["detail"] = dec_reindex_to_json(r);
      return f;
    }
    if (name == "lmlu") {
      VanishingReport r = check_lmlu(el.f);
      if (r.pass()) return {};
      ojson f = element_failure(el.index, "(sta) violated for (L, Dec F, F)");
      f["detail"] = vanishing_report_to_json(r);
      return f;
    }
    if (name == "pdec") {
      BifilteredComplex bi(decale(el.f), el.f);
      PEqualsDecReport r = check_p_equals_decf(bi, max_page);
      if (r.pass()) return {};
      ojson f = element_failure(el.index, "P = Dec(F) consequences failed");
      f["detail"] = pdec_to_json(r);
      return f;
    }
    if (name == "zassenhaus") {
      for (int a = el.f.window_lo() - 1; a <= el.f.window_hi(); ++a)
        for (int b = el.g.window_lo() - 1; b <= el.g.window_hi(); ++b)
          if (!(bigraded_piece(el.f, el.g, a, b) ==
                bigraded_piece(el.g, el.f, b, a)))
            return element_failure(el.index,
                                   "bigraded symmetry failed at (" +
                                       std::to_string(a) + "," +
                                       std::to_string(b) + ")");
      return {};
    }
    if (name == "diagonal-sum") {
      FilteredComplex delta = diagonal(el.f, el.g);
      for (int p = delta.window_lo() - 1; p <= delta.window_hi(); ++p)
        for (int l = el.complex->min_degree(); l <= el.complex->max_degree();
             ++l) {
          std::vector<AbelianGroup> parts;
          for (int a = el.f.window_lo() - 1; a <= el.f.window_hi() + 1; ++a)
            parts.push_back(bigraded_piece(el.f, el.g, a, p - a).group_at(l));
          if (!(graded_piece(delta, p).group_at(l) == direct_sum(parts)))
            return element_failure(el.index,
                                   "diagonal graded piece is not the sum at p=" +
                                       std::to_string(p) + ", degree " +
                                       std::to_string(l));
        }
      return {};
    }
    if (name == "ker-formula" || name == "e1-triples") {
      Rng rng(seed * 0x2545f4914f6cdd1dULL + static_cast<std::uint64_t>(i));
      auto x = random_two_complex(rng);
      auto flag = random_flag(rng, x);
      auto sheaf = std::make_shared<CellularSheaf>(CellularSheaf::constant(x, 1));
      auto ff = flag_filtration_F(build_sheaf_cochains(x, sheaf), flag);
      if (name == "ker-formula") {
        KerFormulaReport r = check_flag_ker_formula(ff);
        if (r.pass) return {};
        ojson f = element_failure(el.index, "ker formula failed");
        f["detail"] = ker_formula_to_json(r);
        return f;
      }
      TripleReport r = check_e1_triples(ff);
      if (r.pass) return {};
      ojson f = element_failure(el.index, "e1/triples comparison failed");
      f["detail"] = triples_to_json(r);
      return f;
    }
    throw input_error("unknown corpus check: " + name);
  };

  std::vector<ojson> per_element = parallel_ordered(count, jobs, one);
  CorpusCheckResult out;
  ojson failures = ojson::array();
  for (auto& r : per_element)
    if (!r.is_null()) failures.push_back(std::move(r));
  out.pass = failures.empty();
  out.report["check"] = name;
  out.report["seed"] = seed;
  out.report["count"] = count;
  out.report["failures"] = std::move(failures);
  out.report["pass"] = out.pass;
  return out;
}

}  // namespace sseq
