// specseq: exact spectral-sequence engine for filtered cochain complexes.
//
// Subcommands map one-to-one onto engine operations; inputs are JSON
// documents (abstract complexes with filtrations) or simplicial bundles
// (text complex + flags + sheaf). Exit codes: 0 success, 1 check failure,
// 2 malformed input.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sseq/scenario.hpp"

using namespace sseq;

namespace {

struct GlobalOpts {
  std::string coefficients = "int";
  std::string out_dir;
  int max_page = -1;
  std::uint64_t seed = 42;
  int count = 200;
  int jobs = 1;

  Coefficients coeffs() const {
    if (coefficients == "int") return Coefficients::integers;
    if (coefficients == "rat") return Coefficients::rationals;
    throw input_error("--coefficients must be int or rat");
  }
  RunOptions run_options() const {
    RunOptions o;
    o.coefficients = coeffs();
    o.max_page = max_page;
    o.jobs = jobs;
    if (!out_dir.empty()) o.out_dir = out_dir;
    return o;
  }
};

void write_or_print(const GlobalOpts& g, const std::string& filename,
                    const std::string& payload) {
  if (g.out_dir.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::filesystem::create_directories(g.out_dir);
  std::ofstream out(std::filesystem::path(g.out_dir) / filename);
  out << payload;
  std::cout << "wrote " << (std::filesystem::path(g.out_dir) / filename).string()
            << "\n";
}

ojson with_hash(ojson body, const std::string& input_bytes) {
  ojson out;
  out["inputHash"] = content_hash(input_bytes);
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

SheafModel load_bundle(const GlobalOpts& g, const std::string& complex_path,
                       const std::string& sheaf_path) {
  std::ifstream in(complex_path);
  if (!in) throw input_error("cannot open " + complex_path);
  SimplicialComplexPtr x = simplicial_from_text(in);
  CellularSheafPtr sheaf;
  if (sheaf_path.empty()) {
    sheaf = std::make_shared<CellularSheaf>(CellularSheaf::constant(x, 1));
  } else {
    sheaf = sheaf_from_json(json::parse(read_file(sheaf_path)), x);
  }
  return build_sheaf_cochains(x, sheaf, g.coeffs());
}

ClosedSubcomplexFlag load_flag(const SimplicialComplexPtr& x,
                               const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  return flag_from_text(in, x);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact spectral sequences of filtered cochain complexes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  if (const char* env = std::getenv("SPECSEQ_OUT")) g.out_dir = env;
  app.add_option("--coefficients", g.coefficients,
                 "coefficient ring: int (default) or rat");
  app.add_option("--out", g.out_dir, "output directory for reports");
  app.add_option("--max-page", g.max_page, "cap on computed pages");
  app.add_option("--seed", g.seed, "seed for corpus generation");
  app.add_option("--jobs", g.jobs, "worker threads for corpus checks");

  std::string in_file, in_complex, in_flag, in_sheaf, check_name, filt_name = "F";
  int page = 1, degree_opt = std::numeric_limits<int>::min();

  auto* validate = app.add_subcommand("validate", "validate a document");
  validate->add_option("file", in_file)->required();

  auto* cohomology = app.add_subcommand("cohomology", "cohomology groups");
  cohomology->add_option("file", in_file)->required();
  cohomology->add_option("--degree", degree_opt, "single degree only");

  auto* ss = app.add_subcommand("ss", "spectral sequence pages");
  ss->add_option("file", in_file)->required();
  ss->add_option("--page", page, "page to print as TSV")->required();
  ss->add_option("--name", filt_name, "filtration name (default F)");

  auto* dec = app.add_subcommand("decale", "shifted filtration");
  dec->add_option("file", in_file)->required();
  dec->add_option("--name", filt_name, "filtration name (default F)");

  auto* diag = app.add_subcommand("diagonal", "diagonal filtration of F and G");
  diag->add_option("file", in_file)->required();

  auto* check = app.add_subcommand("check", "run a named check");
  check->add_option("name", check_name,
                    "sta|pdec|lmlu|cellular|dec-reindex|e1-triples|"
                    "ker-formula|zassenhaus|diagonal-sum")
      ->required();
  check->add_option("file", in_file, "input document (omit for corpus mode)");
  check->add_option("--count", g.count, "corpus size in corpus mode");

  auto* flagf = app.add_subcommand("flag-f", "flag filtration of a bundle");
  flagf->add_option("--complex", in_complex)->required();
  flagf->add_option("--flag", in_flag)->required();
  flagf->add_option("--sheaf", in_sheaf);

  auto* flagg = app.add_subcommand("flag-g", "support filtration of a bundle");
  flagg->add_option("--complex", in_complex)->required();
  flagg->add_option("--flag", in_flag)->required();
  flagg->add_option("--sheaf", in_sheaf);

  auto* leray = app.add_subcommand("leray", "preimage-flag comparison scenario");
  leray->add_option("scenario", in_file)->required();

  auto* run = app.add_subcommand("run", "run a scenario bundle");
  run->add_option("scenario", in_file)->required();

  auto* corpus = app.add_subcommand("random-corpus",
                                    "emit seeded random filtered complexes");
  corpus->add_option("--count", g.count, "number of instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      std::string bytes = read_file(in_file);
      Document d = document_from_json(json::parse(bytes), g.coeffs());
      ojson rep;
      rep["pass"] = true;
      ojson names = ojson::array();
      for (auto& [n, f] : d.filtrations) {
        f.ensure_valid();
        names.push_back(n);
      }
      rep["filtrations"] = std::move(names);
      write_or_print(g, "validate.report.json",
                     with_hash(std::move(rep), bytes).dump(2) + "\n");
      return 0;
    }

    if (cohomology->parsed()) {
      std::string bytes = read_file(in_file);
      Document d = document_from_json(json::parse(bytes), g.coeffs());
      ojson rep;
      const CochainComplex& k = *d.complex;
      if (degree_opt != std::numeric_limits<int>::min()) {
        rep[std::to_string(degree_opt)] = group_to_json(k.cohomology(degree_opt));
      } else {
        for (int l = k.min_degree(); l <= k.max_degree(); ++l)
          rep[std::to_string(l)] = group_to_json(k.cohomology(l));
      }
      write_or_print(g, "cohomology.report.json",
                     with_hash(std::move(rep), bytes).dump(2) + "\n");
      return 0;
    }

    if (ss->parsed()) {
      std::string bytes = read_file(in_file);
      Document d = document_from_json(json::parse(bytes), g.coeffs());
      SpectralSequence seq(d.named(filt_name), std::max(g.max_page, page));
      std::cout << page_tsv(seq, page);
      ojson rep = pages_to_json(seq, true);
      rep["abutment"] = abutment_to_json(seq);
      rep["checks"] = seq.internal_check_failures();
      if (!g.out_dir.empty())
        write_or_print(g, "ss.report.json",
                       with_hash(std::move(rep), bytes).dump(2) + "\n");
      return seq.internal_check_failures().empty() ? 0 : 1;
    }

    if (dec->parsed()) {
      std::string bytes = read_file(in_file);
      Document d = document_from_json(json::parse(bytes), g.coeffs());
      FilteredComplex shifted = decale(d.named(filt_name));
      ojson doc = document_to_json(*d.complex, {{"filtration", &shifted}});
      write_or_print(g, "decale.json", doc.dump(2) + "\n");
      return 0;
    }

    if (diag->parsed()) {
      std::string bytes = read_file(in_file);
      Document d = document_from_json(json::parse(bytes), g.coeffs());
      FilteredComplex delta = diagonal(d.named("F"), d.named("G"));
      ojson doc = document_to_json(*d.complex, {{"filtration", &delta}});
      write_or_print(g, "diagonal.json", doc.dump(2) + "\n");
      return 0;
    }

    if (check->parsed()) {
      if (!in_file.empty()) {
        std::string bytes = read_file(in_file);
        Document d = document_from_json(json::parse(bytes), g.coeffs());
        bool pass = false;
        ojson rep;
        if (check_name == "sta") {
          VanishingReport r =
              check_sta(BifilteredComplex(d.named("P"), d.named("F")));
          pass = r.pass();
          rep = vanishing_report_to_json(r);
        } else if (check_name == "lmlu") {
          VanishingReport r = check_lmlu(d.named("F"));
          pass = r.pass();
          rep = vanishing_report_to_json(r);
        } else if (check_name == "pdec") {
          PEqualsDecReport r = check_p_equals_decf(
              BifilteredComplex(d.named("P"), d.named("F")), g.max_page);
          pass = r.pass();
          rep = pdec_to_json(r);
        } else if (check_name == "cellular") {
          const std::string n = d.has("filtration") ? "filtration" : "F";
          VanishingReport r =
              check_cellular_vanishing(d.named(n), CellularSide::left);
          pass = r.pass();
          rep = vanishing_report_to_json(r);
        } else if (check_name == "dec-reindex") {
          DecReindexReport r = check_dec_reindex(d.named("F"), g.max_page);
          pass = r.pass;
          rep = dec_reindex_to_json(r);
        } else {
          throw input_error("check " + check_name +
                            " needs corpus mode (omit the file)");
        }
        write_or_print(g, "check-" + check_name + ".report.json",
                       with_hash(std::move(rep), bytes).dump(2) + "\n");
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << check_name << "\n";
        return pass ? 0 : 1;
      }
      CorpusParams params;
      params.count = g.count;
      CorpusCheckResult r = run_corpus_check(check_name, g.seed, g.count,
                                             params, g.jobs, g.max_page);
      write_or_print(g, "check-" + check_name + ".report.json",
                     r.report.dump(2) + "\n");
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << check_name
                << " on corpus seed=" << g.seed << " count=" << g.count
                << "\n";
      return r.pass ? 0 : 1;
    }

    if (flagf->parsed()) {
      SheafModel m = load_bundle(g, in_complex, in_sheaf);
      FlaggedFiltration ff =
          flag_filtration_F(m, load_flag(m.space, in_flag));
      ojson doc = document_to_json(*m.complex, {{"F", &ff.filtration}});
      write_or_print(g, "flag-f.json", doc.dump(2) + "\n");
      return 0;
    }

    if (flagg->parsed()) {
      SheafModel m = load_bundle(g, in_complex, in_sheaf);
      SupportFiltration sf =
          support_filtration_G(m, load_flag(m.space, in_flag));
      ojson doc = document_to_json(*sf.subdivided_model.complex,
                                   {{"G", &sf.filtration}});
      write_or_print(g, "flag-g.json", doc.dump(2) + "\n");
      return 0;
    }

    if (leray->parsed() || run->parsed()) {
      ScenarioResult r = run_scenario(in_file, g.run_options());
      for (const auto& line : r.lines) std::cout << line << "\n";
      if (r.exit_code == 0 && r.lines.empty()) std::cout << "[PASS] (empty scenario)\n";
      return r.exit_code;
    }

    if (corpus->parsed()) {
      CorpusParams params;
      params.count = g.count;
      std::filesystem::path dir =
          g.out_dir.empty() ? std::filesystem::path("corpus")
                            : std::filesystem::path(g.out_dir);
      std::filesystem::create_directories(dir);
      for (int i = 0; i < g.count; ++i) {
        CorpusElement el =
            corpus_element(g.seed, static_cast<std::uint64_t>(i), params);
        ojson doc = document_to_json(*el.complex, {{"F", &el.f}, {"G", &el.g}});
        std::ostringstream name;
        name << "corpus-" << g.seed << "-" << i << ".json";
        std::ofstream out(dir / name.str());
        out << doc.dump(2) << "\n";
      }
      std::cout << "wrote " << g.count << " documents to " << dir.string()
                << "\n";
      return 0;
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
