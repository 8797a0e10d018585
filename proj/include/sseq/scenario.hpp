#pragma once

#include "sseq/io.hpp"
#include "sseq/random_corpus.hpp"

namespace sseq {

struct RunOptions {
  Coefficients coefficients = Coefficients::integers;
  int max_page = -1;
  std::filesystem::path out_dir;  // empty: no report files written
  int jobs = 1;
};

struct ScenarioResult {
  int exit_code = 0;  // 0 pass, 1 check failed, 2 malformed input
  bool pass = true;
  ojson report;
  std::vector<std::string> lines;  // one "[PASS] name" line per check
};

/// Loads a scenario bundle (json file with paths relative to it), runs the
/// requested checks, compares against the expected-results file when present,
/// and writes <name>.report.json into out_dir when set.
ScenarioResult run_scenario(const std::filesystem::path& scenario_path,
                            const RunOptions& opts);

/// Seeded corpus property checks shared by the CLI and the acceptance suite.
/// Known names: dec-reindex, lmlu, pdec, zassenhaus, diagonal-sum,
/// ker-formula, e1-triples. The report is byte-deterministic per seed.
struct CorpusCheckResult {
  bool pass = true;
  ojson report;
};

CorpusCheckResult run_corpus_check(const std::string& name, std::uint64_t seed,
                                   int count, const CorpusParams& params,
                                   int jobs, int max_page);

}  // namespace sseq
