#pragma once

#include <cstdint>

#include "sseq/filtration.hpp"
#include "sseq/simplicial.hpp"

namespace sseq {

/// splitmix64-based generator. <random> distributions are implementation
/// defined, which would break byte-identical corpus reports across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [lo, hi], inclusive.
  long uniform(long lo, long hi);

 private:
  std::uint64_t state_;
};

struct CorpusParams {
  int count = 200;
  int max_degree_span = 7;   // number of degrees
  long max_rank = 6;
  int max_steps = 4;
  long entry_bound = 4;
};

/// Bounded complex with d^2 = 0 by construction: after the first random
/// differential, each d is a random combination of the rows annihilating the
/// image of the previous one.
ComplexPtr random_complex(Rng& rng, const CorpusParams& p);

/// Valid filtration on the complex: nested random column spans, made d-stable
/// by adjoining the d-image of the same span one degree below.
FilteredComplex random_filtration(Rng& rng, const ComplexPtr& base,
                                  const CorpusParams& p);

struct CorpusElement {
  ComplexPtr complex;
  FilteredComplex f;
  FilteredComplex g;  // second independent filtration, same base
  std::uint64_t index = 0;
};

CorpusElement corpus_element(std::uint64_t seed, std::uint64_t index,
                             const CorpusParams& p);

/// Random 2-dimensional simplicial complex (triangles plus stray edges,
/// closed under faces) and random flags of closed subcomplexes on it.
SimplicialComplexPtr random_two_complex(Rng& rng);
ClosedSubcomplexFlag random_flag(Rng& rng, const SimplicialComplexPtr& x);

}  // namespace sseq
