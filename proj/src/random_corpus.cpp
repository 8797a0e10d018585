#include "sseq/random_corpus.hpp"

namespace sseq {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::uniform(long lo, long hi) {
  return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

ComplexPtr random_complex(Rng& rng, const CorpusParams& p) {
  const int span = static_cast<int>(rng.uniform(1, p.max_degree_span));
  const int min_deg = static_cast<int>(rng.uniform(-3, 1));
  std::vector<std::size_t> ranks;
  for (int i = 0; i < span; ++i)
    ranks.push_back(static_cast<std::size_t>(rng.uniform(0, p.max_rank)));

  auto random_matrix = [&](std::size_t r, std::size_t c, long bound) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.uniform(-bound, bound);
    return m;
  };

  std::vector<IntMatrix> diffs;
  for (int i = 0; i + 1 < span; ++i) {
    if (i == 0) {
      diffs.push_back(random_matrix(ranks[1], ranks[0], p.entry_bound));
    } else {
      // Rows of the next differential must annihilate the previous image.
      IntMatrix k = kernel_basis(diffs.back().transpose());
      IntMatrix r = random_matrix(ranks[static_cast<std::size_t>(i) + 1],
                                  k.cols(), 2);
      diffs.push_back(r * k.transpose());
    }
  }
  return std::make_shared<CochainComplex>(min_deg, std::move(ranks),
                                          std::move(diffs));
}

FilteredComplex random_filtration(Rng& rng, const ComplexPtr& base,
                                  const CorpusParams& p) {
  const int steps = static_cast<int>(rng.uniform(1, p.max_steps));
  const int lo = static_cast<int>(rng.uniform(-3, 3 - (steps - 1)));
  const int span = base->max_degree() - base->min_degree() + 1;

  // Nested random spans, deepest first.
  std::vector<std::vector<IntMatrix>> gens(
      static_cast<std::size_t>(steps),
      std::vector<IntMatrix>(static_cast<std::size_t>(std::max(span, 0))));
  for (int s = steps - 1; s >= 0; --s) {
    for (int l = base->min_degree(); l <= base->max_degree(); ++l) {
      const std::size_t li = static_cast<std::size_t>(l - base->min_degree());
      const std::size_t n = base->rank(l);
      const std::size_t fresh = static_cast<std::size_t>(rng.uniform(0, 2));
      IntMatrix cols(n, fresh);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < fresh; ++j)
          cols.at(i, j) = rng.uniform(-2, 2);
      if (s + 1 < steps) cols = gens[static_cast<std::size_t>(s + 1)][li].hstack(cols);
      gens[static_cast<std::size_t>(s)][li] = cols;
    }
  }

  // d-stable closure: adjoin the image of the span one degree below.
  std::vector<std::vector<Subgroup>> filt;
  const Coefficients c = base->coefficients();
  for (int s = 0; s < steps; ++s) {
    std::vector<Subgroup> per_degree;
    for (int l = base->min_degree(); l <= base->max_degree(); ++l) {
      const std::size_t li = static_cast<std::size_t>(l - base->min_degree());
      IntMatrix cols = gens[static_cast<std::size_t>(s)][li];
      if (l > base->min_degree()) {
        const auto& below = gens[static_cast<std::size_t>(s)][li - 1];
        cols = cols.hstack(base->differential(l - 1) * below);
      }
      per_degree.push_back(Subgroup::from_columns(base->rank(l), cols, c));
    }
    filt.push_back(std::move(per_degree));
  }
  return FilteredComplex(base, lo, std::move(filt));
}

CorpusElement corpus_element(std::uint64_t seed, std::uint64_t index,
                             const CorpusParams& p) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + index + 1);
  CorpusElement e;
  e.index = index;
  e.complex = random_complex(rng, p);
  e.f = random_filtration(rng, e.complex, p);
  e.g = random_filtration(rng, e.complex, p);
  return e;
}

SimplicialComplexPtr random_two_complex(Rng& rng) {
  const long nv = rng.uniform(3, 7);
  std::vector<std::string> labels;
  for (long i = 0; i < nv; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<std::vector<std::string>> simplices;
  const long triangles = rng.uniform(1, 6);
  for (long t = 0; t < triangles; ++t) {
    long a = rng.uniform(0, nv - 1), b = rng.uniform(0, nv - 1),
         c = rng.uniform(0, nv - 1);
    if (a == b || b == c || a == c) continue;
    simplices.push_back({labels[static_cast<std::size_t>(a)],
                         labels[static_cast<std::size_t>(b)],
                         labels[static_cast<std::size_t>(c)]});
  }
  const long edges = rng.uniform(0, 4);
  for (long t = 0; t < edges; ++t) {
    long a = rng.uniform(0, nv - 1), b = rng.uniform(0, nv - 1);
    if (a == b) continue;
    simplices.push_back({labels[static_cast<std::size_t>(a)],
                         labels[static_cast<std::size_t>(b)]});
  }
  if (simplices.empty()) simplices.push_back({labels[0]});
  return std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_simplices(simplices));
}

ClosedSubcomplexFlag random_flag(Rng& rng, const SimplicialComplexPtr& x) {
  ClosedSubcomplexFlag flag;
  flag.ambient = x;
  const int depth = static_cast<int>(rng.uniform(1, 3));
  SimplicialComplex::Mask prev = x->full_mask();
  for (int k = 0; k < depth; ++k) {
    SimplicialComplex::Mask m = x->empty_mask();
    for (std::size_t id = 0; id < x->simplex_count(); ++id)
      if (prev[id] && rng.uniform(0, 2) == 0) m[id] = 1;
    m = x->close_mask(std::move(m));
    // closure may add faces outside prev; intersect to preserve nesting
    for (std::size_t id = 0; id < x->simplex_count(); ++id)
      if (!prev[id]) m[id] = 0;
    flag.steps.push_back(m);
    prev = flag.steps.back();
  }
  return flag;
}

}  // namespace sseq
