#include "sseq/filtration.hpp"

#include <sstream>

namespace sseq {

FilteredComplex::FilteredComplex(ComplexPtr base, int lo,
                                 std::vector<std::vector<Subgroup>> steps)
    : base_(std::move(base)), lo_(lo), steps_(std::move(steps)) {
  const std::size_t span =
      static_cast<std::size_t>(base_->max_degree() - base_->min_degree() + 1);
  for (const auto& per_degree : steps_) {
    if (per_degree.size() != span)
      throw input_error("FilteredComplex: step has wrong number of degrees");
    for (int l = base_->min_degree(); l <= base_->max_degree(); ++l)
      if (per_degree[static_cast<std::size_t>(l - base_->min_degree())]
              .ambient_rank() != base_->rank(l))
        throw input_error("FilteredComplex: step ambient mismatch");
  }
}

FilteredComplex FilteredComplex::trivial(ComplexPtr base, int jump_at) {
  std::vector<Subgroup> full;
  for (int l = base->min_degree(); l <= base->max_degree(); ++l)
    full.push_back(base->full_subgroup(l));
  std::vector<std::vector<Subgroup>> steps;
  steps.push_back(std::move(full));
  return FilteredComplex(std::move(base), jump_at, std::move(steps));
}

Subgroup FilteredComplex::step(int p, int l) const {
  if (p < lo_) return base_->full_subgroup(l);
  if (p > window_hi()) return base_->zero_subgroup(l);
  if (l < base_->min_degree() || l > base_->max_degree())
    return Subgroup::zero(0);
  return steps_[static_cast<std::size_t>(p - lo_)]
               [static_cast<std::size_t>(l - base_->min_degree())];
}

std::vector<FilteredComplex::Violation> FilteredComplex::validate() const {
  std::vector<Violation> out;
  const Coefficients c = coefficients();
  for (int p = lo_; p <= window_hi() + 1; ++p) {
    for (int l = base_->min_degree(); l <= base_->max_degree(); ++l) {
      if (!contains(step(p - 1, l), step(p, l)))
        out.push_back({p, l, "steps not nested at this index"});
      if (!contains(step(p, l + 1), image(base_->differential(l), step(p, l), c)))
        out.push_back({p, l, "step is not d-stable"});
    }
  }
  return out;
}

void FilteredComplex::ensure_valid() const {
  auto v = validate();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid filtration:";
  for (const auto& viol : v)
    os << " [p=" << viol.p << ", degree " << viol.degree << "] " << viol.what;
  throw input_error(os.str());
}

FilteredComplex FilteredComplex::trimmed() const {
  int lo = lo_, hi = window_hi();
  auto is_full_at = [&](int p) {
    for (int l = base_->min_degree(); l <= base_->max_degree(); ++l)
      if (!step(p, l).is_full()) return false;
    return true;
  };
  auto is_zero_at = [&](int p) {
    for (int l = base_->min_degree(); l <= base_->max_degree(); ++l)
      if (!step(p, l).is_zero()) return false;
    return true;
  };
  while (lo <= hi && is_full_at(lo)) ++lo;
  while (hi >= lo && is_zero_at(hi)) --hi;
  std::vector<std::vector<Subgroup>> steps;
  for (int p = lo; p <= hi; ++p)
    steps.push_back(steps_[static_cast<std::size_t>(p - lo_)]);
  return FilteredComplex(base_, lo, std::move(steps));
}

bool FilteredComplex::same_filtration(const FilteredComplex& other) const {
  if (base_->min_degree() != other.base_->min_degree() ||
      base_->max_degree() != other.base_->max_degree())
    return false;
  const int lo = std::min(lo_, other.lo_) - 1;
  const int hi = std::max(window_hi(), other.window_hi()) + 1;
  for (int p = lo; p <= hi; ++p)
    for (int l = base_->min_degree(); l <= base_->max_degree(); ++l)
      if (!(step(p, l) == other.step(p, l))) return false;
  return true;
}

namespace {

bool same_base(const FilteredComplex& a, const FilteredComplex& b) {
  return a.base_ptr().get() == b.base_ptr().get() || a.base() == b.base();
}

}  // namespace

BifilteredComplex::BifilteredComplex(FilteredComplex p, FilteredComplex f)
    : base(p.base_ptr()), first(std::move(p)), second(std::move(f)) {
  if (!same_base(first, second))
    throw input_error("BifilteredComplex: filtrations on different bases");
}

std::optional<std::array<int, 2>> filtration_type(const FilteredComplex& f) {
  const CochainComplex& k = f.base();
  auto gr_nonzero = [&](int p) {
    for (int l = k.min_degree(); l <= k.max_degree(); ++l)
      if (!(f.step(p, l) == f.step(p + 1, l))) return true;
    return false;
  };
  int lo = f.window_lo() - 1, hi = f.window_hi();
  int a = lo;
  while (a <= hi && !gr_nonzero(a)) ++a;
  if (a > hi) return std::nullopt;
  int b = hi;
  while (b >= a && !gr_nonzero(b)) --b;
  return std::array<int, 2>{a, b};
}

SubquotientComplex graded_piece(const FilteredComplex& f, int p) {
  std::map<int, std::pair<Subgroup, Subgroup>> layers;
  for (int l = f.base().min_degree(); l <= f.base().max_degree(); ++l)
    layers[l] = {f.step(p, l), f.step(p + 1, l)};
  return SubquotientComplex(f.base_ptr(), std::move(layers));
}

FilteredComplex decale(const FilteredComplex& f) {
  const CochainComplex& k = f.base();
  const Coefficients c = f.coefficients();
  // Dec^p is everything once p + l < window_lo for all degrees, and zero
  // once p + l > window_hi; a conservative window is trimmed afterwards.
  const int lo = f.window_lo() - std::max(k.max_degree(), 0) - 1;
  const int hi = f.window_hi() - std::min(k.min_degree(), 0) + 1;
  std::vector<std::vector<Subgroup>> steps;
  for (int p = lo; p <= hi; ++p) {
    std::vector<Subgroup> per_degree;
    for (int l = k.min_degree(); l <= k.max_degree(); ++l)
      per_degree.push_back(preimage(k.differential(l), f.step(p + l, l),
                                    f.step(p + l + 1, l + 1), c));
    steps.push_back(std::move(per_degree));
  }
  return FilteredComplex(f.base_ptr(), lo, std::move(steps)).trimmed();
}

FilteredComplex shift_filtration(const FilteredComplex& f, int s) {
  std::vector<std::vector<Subgroup>> steps;
  for (int p = f.window_lo(); p <= f.window_hi(); ++p) {
    std::vector<Subgroup> per_degree;
    for (int l = f.base().min_degree(); l <= f.base().max_degree(); ++l)
      per_degree.push_back(f.step(p, l));
    steps.push_back(std::move(per_degree));
  }
  return FilteredComplex(f.base_ptr(), f.window_lo() + s, std::move(steps));
}

FilteredComplex diagonal(const FilteredComplex& f, const FilteredComplex& g) {
  if (!same_base(f, g))
    throw input_error("diagonal: filtrations live on different bases");
  const CochainComplex& k = f.base();
  const Coefficients c = f.coefficients();
  const int lo = f.window_lo() + g.window_lo() - 1;
  const int hi = f.window_hi() + g.window_hi() + 1;
  std::vector<std::vector<Subgroup>> steps;
  for (int p = lo; p <= hi; ++p) {
    std::vector<Subgroup> per_degree;
    for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
      // Boundary terms absorb the infinitely many summands with a full
      // factor: F below its window contributes G^{p-window_lo(F)+1} and
      // symmetrically for G.
      Subgroup acc = g.step(p - f.window_lo() + 1, l);
      acc = subgroup_sum(acc, f.step(p - g.window_lo() + 1, l), c);
      for (int i = f.window_lo(); i <= f.window_hi(); ++i) {
        const int j = p - i;
        if (j < g.window_lo() || j > g.window_hi()) continue;
        acc = subgroup_sum(
            acc, subgroup_intersection(f.step(i, l), g.step(j, l), c), c);
      }
      per_degree.push_back(std::move(acc));
    }
    steps.push_back(std::move(per_degree));
  }
  return FilteredComplex(f.base_ptr(), lo, std::move(steps)).trimmed();
}

SubquotientComplex bigraded_piece(const FilteredComplex& f,
                                  const FilteredComplex& g, int i, int j) {
  if (!same_base(f, g))
    throw input_error("bigraded_piece: filtrations live on different bases");
  const CochainComplex& k = f.base();
  const Coefficients c = f.coefficients();
  std::map<int, std::pair<Subgroup, Subgroup>> layers;
  for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
    Subgroup num = subgroup_intersection(f.step(i, l), g.step(j, l), c);
    Subgroup den = subgroup_sum(
        subgroup_intersection(f.step(i + 1, l), g.step(j, l), c),
        subgroup_intersection(f.step(i, l), g.step(j + 1, l), c), c);
    layers[l] = {std::move(num), std::move(den)};
  }
  return SubquotientComplex(f.base_ptr(), std::move(layers));
}

SubquotientComplex bigraded_piece(const BifilteredComplex& b, int i, int j) {
  return bigraded_piece(b.second, b.first, i, j);
}

CohomologyFiltration::CohomologyFiltration(const FilteredComplex& f,
                                           int degree)
    : degree_(degree),
      coeffs_(f.coefficients()),
      h_(f.base().cohomology_presentation(degree)),
      lo_(f.window_lo()) {
  const CochainComplex& k = f.base();
  const Subgroup cocycles = k.cocycles(degree);
  const Subgroup boundaries = k.coboundaries(degree);
  for (int p = f.window_lo(); p <= f.window_hi() + 1; ++p)
    steps_.push_back(subgroup_sum(
        subgroup_intersection(cocycles, f.step(p, degree), coeffs_),
        boundaries, coeffs_));
}

const Subgroup& CohomologyFiltration::step(int p) const {
  if (p < lo_) return h_.numerator();
  if (p > window_hi()) return h_.denominator();
  return steps_[static_cast<std::size_t>(p - lo_)];
}

AbelianGroup CohomologyFiltration::piece(int p) const {
  return subquotient(step(p), h_.denominator(), coeffs_);
}

AbelianGroup CohomologyFiltration::graded(int p) const {
  return subquotient(step(p), step(p + 1), coeffs_);
}

CohomologyFiltration induced_filtration_on_cohomology(const FilteredComplex& f,
                                                      int degree) {
  return CohomologyFiltration(f, degree);
}

}  // namespace sseq
