#include "sseq/spectral.hpp"

#include <set>
#include <sstream>

namespace sseq {

SpectralSequence::SpectralSequence(FilteredComplex f, int max_page)
    : f_(std::move(f)) {
  plo_ = f_.window_lo() - 1;
  phi_ = f_.window_hi();
  structural_ = std::max(f_.window_hi() - f_.window_lo() + 2, 1);
  compute(max_page);
}

const Subgroup& SpectralSequence::approx_cycles(int p, int n, int r) const {
  Key key{p, n, r};
  auto it = z_cache_.find(key);
  if (it != z_cache_.end()) return it->second;
  const CochainComplex& k = f_.base();
  Subgroup z;
  if (p > f_.window_hi()) {
    z = Subgroup::zero(k.rank(n));
  } else if (r <= 0) {
    z = f_.step(p, n);  // d-stability makes the condition vacuous
  } else {
    z = preimage(k.differential(n), f_.step(p, n), f_.step(p + r, n + 1),
                 f_.coefficients());
  }
  return z_cache_.emplace(key, std::move(z)).first->second;
}

const Subgroup& SpectralSequence::cycle_image(int p, int n, int r) const {
  Key key{p, n, r};
  auto it = dz_cache_.find(key);
  if (it != dz_cache_.end()) return it->second;
  Subgroup img = image(f_.base().differential(n), approx_cycles(p, n, r),
                       f_.coefficients());
  return dz_cache_.emplace(key, std::move(img)).first->second;
}

Subgroup SpectralSequence::boundary_group(int p, int n, int r) const {
  return subgroup_sum(approx_cycles(p + 1, n, r - 1),
                      cycle_image(p - r + 1, n - 1, r - 1),
                      f_.coefficients());
}

void SpectralSequence::compute(int max_page) {
  const CochainComplex& k = f_.base();
  computed_ = (max_page < 0) ? structural_ : std::min(max_page, structural_);
  computed_ = std::max(computed_, 1);

  for (int r = 0; r <= computed_; ++r) {
    for (int n = k.min_degree(); n <= k.max_degree(); ++n) {
      if (k.rank(n) == 0) continue;
      for (int p = plo_; p <= phi_; ++p) {
        const int q = n - p;
        Subgroup num = approx_cycles(p, n, r);
        Subgroup den = boundary_group(p, n, r);
        if (num == den) continue;  // zero cell
        cells_.emplace(Key{r, p, q},
                       QuotientPresentation(std::move(num), std::move(den),
                                            f_.coefficients()));
      }
    }
  }

  // Differentials d_r : (p, q) -> (p + r, q - r + 1).
  for (const auto& [key, pres] : cells_) {
    const auto [r, p, q] = key;
    const int n = p + q;
    const QuotientPresentation* target = cell(r, p + r, q - r + 1);
    const std::size_t srcgens = pres.coord_count();
    if (!target) {
      diffs_.emplace(key, IntMatrix(0, srcgens));
      continue;
    }
    IntMatrix m(target->coord_count(), srcgens);
    const IntMatrix d = k.differential(n);
    for (std::size_t j = 0; j < srcgens; ++j)
      m.set_column(j, target->coords(d.apply(pres.generator_reps()[j])));
    diffs_.emplace(key, std::move(m));
  }

  // Internal invariant: composite differentials vanish in coordinates.
  for (const auto& [key, m1] : diffs_) {
    const auto [r, p, q] = key;
    auto it2 = diffs_.find(Key{r, p + r, q - r + 1});
    if (it2 == diffs_.end() || it2->second.rows() == 0 || m1.cols() == 0)
      continue;
    const QuotientPresentation* target2 = cell(r, p + 2 * r, q - 2 * r + 2);
    if (!target2) continue;
    IntMatrix comp = it2->second * m1;
    for (std::size_t j = 0; j < comp.cols(); ++j) {
      for (const Int& v : target2->reduce(comp.column(j)))
        if (v != 0) {
          std::ostringstream os;
          os << "d_" << r << " o d_" << r << " nonzero at (p=" << p
             << ", q=" << q << ")";
          check_failures_.push_back(os.str());
          break;
        }
    }
  }

  // Internal invariant: E_{r+1} = ker d_r / im d_r, recomputed independently
  // as (Z_{r+1} + B_r) / (d Z_r^{p-r} + B_r).
  for (int r = 0; r < computed_; ++r) {
    for (int n = k.min_degree(); n <= k.max_degree(); ++n) {
      if (k.rank(n) == 0) continue;
      for (int p = plo_; p <= phi_; ++p) {
        const int q = n - p;
        Subgroup den = boundary_group(p, n, r);
        Subgroup kernum = subgroup_sum(approx_cycles(p, n, r + 1), den,
                                       f_.coefficients());
        Subgroup imden = subgroup_sum(cycle_image(p - r, n - 1, r), den,
                                      f_.coefficients());
        AbelianGroup homology =
            subquotient(kernum, imden, f_.coefficients());
        if (!(homology == group(r + 1, p, q))) {
          std::ostringstream os;
          os << "page " << r + 1 << " cell (p=" << p << ", q=" << q
             << ") is " << group(r + 1, p, q).to_string()
             << " but H(E_" << r << ", d_" << r << ") is "
             << homology.to_string();
          check_failures_.push_back(os.str());
        }
      }
    }
  }

  // Stabilization: walk down from the structural bound while pages agree and
  // differentials vanish.
  stabilization_ = computed_;
  for (int r = computed_ - 1; r >= 0; --r) {
    bool same = true;
    for (int n = k.min_degree(); n <= k.max_degree() && same; ++n)
      for (int p = plo_; p <= phi_ && same; ++p) {
        const int q = n - p;
        if (!(group(r, p, q) == group(r + 1, p, q))) same = false;
      }
    if (same)
      for (const auto& [key, m] : diffs_) {
        if (std::get<0>(key) != r) continue;
        if (!m.is_zero()) {
          same = false;
          break;
        }
      }
    if (!same) break;
    stabilization_ = r;
  }
}

AbelianGroup SpectralSequence::group(int r, int p, int q) const {
  const QuotientPresentation* c = cell(r, p, q);
  return c ? c->group() : AbelianGroup{};
}

const QuotientPresentation* SpectralSequence::cell(int r, int p, int q) const {
  if (r > computed_) r = computed_;  // pages are constant beyond
  auto it = cells_.find(Key{r, p, q});
  return it == cells_.end() ? nullptr : &it->second;
}

IntMatrix SpectralSequence::differential_matrix(int r, int p, int q) const {
  if (r > computed_) r = computed_;
  auto it = diffs_.find(Key{r, p, q});
  if (it != diffs_.end()) return it->second;
  const QuotientPresentation* t = cell(r, p + r, q - r + 1);
  const QuotientPresentation* s = cell(r, p, q);
  return IntMatrix(t ? t->coord_count() : 0, s ? s->coord_count() : 0);
}

std::vector<std::pair<int, int>> SpectralSequence::support(int r) const {
  if (r > computed_) r = computed_;
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, pres] : cells_)
    if (std::get<0>(key) == r)
      out.emplace_back(std::get<1>(key), std::get<2>(key));
  return out;
}

CohomologyFiltration SpectralSequence::abutment(int degree) const {
  return CohomologyFiltration(f_, degree);
}

std::vector<SpectralSequence::AbutmentMismatch>
SpectralSequence::compare_einfty_with_abutment() const {
  std::vector<AbutmentMismatch> out;
  const CochainComplex& k = f_.base();
  for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
    CohomologyFiltration a = abutment(l);
    for (int p = plo_; p <= phi_; ++p) {
      AbelianGroup einfty = group(computed_, p, l - p);
      AbelianGroup graded = a.graded(p);
      if (!(einfty == graded)) out.push_back({l, p, einfty, graded});
    }
  }
  return out;
}

DecReindexReport check_dec_reindex(const FilteredComplex& f, int max_page) {
  DecReindexReport report;
  FilteredComplex dec = decale(f);
  SpectralSequence ss_dec(dec, max_page);
  SpectralSequence ss_f(f, max_page < 0 ? -1 : max_page + 1);

  const CochainComplex& k = f.base();
  int last = std::max(ss_dec.structural_bound(), ss_f.structural_bound());
  if (max_page >= 1) last = std::min(last, max_page);
  report.last_page = last;

  for (int r = 1; r <= last; ++r) {
    std::set<std::pair<int, int>> cells;  // dec-side coordinates
    for (auto [p, q] : ss_dec.support(r)) cells.insert({p, q});
    for (auto [s, t] : ss_f.support(r + 1)) cells.insert({-t, s + 2 * t});
    for (auto [p, q] : cells) {
      AbelianGroup lhs = ss_dec.group(r, p, q);
      AbelianGroup rhs = ss_f.group(r + 1, 2 * p + q, -p);
      if (!(lhs == rhs))
        report.page_mismatches.push_back({r, p, q, lhs, rhs});
    }
  }

  for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
    CohomologyFiltration ad = induced_filtration_on_cohomology(dec, l);
    CohomologyFiltration af = induced_filtration_on_cohomology(f, l);
    const int lo = std::min(ad.window_lo(), af.window_lo() - l) - 1;
    const int hi = std::max(ad.window_hi(), af.window_hi() - l) + 1;
    for (int p = lo; p <= hi; ++p)
      if (!(ad.step(p) == af.step(p + l)))
        report.abutment_mismatches.push_back({l, p});
  }

  report.pass = report.page_mismatches.empty() &&
                report.abutment_mismatches.empty();
  return report;
}

}  // namespace sseq
