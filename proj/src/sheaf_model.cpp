#include "sseq/sheaf_model.hpp"

#include <sstream>

namespace sseq {

Subgroup SheafModel::vanishing_subgroup(
    int l, const SimplicialComplex::Mask& closed) const {
  SimplicialComplex::Mask allowed = space->full_mask();
  for (std::size_t id = 0; id < allowed.size(); ++id)
    if (closed[id]) allowed[id] = 0;
  return supported_subgroup(l, allowed);
}

Subgroup SheafModel::supported_subgroup(
    int l, const SimplicialComplex::Mask& allowed) const {
  const std::size_t n = complex->rank(l);
  std::vector<std::vector<Int>> cols;
  for (std::size_t id : space->simplices_of_dim(l)) {
    if (!allowed[id]) continue;
    for (std::size_t k = 0; k < sheaf->stalk_rank(id); ++k) {
      std::vector<Int> e(n);
      e[block_offset[id] + k] = 1;
      cols.push_back(std::move(e));
    }
  }
  return Subgroup::from_columns(n, IntMatrix::from_columns(n, cols),
                                complex->coefficients());
}

SheafModel build_sheaf_cochains(SimplicialComplexPtr x, CellularSheafPtr s,
                                Coefficients c) {
  s->ensure_valid();
  SheafModel m;
  m.space = x;
  m.sheaf = s;
  m.block_offset.assign(x->simplex_count(), 0);

  const int dim = x->dimension();
  std::vector<std::size_t> ranks;
  for (int l = 0; l <= dim; ++l) {
    std::size_t total = 0;
    for (std::size_t id : x->simplices_of_dim(l)) {
      m.block_offset[id] = total;
      total += s->stalk_rank(id);
    }
    ranks.push_back(total);
  }

  std::vector<IntMatrix> diffs;
  for (int l = 0; l < dim; ++l) {
    IntMatrix d(ranks[static_cast<std::size_t>(l + 1)],
                ranks[static_cast<std::size_t>(l)]);
    for (std::size_t cof : x->simplices_of_dim(l + 1)) {
      for (const auto& [face, omit] : x->facets(cof)) {
        const IntMatrix& rho = s->restriction(face, cof);
        const long sign = (omit % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < rho.rows(); ++i)
          for (std::size_t j = 0; j < rho.cols(); ++j)
            d.at(m.block_offset[cof] + i, m.block_offset[face] + j) +=
                sign * rho.at(i, j);
      }
    }
    diffs.push_back(std::move(d));
  }

  auto complex = std::make_shared<CochainComplex>(
      0, dim >= 0 ? ranks : std::vector<std::size_t>{}, std::move(diffs), c);
  complex->ensure_valid();
  m.complex = std::move(complex);
  return m;
}

FlaggedFiltration flag_filtration_F(const SheafModel& m,
                                    const ClosedSubcomplexFlag& flag) {
  flag.ensure_valid();
  const int n = flag.depth();
  const CochainComplex& k = *m.complex;
  std::vector<std::vector<Subgroup>> steps;
  for (int p = -n; p <= 0; ++p) {
    std::vector<Subgroup> per_degree;
    for (int l = k.min_degree(); l <= k.max_degree(); ++l)
      per_degree.push_back(m.vanishing_subgroup(l, flag.step(p - 1)));
    steps.push_back(std::move(per_degree));
  }
  FlaggedFiltration out{m, flag,
                        FilteredComplex(m.complex, -n, std::move(steps))};
  return out;
}

SupportFiltration support_filtration_G(const SheafModel& m,
                                       const ClosedSubcomplexFlag& flag) {
  flag.ensure_valid();
  SupportFiltration out;
  out.subdivision = barycentric_subdivision(m.space);
  auto pulled = std::make_shared<CellularSheaf>(
      out.subdivision.pullback(*m.sheaf));
  out.subdivided_model = build_sheaf_cochains(out.subdivision.complex, pulled,
                                              m.complex->coefficients());
  const CochainComplex& k = *out.subdivided_model.complex;
  const int n = flag.depth();
  // G^p = cochains supported on the open star of the subdivided Z_{-p};
  // equivalently vanishing on the closed set of chains avoiding Z_{-p}.
  std::vector<std::vector<Subgroup>> steps;
  for (int p = 1; p <= n; ++p) {
    std::vector<Subgroup> per_degree;
    SimplicialComplex::Mask avoid =
        out.subdivision.star_complement_mask(flag.step(-p));
    for (int l = k.min_degree(); l <= k.max_degree(); ++l)
      per_degree.push_back(out.subdivided_model.vanishing_subgroup(l, avoid));
    steps.push_back(std::move(per_degree));
  }
  out.filtration = FilteredComplex(out.subdivided_model.complex, 1,
                                   std::move(steps));
  return out;
}

DeltaInputs delta_inputs(const SheafModel& m, const ClosedSubcomplexFlag& y,
                         const ClosedSubcomplexFlag& z) {
  SupportFiltration g = support_filtration_G(m, z);
  DeltaInputs out;
  out.subdivision = std::move(g.subdivision);
  out.subdivided_model = std::move(g.subdivided_model);
  out.g = std::move(g.filtration);

  const CochainComplex& k = *out.subdivided_model.complex;
  const int n = y.depth();
  std::vector<std::vector<Subgroup>> steps;
  for (int p = -n; p <= 0; ++p) {
    std::vector<Subgroup> per_degree;
    SimplicialComplex::Mask sub =
        out.subdivision.subdivided_mask(y.step(p - 1));
    for (int l = k.min_degree(); l <= k.max_degree(); ++l)
      per_degree.push_back(out.subdivided_model.vanishing_subgroup(l, sub));
    steps.push_back(std::move(per_degree));
  }
  out.f = FilteredComplex(out.subdivided_model.complex, -n, std::move(steps));
  return out;
}

RelativeComplex relative_complex(const SheafModel& m,
                                 const SimplicialComplex::Mask& within,
                                 const SimplicialComplex::Mask& out) {
  const SimplicialComplex& x = *m.space;
  const int dim = x.dimension();
  RelativeComplex rel;

  std::vector<std::size_t> ranks;
  rel.global_index.resize(static_cast<std::size_t>(std::max(dim + 1, 0)));
  std::vector<std::size_t> local_offset(x.simplex_count(), 0);
  std::vector<char> kept(x.simplex_count(), 0);
  for (int l = 0; l <= dim; ++l) {
    std::size_t total = 0;
    for (std::size_t id : x.simplices_of_dim(l)) {
      if (!within[id] || out[id]) continue;
      kept[id] = 1;
      local_offset[id] = total;
      for (std::size_t k = 0; k < m.sheaf->stalk_rank(id); ++k)
        rel.global_index[static_cast<std::size_t>(l)].push_back(
            m.block_offset[id] + k);
      total += m.sheaf->stalk_rank(id);
    }
    ranks.push_back(total);
  }

  std::vector<IntMatrix> diffs;
  for (int l = 0; l < dim; ++l) {
    IntMatrix d(ranks[static_cast<std::size_t>(l + 1)],
                ranks[static_cast<std::size_t>(l)]);
    for (std::size_t cof : x.simplices_of_dim(l + 1)) {
      if (!kept[cof]) continue;
      for (const auto& [face, omit] : x.facets(cof)) {
        if (!kept[face]) continue;
        const IntMatrix& rho = m.sheaf->restriction(face, cof);
        const long sign = (omit % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < rho.rows(); ++i)
          for (std::size_t j = 0; j < rho.cols(); ++j)
            d.at(local_offset[cof] + i, local_offset[face] + j) +=
                sign * rho.at(i, j);
      }
    }
    diffs.push_back(std::move(d));
  }
  auto complex = std::make_shared<CochainComplex>(
      0, dim >= 0 ? ranks : std::vector<std::size_t>{}, std::move(diffs),
      m.complex->coefficients());
  complex->ensure_valid();
  rel.complex = std::move(complex);
  return rel;
}

std::vector<Int> RelativeComplex::extend_by_zero(
    int l, const std::vector<Int>& local, std::size_t ambient_rank) const {
  std::vector<Int> out(ambient_rank);
  if (l < 0 || l >= static_cast<int>(global_index.size())) return out;
  const auto& idx = global_index[static_cast<std::size_t>(l)];
  for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = local[i];
  return out;
}

std::vector<Int> RelativeComplex::project(
    int l, const std::vector<Int>& ambient) const {
  if (l < 0 || l >= static_cast<int>(global_index.size())) return {};
  const auto& idx = global_index[static_cast<std::size_t>(l)];
  std::vector<Int> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = ambient[idx[i]];
  return out;
}

std::vector<AbelianGroup> relative_cohomology(
    const SheafModel& m, const SimplicialComplex::Mask& closed_a) {
  if (!m.space->mask_closed(closed_a))
    throw input_error("relative_cohomology: subcomplex is not closed");
  RelativeComplex rel = relative_complex(m, m.space->full_mask(), closed_a);
  std::vector<AbelianGroup> out;
  for (int l = 0; l <= m.space->dimension(); ++l)
    out.push_back(rel.complex->cohomology(l));
  return out;
}

ClosedSubcomplexFlag preimage_flag(const SimplicialMap& f,
                                   const ClosedSubcomplexFlag& on_target) {
  f.ensure_valid();
  ClosedSubcomplexFlag out;
  out.ambient = f.source;
  for (int k = 0; k < on_target.depth(); ++k) {
    const auto& target_mask = on_target.steps[static_cast<std::size_t>(k)];
    SimplicialComplex::Mask m = f.source->empty_mask();
    for (std::size_t id = 0; id < f.source->simplex_count(); ++id)
      if (target_mask[f.image_simplex(id)]) m[id] = 1;
    out.steps.push_back(std::move(m));
  }
  out.ensure_valid();
  return out;
}

ClosedSubcomplexFlag skeletal_flag(const SimplicialComplexPtr& x, int n) {
  if (n != x->dimension())
    throw input_error("skeletal_flag: n must equal the dimension");
  ClosedSubcomplexFlag flag;
  flag.ambient = x;
  for (int p = 1; p <= n; ++p) flag.steps.push_back(x->skeleton_mask(n - p));
  return flag;
}

FilteredComplex skeletal_filtration(const SheafModel& m) {
  const int n = std::max(m.space->dimension(), 0);
  FlaggedFiltration ff = flag_filtration_F(m, skeletal_flag(m.space, m.space->dimension()));
  return shift_filtration(ff.filtration, n);
}

namespace {

/// Kernel filtration Ker(H^l(X) -> H^l(A_p)) in the cocycle-space
/// representation: cocycles whose restriction to A_p is a coboundary there,
/// plus ambient coboundaries.
Subgroup restriction_kernel_step(const SheafModel& m,
                                 const SimplicialComplex::Mask& a, int l) {
  const CochainComplex& k = *m.complex;
  const Coefficients c = k.coefficients();
  RelativeComplex sub = relative_complex(m, a, m.space->empty_mask());
  // Projection matrix onto the subcomplex coordinates.
  const std::size_t nl = k.rank(l);
  const std::size_t sl = sub.complex->rank(l);
  IntMatrix proj(sl, nl);
  if (l >= 0 && l < static_cast<int>(sub.global_index.size())) {
    const auto& idx = sub.global_index[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < idx.size(); ++i) proj.at(i, idx[i]) = 1;
  }
  Subgroup pulled = preimage(proj, k.cocycles(l), sub.complex->coboundaries(l),
                             c);
  return subgroup_sum(pulled, k.coboundaries(l), c);
}

}  // namespace

KerFormulaReport check_flag_ker_formula(const FlaggedFiltration& ff) {
  KerFormulaReport report;
  const CochainComplex& k = *ff.model.complex;
  for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
    CohomologyFiltration ab =
        induced_filtration_on_cohomology(ff.filtration, l);
    for (int p = -ff.flag.depth() - 1; p <= 1; ++p) {
      Subgroup ker = restriction_kernel_step(ff.model, ff.flag.step(p - 1), l);
      if (!(ab.step(p) == ker)) {
        report.pass = false;
        report.mismatches.push_back({l, p});
      }
    }
  }
  return report;
}

TripleReport check_e1_triples(const FlaggedFiltration& ff) {
  TripleReport report;
  const SheafModel& m = ff.model;
  const CochainComplex& k = *m.complex;
  SpectralSequence ss(ff.filtration);

  // Relative complexes of consecutive flag pairs, indexed by p.
  std::map<int, RelativeComplex> rel;
  for (int p = -ff.flag.depth(); p <= 0; ++p)
    rel.emplace(p, relative_complex(m, ff.flag.step(p), ff.flag.step(p - 1)));

  // Cells: E_1^{p,q} must be H^{p+q}(Y_p, Y_{p-1}).
  for (int p = -ff.flag.depth(); p <= 0; ++p) {
    for (int n = k.min_degree(); n <= k.max_degree(); ++n) {
      const int q = n - p;
      AbelianGroup e1 = ss.group(1, p, q);
      AbelianGroup relative = rel.at(p).complex->cohomology(n);
      if (!(e1 == relative)) {
        report.pass = false;
        report.cell_mismatches.push_back({p, q, e1, relative});
      }
    }
  }

  // d_1 against the connecting map of (Y_{p+1}, Y_p, Y_{p-1}): project a cell
  // generator to the relative pair at p, lift by zero-extension, apply the
  // ambient differential, read off the class in the relative pair at p+1.
  for (int p = -ff.flag.depth(); p < 0; ++p) {
    for (int n = k.min_degree(); n < k.max_degree(); ++n) {
      const int q = n - p;
      const QuotientPresentation* src = ss.cell(1, p, q);
      if (!src) continue;
      const RelativeComplex& rp = rel.at(p);
      const RelativeComplex& rp1 = rel.at(p + 1);
      QuotientPresentation hp = rp.complex->cohomology_presentation(n);
      QuotientPresentation hp1 = rp1.complex->cohomology_presentation(n + 1);

      IntMatrix engine = ss.differential_matrix(1, p, q);
      const QuotientPresentation* tgt = ss.cell(1, p + 1, q);

      for (std::size_t j = 0; j < src->coord_count(); ++j) {
        const auto& g = src->generator_reps()[j];
        // triple path
        std::vector<Int> local = rp.project(n, g);
        std::vector<Int> lifted = rp.extend_by_zero(n, local, k.rank(n));
        std::vector<Int> dg = k.differential(n).apply(lifted);
        std::vector<Int> triple = hp1.coords(rp1.project(n + 1, dg));
        // engine path, transported through the canonical projection
        std::vector<Int> engine_coords(hp1.coord_count(), Int(0));
        if (tgt) {
          std::vector<Int> dsrc = engine.column(j);
          for (std::size_t i = 0; i < tgt->coord_count(); ++i) {
            std::vector<Int> inc = hp1.coords(
                rp1.project(n + 1, tgt->generator_reps()[i]));
            for (std::size_t t = 0; t < engine_coords.size(); ++t)
              engine_coords[t] += dsrc[i] * inc[t];
          }
        }
        std::vector<Int> diff(triple.size());
        for (std::size_t t = 0; t < diff.size(); ++t)
          diff[t] = triple[t] - engine_coords[t];
        bool zero = true;
        for (const Int& v : hp1.reduce(std::move(diff)))
          if (v != 0) zero = false;
        if (!zero) {
          report.pass = false;
          std::ostringstream os;
          os << "generator " << j << " disagrees with the triple map";
          report.map_mismatches.push_back({p, q, os.str()});
        }
      }
    }
  }
  return report;
}

PushforwardComparison pushforward_flag_comparison(
    const SimplicialMap& f, const CellularSheafPtr& sheaf_on_source,
    const ClosedSubcomplexFlag& target_flag, Coefficients c) {
  f.ensure_valid();
  PushforwardComparison report;
  SheafModel m = build_sheaf_cochains(f.source, sheaf_on_source, c);
  ClosedSubcomplexFlag pre = preimage_flag(f, target_flag);
  FlaggedFiltration ff = flag_filtration_F(m, pre);

  KerFormulaReport ker = check_flag_ker_formula(ff);
  report.pass = ker.pass;
  report.mismatches = std::move(ker.mismatches);

  FilteredComplex dec = decale(ff.filtration);
  const CochainComplex& k = *m.complex;
  for (int l = k.min_degree(); l <= k.max_degree(); ++l) {
    CohomologyFiltration ab = induced_filtration_on_cohomology(dec, l);
    for (int p = ab.window_lo() - 1; p <= ab.window_hi(); ++p) {
      AbelianGroup g = ab.graded(p);
      if (!g.is_trivial())
        report.shifted_graded_ranks[l][p] = g.free_rank;
    }
  }
  return report;
}

}  // namespace sseq
