#include "sseq/normal_forms.hpp"

#include <algorithm>
#include <sstream>

namespace sseq {

namespace {

// |a| < |b| comparison without temporaries.
bool abs_less(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

Int trunc_quot(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_quot(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<Int> SmithResult::invariant_factors() const {
  std::vector<Int> out;
  for (std::size_t k = 0; k < rank; ++k) out.push_back(d.at(k, k));
  return out;
}

SmithResult smith_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  SmithResult res;
  res.u = IntMatrix::identity(nr);
  res.v = IntMatrix::identity(nc);
  res.d = m;
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  const std::size_t kmax = std::min(nr, nc);
  std::size_t k = 0;
  while (k < kmax) {
    // Smallest-magnitude nonzero pivot in the trailing submatrix.
    std::size_t pi = nr, pj = nc;
    for (std::size_t i = k; i < nr; ++i)
      for (std::size_t j = k; j < nc; ++j) {
        const Int& x = d.at(i, j);
        if (x == 0) continue;
        if (pi == nr || abs_less(x, d.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi == nr) break;  // trailing submatrix is zero

    d.swap_rows(k, pi);
    u.swap_rows(k, pi);
    d.swap_cols(k, pj);
    v.swap_cols(k, pj);
    if (d.at(k, k) < 0) {
      d.negate_row(k);
      u.negate_row(k);
    }

    bool dirty = false;
    for (std::size_t i = k + 1; i < nr; ++i) {
      if (d.at(i, k) == 0) continue;
      Int q = trunc_quot(d.at(i, k), d.at(k, k));
      d.submul_row(i, k, q);
      u.submul_row(i, k, q);
      if (d.at(i, k) != 0) dirty = true;
    }
    for (std::size_t j = k + 1; j < nc; ++j) {
      if (d.at(k, j) == 0) continue;
      Int q = trunc_quot(d.at(k, j), d.at(k, k));
      d.submul_col(j, k, q);
      v.submul_col(j, k, q);
      if (d.at(k, j) != 0) dirty = true;
    }
    if (dirty) continue;  // pivot shrank; re-select

    // Row k and column k are clear. Enforce d_k | (every trailing entry);
    // folding a bad row into row k makes the next pivot their gcd.
    bool fixed = false;
    for (std::size_t i = k + 1; i < nr && !fixed; ++i)
      for (std::size_t j = k + 1; j < nc && !fixed; ++j) {
        if (d.at(i, j) % d.at(k, k) != 0) {
          d.add_row(k, i);
          u.add_row(k, i);
          fixed = true;
        }
      }
    if (fixed) continue;
    ++k;
  }

  res.rank = 0;
  for (std::size_t i = 0; i < kmax; ++i)
    if (res.d.at(i, i) != 0) ++res.rank;
  return res;
}

IntMatrix row_hermite(const IntMatrix& m) {
  IntMatrix r = m;
  const std::size_t nr = r.rows(), nc = r.cols();
  std::size_t prow = 0;
  for (std::size_t col = 0; col < nc && prow < nr; ++col) {
    while (true) {
      std::size_t best = nr;
      for (std::size_t i = prow; i < nr; ++i) {
        if (r.at(i, col) == 0) continue;
        if (best == nr || abs_less(r.at(i, col), r.at(best, col))) best = i;
      }
      if (best == nr) break;  // no pivot in this column
      r.swap_rows(prow, best);
      if (r.at(prow, col) < 0) r.negate_row(prow);
      bool clean = true;
      for (std::size_t i = prow + 1; i < nr; ++i) {
        if (r.at(i, col) == 0) continue;
        r.submul_row(i, prow, trunc_quot(r.at(i, col), r.at(prow, col)));
        if (r.at(i, col) != 0) clean = false;
      }
      if (!clean) continue;
      for (std::size_t i = 0; i < prow; ++i) {
        if (r.at(i, col) == 0) continue;
        r.submul_row(i, prow, floor_quot(r.at(i, col), r.at(prow, col)));
      }
      ++prow;
      break;
    }
  }
  IntMatrix out(prow, nc);
  for (std::size_t i = 0; i < prow; ++i)
    for (std::size_t j = 0; j < nc; ++j) out.at(i, j) = r.at(i, j);
  return out;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  const std::size_t nc = m.cols();
  IntMatrix gens(nc, nc - s.rank);
  for (std::size_t j = s.rank; j < nc; ++j)
    for (std::size_t i = 0; i < nc; ++i) gens.at(i, j - s.rank) = s.v.at(i, j);
  // Canonicalize: unique column Hermite basis of the kernel lattice.
  return row_hermite(gens.transpose()).transpose();
}

std::optional<std::vector<Int>> solve(const SmithResult& s,
                                      const std::vector<Int>& b) {
  const std::size_t nr = s.u.rows(), nc = s.v.rows();
  std::vector<Int> c = s.u.apply(b);
  std::vector<Int> y(nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (i < s.rank) {
      if (c[i] % s.d.at(i, i) != 0) return std::nullopt;
      y[i] = c[i] / s.d.at(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v.apply(y);
}

std::optional<std::vector<Int>> solve(const IntMatrix& m,
                                      const std::vector<Int>& b) {
  return solve(smith_normal_form(m), b);
}

AbelianGroup cokernel(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  AbelianGroup g;
  g.free_rank = m.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.d.at(i, i) >= 2) g.torsion.push_back(s.d.at(i, i));
  return g;
}

AbelianGroup diagonal_group(const std::vector<Int>& values) {
  IntMatrix diag(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) diag.at(i, i) = values[i];
  return cokernel(diag);
}

AbelianGroup direct_sum(const std::vector<AbelianGroup>& parts) {
  AbelianGroup out;
  std::vector<Int> torsion;
  for (const AbelianGroup& p : parts) {
    out.free_rank += p.free_rank;
    torsion.insert(torsion.end(), p.torsion.begin(), p.torsion.end());
  }
  AbelianGroup t = diagonal_group(torsion);
  out.torsion = t.torsion;
  return out;
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const Int& t : torsion) {
    if (!first) os << "+";
    os << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

}  // namespace sseq
