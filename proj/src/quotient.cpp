#include "sseq/quotient.hpp"

#include <stdexcept>

namespace sseq {

QuotientPresentation::QuotientPresentation(Subgroup num, Subgroup den,
                                           Coefficients c)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.ambient_rank() != den_.ambient_rank())
    throw std::invalid_argument("QuotientPresentation: ambient mismatch");
  num_snf_ = smith_normal_form(num_.basis());

  const std::size_t s = num_.rank();
  IntMatrix rel(s, den_.rank());
  for (std::size_t j = 0; j < den_.rank(); ++j) {
    auto u = solve(num_snf_, den_.basis().column(j));
    if (!u)
      throw std::invalid_argument(
          "QuotientPresentation: denominator not contained in numerator");
    rel.set_column(j, *u);
  }

  SmithResult rs = smith_normal_form(rel);
  rel_u_ = rs.u;
  diag_.assign(s, Int(0));
  for (std::size_t i = 0; i < rs.rank; ++i) diag_[i] = rs.d.at(i, i);

  // Retained coordinates: torsion (d_i >= 2) first in SNF order, then free.
  for (std::size_t i = 0; i < s; ++i)
    if (diag_[i] >= 2) {
      kept_.push_back(i);
      cls_.torsion.push_back(diag_[i]);
    }
  for (std::size_t i = 0; i < s; ++i)
    if (diag_[i] == 0) {
      kept_.push_back(i);
      ++cls_.free_rank;
    }

  // Representatives: columns of num basis * rel_u_^{-1} at the kept indices.
  if (!kept_.empty()) {
    SmithResult usnf = smith_normal_form(rel_u_);
    for (std::size_t idx : kept_) {
      std::vector<Int> e(s);
      e[idx] = 1;
      auto col = solve(usnf, e);
      if (!col)
        throw std::logic_error("QuotientPresentation: transform not unimodular");
      reps_.push_back(num_.basis().apply(*col));
    }
  }
  (void)c;
}

std::vector<Int> QuotientPresentation::reduce(std::vector<Int> raw) const {
  if (raw.size() != kept_.size())
    throw std::invalid_argument("QuotientPresentation: bad coordinate length");
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const Int& d = diag_[kept_[k]];
    if (d >= 2) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), raw[k].get_mpz_t(), d.get_mpz_t());
      raw[k] = r;
    }
  }
  return raw;
}

std::vector<Int> QuotientPresentation::coords(
    const std::vector<Int>& ambient_elt) const {
  auto u = solve(num_snf_, ambient_elt);
  if (!u)
    throw std::invalid_argument(
        "QuotientPresentation: element outside the numerator");
  std::vector<Int> w = rel_u_.apply(*u);
  std::vector<Int> out;
  out.reserve(kept_.size());
  for (std::size_t idx : kept_) out.push_back(w[idx]);
  return reduce(std::move(out));
}

bool QuotientPresentation::zero_class(
    const std::vector<Int>& ambient_elt) const {
  for (const Int& v : coords(ambient_elt))
    if (v != 0) return false;
  return true;
}

}  // namespace sseq
