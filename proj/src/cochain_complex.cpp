#include "sseq/cochain_complex.hpp"

#include <sstream>

namespace sseq {

CochainComplex::CochainComplex(int min_degree, std::vector<std::size_t> ranks,
                               std::vector<IntMatrix> differentials,
                               Coefficients c)
    : min_deg_(min_degree),
      ranks_(std::move(ranks)),
      diffs_(std::move(differentials)),
      coeffs_(c) {
  if (!ranks_.empty() && diffs_.size() + 1 != ranks_.size())
    throw input_error("CochainComplex: need one differential per degree pair");
  if (ranks_.empty() && !diffs_.empty())
    throw input_error("CochainComplex: differentials on an empty complex");
}

std::size_t CochainComplex::rank(int l) const {
  if (l < min_deg_ || l > max_degree()) return 0;
  return ranks_[static_cast<std::size_t>(l - min_deg_)];
}

IntMatrix CochainComplex::differential(int l) const {
  if (l >= min_deg_ && l < max_degree())
    return diffs_[static_cast<std::size_t>(l - min_deg_)];
  return IntMatrix(rank(l + 1), rank(l));
}

std::vector<CochainComplex::Violation> CochainComplex::validate() const {
  std::vector<Violation> out;
  for (int l = min_deg_; l < max_degree(); ++l) {
    const IntMatrix& d = diffs_[static_cast<std::size_t>(l - min_deg_)];
    if (d.rows() != rank(l + 1) || d.cols() != rank(l)) {
      std::ostringstream os;
      os << "differential at degree " << l << " has shape " << d.rows() << "x"
         << d.cols() << ", expected " << rank(l + 1) << "x" << rank(l);
      out.push_back({l, os.str()});
    }
  }
  if (!out.empty()) return out;  // d*d not meaningful on bad shapes
  for (int l = min_deg_; l + 1 < max_degree(); ++l) {
    if (!(differential(l + 1) * differential(l)).is_zero()) {
      std::ostringstream os;
      os << "d^" << l + 1 << " composed with d^" << l << " is nonzero";
      out.push_back({l, os.str()});
    }
  }
  return out;
}

void CochainComplex::ensure_valid() const {
  auto v = validate();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid cochain complex:";
  for (const auto& viol : v) os << " [degree " << viol.degree << "] " << viol.what;
  throw input_error(os.str());
}

Subgroup CochainComplex::cocycles(int l) const {
  if (l >= min_deg_ && l < max_degree())
    return Subgroup::from_columns(rank(l), kernel_basis(differential(l)),
                                  coeffs_);
  return full_subgroup(l);
}

Subgroup CochainComplex::coboundaries(int l) const {
  if (l > min_deg_ && l <= max_degree())
    return image(differential(l - 1), full_subgroup(l - 1), coeffs_);
  return zero_subgroup(l);
}

QuotientPresentation CochainComplex::cohomology_presentation(int l) const {
  return QuotientPresentation(cocycles(l), coboundaries(l), coeffs_);
}

AbelianGroup CochainComplex::cohomology(int l) const {
  return cohomology_presentation(l).group();
}

std::vector<Int> CochainComplex::cohomology_class(
    int l, const std::vector<Int>& cocycle) const {
  if (cocycle.size() != rank(l))
    throw input_error("cohomology_class: wrong vector length");
  auto dx = differential(l).apply(cocycle);
  for (const Int& v : dx)
    if (v != 0) throw input_error("cohomology_class: not a cocycle");
  return cohomology_presentation(l).coords(cocycle);
}

Int CochainComplex::euler_characteristic() const {
  Int chi = 0;
  for (int l = min_deg_; l <= max_degree(); ++l) {
    Int term = static_cast<long>(rank(l));
    if ((l % 2 + 2) % 2 == 1) term = -term;
    chi += term;
  }
  return chi;
}

}  // namespace sseq
