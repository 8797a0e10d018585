#include "sseq/subquotient_complex.hpp"

namespace sseq {

SubquotientComplex::SubquotientComplex(
    ComplexPtr base, std::map<int, std::pair<Subgroup, Subgroup>> layers)
    : base_(std::move(base)), layers_(std::move(layers)) {
  for (const auto& [l, pair] : layers_) {
    if (pair.first.ambient_rank() != base_->rank(l) ||
        pair.second.ambient_rank() != base_->rank(l))
      throw input_error("SubquotientComplex: layer ambient mismatch");
    if (!contains(pair.first, pair.second))
      throw input_error("SubquotientComplex: denominator not inside numerator");
  }
}

const Subgroup& SubquotientComplex::numerator(int l) const {
  auto it = layers_.find(l);
  if (it != layers_.end()) return it->second.first;
  auto& z = zero_cache_[l];
  z.first = Subgroup::zero(base_->rank(l));
  z.second = z.first;
  return z.first;
}

const Subgroup& SubquotientComplex::denominator(int l) const {
  auto it = layers_.find(l);
  if (it != layers_.end()) return it->second.second;
  numerator(l);  // populate cache
  return zero_cache_[l].second;
}

AbelianGroup SubquotientComplex::group_at(int l) const {
  return subquotient(numerator(l), denominator(l), base_->coefficients());
}

QuotientPresentation SubquotientComplex::cohomology_presentation(int l) const {
  const Coefficients c = base_->coefficients();
  Subgroup z = preimage(base_->differential(l), numerator(l),
                        denominator(l + 1), c);
  Subgroup b = subgroup_sum(
      denominator(l), image(base_->differential(l - 1), numerator(l - 1), c),
      c);
  return QuotientPresentation(std::move(z), std::move(b), c);
}

AbelianGroup SubquotientComplex::cohomology(int l) const {
  return cohomology_presentation(l).group();
}

bool SubquotientComplex::is_zero() const {
  for (const auto& [l, pair] : layers_)
    if (!(pair.first == pair.second)) return false;
  return true;
}

Int SubquotientComplex::euler_characteristic() const {
  Int chi = 0;
  for (const auto& [l, pair] : layers_) {
    Int term = static_cast<long>(group_at(l).free_rank);
    if ((l % 2 + 2) % 2 == 1) term = -term;
    chi += term;
  }
  return chi;
}

std::vector<std::string> SubquotientComplex::validate() const {
  std::vector<std::string> out;
  const Coefficients c = base_->coefficients();
  for (const auto& [l, pair] : layers_) {
    const IntMatrix d = base_->differential(l);
    if (!contains(numerator(l + 1), image(d, pair.first, c)))
      out.push_back("numerator not d-stable at degree " + std::to_string(l));
    if (!contains(denominator(l + 1), image(d, pair.second, c)))
      out.push_back("denominator not d-stable at degree " + std::to_string(l));
  }
  return out;
}

bool SubquotientComplex::operator==(const SubquotientComplex& other) const {
  if (base_->min_degree() != other.base_->min_degree() ||
      base_->max_degree() != other.base_->max_degree())
    return false;
  for (int l = base_->min_degree(); l <= base_->max_degree(); ++l) {
    if (!(numerator(l) == other.numerator(l)) ||
        !(denominator(l) == other.denominator(l)))
      return false;
  }
  return true;
}

}  // namespace sseq
