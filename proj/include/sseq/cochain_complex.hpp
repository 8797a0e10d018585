#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sseq/quotient.hpp"
#include "sseq/subgroup.hpp"

namespace sseq {

/// Input or structural defect, mapped by the CLI to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bounded cochain complex of finitely generated free modules,
/// degrees min_degree()..max_degree() inclusive, with d^{l+1} d^l = 0.
/// An empty complex has max_degree() == min_degree() - 1.
class CochainComplex {
 public:
  CochainComplex() = default;
  CochainComplex(int min_degree, std::vector<std::size_t> ranks,
                 std::vector<IntMatrix> differentials,
                 Coefficients c = Coefficients::integers);

  int min_degree() const { return min_deg_; }
  int max_degree() const { return min_deg_ + static_cast<int>(ranks_.size()) - 1; }
  bool empty() const { return ranks_.empty(); }
  Coefficients coefficients() const { return coeffs_; }

  std::size_t rank(int l) const;
  /// d^l : C^l -> C^{l+1}; zero-shaped outside the degree range.
  IntMatrix differential(int l) const;

  bool operator==(const CochainComplex&) const = default;

  struct Violation {
    int degree;
    std::string what;
  };
  std::vector<Violation> validate() const;
  void ensure_valid() const;  // throws input_error listing violations

  Subgroup full_subgroup(int l) const { return Subgroup::full(rank(l)); }
  Subgroup zero_subgroup(int l) const { return Subgroup::zero(rank(l)); }
  Subgroup cocycles(int l) const;
  Subgroup coboundaries(int l) const;

  QuotientPresentation cohomology_presentation(int l) const;
  AbelianGroup cohomology(int l) const;
  /// Coordinates of a cocycle's class in cohomology_presentation(l).
  /// Throws if the vector is not a cocycle.
  std::vector<Int> cohomology_class(int l, const std::vector<Int>& cocycle) const;

  Int euler_characteristic() const;

 private:
  int min_deg_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<IntMatrix> diffs_;  // diffs_[i] : ranks_[i+1] x ranks_[i]
  Coefficients coeffs_ = Coefficients::integers;
};

using ComplexPtr = std::shared_ptr<const CochainComplex>;

}  // namespace sseq
