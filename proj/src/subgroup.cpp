#include "sseq/subgroup.hpp"

#include <stdexcept>

namespace sseq {

namespace {

void check_same_ambient(const Subgroup& a, const Subgroup& b,
                        const char* what) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument(std::string(what) + ": ambient rank mismatch");
}

IntMatrix canonical_column_basis(const IntMatrix& cols) {
  return row_hermite(cols.transpose()).transpose();
}

}  // namespace

Subgroup Subgroup::from_columns(std::size_t ambient, const IntMatrix& cols,
                                Coefficients c) {
  if (cols.rows() != ambient)
    throw std::invalid_argument("Subgroup: generator row count != ambient");
  Subgroup s;
  s.ambient_ = ambient;
  s.basis_ = canonical_column_basis(cols);
  if (c == Coefficients::rationals) s = saturate(s);
  return s;
}

Subgroup Subgroup::zero(std::size_t ambient) {
  Subgroup s;
  s.ambient_ = ambient;
  s.basis_ = IntMatrix(ambient, 0);
  return s;
}

Subgroup Subgroup::full(std::size_t ambient) {
  Subgroup s;
  s.ambient_ = ambient;
  s.basis_ = IntMatrix::identity(ambient);
  return s;
}

bool Subgroup::is_full() const {
  return basis_.cols() == ambient_ && basis_ == IntMatrix::identity(ambient_);
}

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b, Coefficients c) {
  check_same_ambient(a, b, "subgroup_sum");
  return Subgroup::from_columns(a.ambient_rank(), a.basis().hstack(b.basis()),
                                c);
}

Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b,
                               Coefficients c) {
  check_same_ambient(a, b, "subgroup_intersection");
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  if (a.is_zero() || b.is_zero()) return Subgroup::zero(a.ambient_rank());
  // Solutions of  A x = B y  give the intersection as { A x }.
  IntMatrix neg_b = b.basis();
  for (std::size_t i = 0; i < neg_b.rows(); ++i)
    for (std::size_t j = 0; j < neg_b.cols(); ++j)
      neg_b.at(i, j) = -neg_b.at(i, j);
  IntMatrix ker = kernel_basis(a.basis().hstack(neg_b));
  IntMatrix xpart(a.rank(), ker.cols());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) xpart.at(i, j) = ker.at(i, j);
  return Subgroup::from_columns(a.ambient_rank(), a.basis() * xpart, c);
}

bool contains(const Subgroup& a, const Subgroup& b) {
  check_same_ambient(a, b, "contains");
  return subgroup_sum(a, b) == a;
}

bool contains_element(const Subgroup& a, const std::vector<Int>& x) {
  if (x.size() != a.ambient_rank())
    throw std::invalid_argument("contains_element: dimension mismatch");
  return solve(a.basis(), x).has_value();
}

Subgroup image(const IntMatrix& f, const Subgroup& s, Coefficients c) {
  if (f.cols() != s.ambient_rank())
    throw std::invalid_argument("image: shape mismatch");
  return Subgroup::from_columns(f.rows(), f * s.basis(), c);
}

Subgroup preimage(const IntMatrix& f, const Subgroup& domain,
                  const Subgroup& target, Coefficients c) {
  if (f.cols() != domain.ambient_rank() || f.rows() != target.ambient_rank())
    throw std::invalid_argument("preimage: shape mismatch");
  if (target.is_full()) return domain;
  // { u : (f * Bd) u = Bt w } via the kernel of [f*Bd | -Bt].
  IntMatrix n = f * domain.basis();
  IntMatrix neg_t = target.basis();
  for (std::size_t i = 0; i < neg_t.rows(); ++i)
    for (std::size_t j = 0; j < neg_t.cols(); ++j)
      neg_t.at(i, j) = -neg_t.at(i, j);
  IntMatrix ker = kernel_basis(n.hstack(neg_t));
  IntMatrix upart(domain.rank(), ker.cols());
  for (std::size_t i = 0; i < domain.rank(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) upart.at(i, j) = ker.at(i, j);
  return Subgroup::from_columns(domain.ambient_rank(),
                                domain.basis() * upart, c);
}

Subgroup saturate(const Subgroup& s) {
  if (s.rank() == s.ambient_rank() || s.is_zero()) {
    // Full-rank sublattices saturate to the whole module; zero stays zero.
    if (s.rank() == s.ambient_rank() && !s.is_full())
      return Subgroup::full(s.ambient_rank());
    return s;
  }
  // sat(L) = ker(C^T) where the columns of C span { y : y^T B = 0 }.
  IntMatrix c = kernel_basis(s.basis().transpose());
  IntMatrix sat = kernel_basis(c.transpose());
  return Subgroup::from_columns(s.ambient_rank(), sat);
}

AbelianGroup subquotient(const Subgroup& a, const Subgroup& b,
                         Coefficients c) {
  check_same_ambient(a, b, "subquotient");
  SmithResult abasis = smith_normal_form(a.basis());
  IntMatrix rel(a.rank(), b.rank());
  for (std::size_t j = 0; j < b.rank(); ++j) {
    auto u = solve(abasis, b.basis().column(j));
    if (!u) throw std::invalid_argument("subquotient: b not contained in a");
    rel.set_column(j, *u);
  }
  (void)c;  // saturated inputs already make the quotient torsion-free
  return cokernel(rel);
}

}  // namespace sseq
