#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "sseq/cochain_complex.hpp"
#include "test_support.hpp"

using namespace sseq;
using test_support::Rng;

namespace {

ComplexPtr make_complex(int min_deg, std::vector<std::size_t> ranks,
                        std::vector<IntMatrix> diffs) {
  return std::make_shared<CochainComplex>(min_deg, std::move(ranks),
                                          std::move(diffs));
}

/// 0 -> Z -> Z -> 0 in degrees 0,1 with d = (x -> c*x).
ComplexPtr times(long c) {
  return make_complex(0, {1, 1}, {IntMatrix(1, 1, {c})});
}

/// Simplicial cochain complex of the hollow triangle (circle model):
/// vertices a,b,c; edges ab,ac,bc; d(f)(uv) = f(v) - f(u).
ComplexPtr hollow_triangle() {
  IntMatrix d(3, 3,
              {-1, 1, 0,
               -1, 0, 1,
               0, -1, 1});
  return make_complex(0, {3, 3}, {d});
}

/// Random bounded complex: each differential is built on top of the kernel of
/// the previous one, so d^2 = 0 by construction.
ComplexPtr random_complex(Rng& rng, int max_span = 4, std::size_t max_rank = 4) {
  int span = static_cast<int>(rng.uniform(1, max_span));
  int min_deg = static_cast<int>(rng.uniform(-2, 2));
  std::vector<std::size_t> ranks;
  for (int i = 0; i < span; ++i)
    ranks.push_back(static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_rank))));
  std::vector<IntMatrix> diffs;
  for (int i = 0; i + 1 < span; ++i) {
    if (i == 0) {
      diffs.push_back(test_support::random_matrix(rng, ranks[1], ranks[0], 3));
    } else {
      IntMatrix k = kernel_basis(diffs.back().transpose());  // rows must kill im(prev)
      IntMatrix r = test_support::random_matrix(rng, ranks[i + 1], k.cols(), 2);
      diffs.push_back(r * k.transpose());
    }
  }
  return make_complex(min_deg, std::move(ranks), std::move(diffs));
}

}  // namespace

TEST_CASE("validate") {
  CHECK(CochainComplex().validate().empty());
  CHECK(make_complex(0, {1, 1}, {IntMatrix::identity(1)})->validate().empty());

  // d^1 d^0 = 1: invalid, localized at degree 0.
  auto bad = make_complex(0, {1, 1, 1},
                          {IntMatrix::identity(1), IntMatrix::identity(1)});
  auto v = bad->validate();
  REQUIRE(v.size() == 1);
  CHECK(v[0].degree == 0);
  CHECK_THROWS_AS(bad->ensure_valid(), input_error);
}

TEST_CASE("cohomology of pinned complexes") {
  SUBCASE("multiplication by two") {
    auto c = times(2);
    CHECK(c->cohomology(0).is_trivial());
    CHECK(c->cohomology(1) == AbelianGroup{0, {2}});
    CHECK(c->cohomology(5).is_trivial());
  }
  SUBCASE("zero differentials give free cohomology of full rank") {
    auto c = make_complex(0, {1, 2, 1}, {IntMatrix(2, 1), IntMatrix(1, 2)});
    CHECK(c->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(c->cohomology(1) == AbelianGroup::free_of_rank(2));
    CHECK(c->cohomology(2) == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("circle") {
    auto c = hollow_triangle();
    // Oracle: the incidence matrix has rank 2, no torsion (unit minors),
    // so H^0 = Z^(3-2) and H^1 = Z^(3-2).
    SmithResult s = smith_normal_form(c->differential(0));
    REQUIRE(s.rank == 2);
    REQUIRE((s.invariant_factors() == std::vector<Int>{1, 1}));
    CHECK(c->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(c->cohomology(1) == AbelianGroup::free_of_rank(1));
  }
}

TEST_CASE("cohomology class map") {
  auto c = hollow_triangle();
  SUBCASE("zero cocycle maps to zero") {
    CHECK(c->cohomology_class(1, {Int(0), Int(0), Int(0)}) ==
          std::vector<Int>{0});
  }
  SUBCASE("coboundary maps to zero") {
    auto db = c->differential(0).apply({Int(1), Int(2), Int(-1)});
    auto cls = c->cohomology_class(1, db);
    for (const Int& x : cls) CHECK(x == 0);
  }
  SUBCASE("edge-dual cochain generates H^1 of the circle") {
    auto cls = c->cohomology_class(1, {Int(1), Int(0), Int(0)});
    REQUIRE(cls.size() == 1);
    Int a = cls[0];
    CHECK((a == 1 || a == -1));  // a generator
  }
  SUBCASE("non-cocycle rejected") {
    auto d = times(2);
    CHECK_THROWS_AS(d->cohomology_class(0, {Int(1)}), input_error);
  }
}

TEST_CASE("euler characteristic equals alternating cohomology rank") {
  Rng rng(8101);
  for (int iter = 0; iter < 40; ++iter) {
    auto c = random_complex(rng);
    REQUIRE(c->validate().empty());
    Int chi = 0;
    for (int l = c->min_degree(); l <= c->max_degree(); ++l) {
      Int term = static_cast<long>(c->cohomology(l).free_rank);
      if ((l % 2 + 2) % 2 == 1) term = -term;
      chi += term;
    }
    CHECK(chi == c->euler_characteristic());
  }
}

TEST_CASE("cohomology invariant under unimodular change of basis") {
  Rng rng(8102);
  for (int iter = 0; iter < 25; ++iter) {
    auto c = random_complex(rng, 3);
    // Conjugate every differential: d'_l = T_{l+1} d_l T_l^{-1}.
    std::vector<IntMatrix> t, tinv;
    for (int l = c->min_degree(); l <= c->max_degree(); ++l) {
      IntMatrix u = test_support::random_unimodular(rng, c->rank(l));
      t.push_back(u);
      SmithResult s = smith_normal_form(u);
      IntMatrix inv(u.rows(), u.cols());
      for (std::size_t j = 0; j < u.cols(); ++j) {
        std::vector<Int> e(u.rows());
        e[j] = 1;
        inv.set_column(j, *solve(s, e));
      }
      tinv.push_back(inv);
    }
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> diffs;
    for (int l = c->min_degree(); l <= c->max_degree(); ++l)
      ranks.push_back(c->rank(l));
    for (int l = c->min_degree(); l < c->max_degree(); ++l) {
      std::size_t i = static_cast<std::size_t>(l - c->min_degree());
      diffs.push_back(t[i + 1] * c->differential(l) * tinv[i]);
    }
    auto conj = make_complex(c->min_degree(), std::move(ranks), std::move(diffs));
    REQUIRE(conj->validate().empty());
    for (int l = c->min_degree(); l <= c->max_degree(); ++l)
      CHECK(c->cohomology(l) == conj->cohomology(l));
  }
}
