#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sseq/random_corpus.hpp"
#include "sseq/sheaf_model.hpp"

using namespace sseq;

namespace {

SimplicialComplexPtr from_simplices(std::vector<std::vector<std::string>> s) {
  return std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_simplices(s));
}

SimplicialComplexPtr point() { return from_simplices({{"p"}}); }

SimplicialComplexPtr hollow_triangle() {
  return from_simplices({{"a", "b"}, {"a", "c"}, {"b", "c"}});
}

SimplicialComplexPtr solid_triangle() {
  return from_simplices({{"a", "b", "c"}});
}

SimplicialComplexPtr octahedron() {
  return from_simplices({{"n", "e1", "e2"}, {"n", "e2", "e3"},
                         {"n", "e3", "e4"}, {"n", "e4", "e1"},
                         {"s", "e1", "e2"}, {"s", "e2", "e3"},
                         {"s", "e3", "e4"}, {"s", "e4", "e1"}});
}

std::string tv(int i, int j) {
  return "t" + std::to_string((i % 3 + 3) % 3) + std::to_string((j % 3 + 3) % 3);
}

/// 9-vertex product triangulation of the torus.
SimplicialComplexPtr torus9() {
  std::vector<std::vector<std::string>> faces;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      faces.push_back({tv(i, j), tv(i + 1, j), tv(i + 1, j + 1)});
      faces.push_back({tv(i, j), tv(i, j + 1), tv(i + 1, j + 1)});
    }
  return from_simplices(faces);
}

/// Minimal 6-vertex triangulation of the real projective plane.
SimplicialComplexPtr rp2() {
  return from_simplices({{"1", "2", "5"}, {"1", "2", "6"}, {"1", "3", "4"},
                         {"1", "3", "6"}, {"1", "4", "5"}, {"2", "3", "4"},
                         {"2", "3", "5"}, {"2", "4", "6"}, {"3", "5", "6"},
                         {"4", "5", "6"}});
}

SheafModel constant_model(const SimplicialComplexPtr& x, std::size_t rank = 1) {
  auto sheaf = std::make_shared<CellularSheaf>(CellularSheaf::constant(x, rank));
  return build_sheaf_cochains(x, sheaf);
}

/// Independent cohomology oracle straight from the incidence matrices:
/// free rank from a rank count, torsion from the invariant factors of the
/// incoming differential. Bypasses the subgroup/quotient pipeline.
AbelianGroup rank_oracle(const CochainComplex& c, int l) {
  SmithResult below = smith_normal_form(c.differential(l - 1));
  SmithResult here = smith_normal_form(c.differential(l));
  AbelianGroup g;
  g.free_rank = c.rank(l) - here.rank - below.rank;
  for (std::size_t i = 0; i < below.rank; ++i)
    if (below.d.at(i, i) >= 2) g.torsion.push_back(below.d.at(i, i));
  return g;
}

ClosedSubcomplexFlag one_vertex_flag(const SimplicialComplexPtr& x,
                                     const std::string& label) {
  ClosedSubcomplexFlag flag;
  flag.ambient = x;
  auto mask = x->empty_mask();
  mask[*x->find_by_labels({label})] = 1;
  flag.steps.push_back(mask);
  return flag;
}

}  // namespace

TEST_CASE("sheaf cochains: pinned instances") {
  SUBCASE("constant sheaf on a point") {
    SheafModel m = constant_model(point());
    CHECK(m.complex->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(m.complex->cohomology(1).is_trivial());
  }
  SUBCASE("constant sheaf on the circle") {
    SheafModel m = constant_model(hollow_triangle());
    CHECK(m.complex->rank(0) == 3);
    CHECK(m.complex->rank(1) == 3);
    CHECK(m.complex->cohomology(0) == rank_oracle(*m.complex, 0));
    CHECK(m.complex->cohomology(1) == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("rank zero sheaf") {
    SheafModel m = constant_model(hollow_triangle(), 0);
    CHECK(m.complex->rank(0) == 0);
    CHECK(m.complex->rank(1) == 0);
  }
}

TEST_CASE("surface cohomology against the rank oracle") {
  SUBCASE("octahedron sphere") {
    SheafModel m = constant_model(octahedron());
    CHECK(m.complex->rank(0) == 6);
    CHECK(m.complex->rank(1) == 12);
    CHECK(m.complex->rank(2) == 8);
    for (int l = 0; l <= 2; ++l)
      CHECK(m.complex->cohomology(l) == rank_oracle(*m.complex, l));
    CHECK(m.complex->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(m.complex->cohomology(1).is_trivial());
    CHECK(m.complex->cohomology(2) == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("nine vertex torus") {
    SheafModel m = constant_model(torus9());
    CHECK(m.complex->rank(0) == 9);
    CHECK(m.complex->rank(1) == 27);
    CHECK(m.complex->rank(2) == 18);
    CHECK(m.complex->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(m.complex->cohomology(1) == AbelianGroup::free_of_rank(2));
    CHECK(m.complex->cohomology(2) == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("six vertex projective plane") {
    SheafModel m = constant_model(rp2());
    CHECK(m.complex->rank(0) == 6);
    CHECK(m.complex->rank(1) == 15);
    CHECK(m.complex->rank(2) == 10);
    CHECK(m.complex->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(m.complex->cohomology(1).is_trivial());
    CHECK(m.complex->cohomology(2) == AbelianGroup{0, {2}});
    for (int l = 0; l <= 2; ++l)
      CHECK(m.complex->cohomology(l) == rank_oracle(*m.complex, l));
  }
}

TEST_CASE("flag filtration F") {
  SUBCASE("empty first step gives the trivial filtration") {
    auto x = hollow_triangle();
    ClosedSubcomplexFlag flag{x, {x->empty_mask()}};
    auto ff = flag_filtration_F(constant_model(x), flag);
    CHECK(ff.filtration.same_filtration(
        FilteredComplex::trivial(ff.model.complex, 0)));
  }
  SUBCASE("circle with a marked vertex") {
    auto x = hollow_triangle();
    auto ff = flag_filtration_F(constant_model(x), one_vertex_flag(x, "a"));
    CHECK(ff.filtration.validate().empty());
    auto type = filtration_type(ff.filtration);
    REQUIRE(type.has_value());
    CHECK((*type)[0] >= -1);
    CHECK((*type)[1] <= 0);
    // Abutment: F^0 H^0 = Ker(H^0 -> H^0(pt)) = 0, F^0 H^1 = H^1.
    CohomologyFiltration h0 = induced_filtration_on_cohomology(ff.filtration, 0);
    CohomologyFiltration h1 = induced_filtration_on_cohomology(ff.filtration, 1);
    CHECK(h0.piece(0).is_trivial());
    CHECK(h0.piece(-1) == AbelianGroup::free_of_rank(1));
    CHECK(h1.piece(0) == AbelianGroup::free_of_rank(1));
    CHECK(h1.piece(1).is_trivial());
    CHECK(check_flag_ker_formula(ff).pass);
  }
  SUBCASE("ker formula on random flags over random 2-complexes") {
    Rng rng(7501);
    for (int iter = 0; iter < 10; ++iter) {
      auto x = random_two_complex(rng);
      auto flag = random_flag(rng, x);
      auto ff = flag_filtration_F(constant_model(x), flag);
      REQUIRE(ff.filtration.validate().empty());
      CHECK(check_flag_ker_formula(ff).pass);
    }
  }
}

TEST_CASE("support filtration G") {
  auto x = hollow_triangle();
  SheafModel m = constant_model(x);
  SUBCASE("whole complex is the trivial filtration") {
    ClosedSubcomplexFlag flag{x, {x->full_mask()}};
    auto g = support_filtration_G(m, flag);
    CHECK(g.filtration.step(1, 0).is_full());
    CHECK(g.filtration.step(1, 1).is_full());
    CHECK(g.filtration.step(2, 1).is_zero());
  }
  SUBCASE("one vertex computes local cohomology of the circle at a point") {
    auto g = support_filtration_G(m, one_vertex_flag(x, "a"));
    CHECK(g.filtration.validate().empty());
    SubquotientComplex gr1 = graded_piece(g.filtration, 1);
    // H^*(S^1, S^1 - pt): Z in degree 1 only.
    CHECK(gr1.cohomology(0).is_trivial());
    CHECK(gr1.cohomology(1) == AbelianGroup::free_of_rank(1));
    auto type = filtration_type(g.filtration);
    REQUIRE(type.has_value());
    CHECK((*type)[0] >= 0);
    CHECK((*type)[1] <= 1);
  }
  SUBCASE("empty step gives the zero subcomplex") {
    ClosedSubcomplexFlag flag{x, {x->empty_mask()}};
    auto g = support_filtration_G(m, flag);
    CHECK(g.filtration.step(1, 0).is_zero());
    CHECK(g.filtration.step(1, 1).is_zero());
  }
}

TEST_CASE("relative cohomology") {
  SUBCASE("empty subcomplex gives absolute cohomology") {
    SheafModel m = constant_model(hollow_triangle());
    auto h = relative_cohomology(m, m.space->empty_mask());
    CHECK(h[0] == AbelianGroup::free_of_rank(1));
    CHECK(h[1] == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("disk modulo boundary") {
    auto x = solid_triangle();
    SheafModel m = constant_model(x);
    auto boundary = x->skeleton_mask(1);
    auto h = relative_cohomology(m, boundary);
    CHECK(h[0].is_trivial());
    CHECK(h[1].is_trivial());
    CHECK(h[2] == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("everything gives zero") {
    SheafModel m = constant_model(hollow_triangle());
    auto h = relative_cohomology(m, m.space->full_mask());
    CHECK(h[0].is_trivial());
    CHECK(h[1].is_trivial());
  }
}

TEST_CASE("preimage flags") {
  auto t = torus9();
  auto s1 = hollow_triangle();
  // projection (i, j) -> i: vertex tij -> a/b/c by first coordinate
  std::vector<int> img(t->vertex_labels().size());
  for (std::size_t v = 0; v < t->vertex_labels().size(); ++v) {
    char c = t->vertex_labels()[v][1];  // 't' i j
    std::string target(1, static_cast<char>('a' + (c - '0')));
    auto it = std::lower_bound(s1->vertex_labels().begin(),
                               s1->vertex_labels().end(), target);
    img[v] = static_cast<int>(it - s1->vertex_labels().begin());
  }
  SimplicialMap proj{t, s1, img};
  REQUIRE(proj.validate().empty());

  SUBCASE("identity map preserves flags") {
    std::vector<int> id_img(s1->vertex_labels().size());
    for (std::size_t v = 0; v < id_img.size(); ++v)
      id_img[v] = static_cast<int>(v);
    SimplicialMap ident{s1, s1, id_img};
    auto flag = one_vertex_flag(s1, "a");
    auto pre = preimage_flag(ident, flag);
    CHECK(pre.steps[0] == flag.steps[0]);
  }
  SUBCASE("fiber of a vertex is a circle subcomplex") {
    auto pre = preimage_flag(proj, one_vertex_flag(s1, "a"));
    // fiber over 'a' = vertices t0j and edges between them: 3 + 3 simplices
    std::size_t count = 0;
    for (char c : pre.steps[0]) count += (c != 0);
    CHECK(count == 6);
    ClosedSubcomplexFlag fiber = pre;
    CHECK(fiber.validate().empty());
    SheafModel fm = constant_model(t);
    RelativeComplex sub = relative_complex(fm, pre.steps[0], t->empty_mask());
    CHECK(sub.complex->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(sub.complex->cohomology(1) == AbelianGroup::free_of_rank(1));
  }
  SUBCASE("constant map misses the flag") {
    std::vector<int> const_img(s1->vertex_labels().size(), 0);  // all to 'a'
    SimplicialMap cmap{s1, s1, const_img};
    REQUIRE(cmap.validate().empty());
    auto pre = preimage_flag(cmap, one_vertex_flag(s1, "b"));
    for (char c : pre.steps[0]) CHECK(c == 0);
  }
}

TEST_CASE("pushforward flag comparison: torus over circle") {
  auto t = torus9();
  auto s1 = hollow_triangle();
  std::vector<int> img(t->vertex_labels().size());
  for (std::size_t v = 0; v < t->vertex_labels().size(); ++v) {
    char c = t->vertex_labels()[v][1];
    std::string target(1, static_cast<char>('a' + (c - '0')));
    auto it = std::lower_bound(s1->vertex_labels().begin(),
                               s1->vertex_labels().end(), target);
    img[v] = static_cast<int>(it - s1->vertex_labels().begin());
  }
  SimplicialMap proj{t, s1, img};
  auto sheaf = std::make_shared<CellularSheaf>(CellularSheaf::constant(t, 1));
  auto rep = pushforward_flag_comparison(proj, sheaf,
                                         one_vertex_flag(s1, "a"));
  CHECK(rep.pass);
  // Kunneth oracle: graded ranks (1, 1) on H^1 at shifted steps -2, -1 and
  // rank 1 on H^2 at shifted step -2.
  CHECK(rep.shifted_graded_ranks[1][-2] == 1);
  CHECK(rep.shifted_graded_ranks[1][-1] == 1);
  CHECK(rep.shifted_graded_ranks[2][-2] == 1);
  CHECK(rep.shifted_graded_ranks[1].size() == 2);
  CHECK(rep.shifted_graded_ranks[2].size() == 1);
}

TEST_CASE("skeletal flags and filtration") {
  SUBCASE("point") {
    auto flag = skeletal_flag(point(), 0);
    CHECK(flag.depth() == 0);
  }
  SUBCASE("hollow triangle: Y_{-1} is the vertex set") {
    auto x = hollow_triangle();
    auto flag = skeletal_flag(x, 1);
    REQUIRE(flag.depth() == 1);
    CHECK(flag.steps[0] == x->skeleton_mask(0));
  }
  SUBCASE("octahedron: three-step flag, cellular vanishing, E_1 ranks") {
    auto x = octahedron();
    auto flag = skeletal_flag(x, 2);
    CHECK(flag.depth() == 2);
    SheafModel m = constant_model(x);
    FilteredComplex skel = skeletal_filtration(m);
    CHECK(check_cellular_vanishing(skel, CellularSide::left).pass());
    SpectralSequence ss(skel);
    CHECK(ss.group(1, 0, 0) == AbelianGroup::free_of_rank(6));
    CHECK(ss.group(1, 1, 0) == AbelianGroup::free_of_rank(12));
    CHECK(ss.group(1, 2, 0) == AbelianGroup::free_of_rank(8));
    CHECK(ss.differential_matrix(1, 0, 0) == m.complex->differential(0));
    CHECK(ss.differential_matrix(1, 1, 0) == m.complex->differential(1));
  }
}

TEST_CASE("e1 cells and d1 against triples") {
  SUBCASE("one-step flag is vacuous") {
    auto x = hollow_triangle();
    ClosedSubcomplexFlag flag{x, {}};
    auto ff = flag_filtration_F(constant_model(x), flag);
    auto rep = check_e1_triples(ff);
    CHECK(rep.pass);
  }
  SUBCASE("skeletal flag of the hollow triangle") {
    auto x = hollow_triangle();
    auto ff = flag_filtration_F(constant_model(x), skeletal_flag(x, 1));
    auto rep = check_e1_triples(ff);
    CHECK(rep.pass);
  }
  SUBCASE("torus with a two-step flag") {
    auto t = torus9();
    ClosedSubcomplexFlag flag;
    flag.ambient = t;
    // Y_{-1} = fiber circle over 'a', Y_{-2} = one vertex of it.
    auto fiber = t->empty_mask();
    for (int j = 0; j < 3; ++j) {
      fiber[*t->find_by_labels({tv(0, j)})] = 1;
      fiber[*t->find_by_labels({tv(0, j), tv(0, j + 1)})] = 1;
    }
    flag.steps.push_back(t->close_mask(fiber));
    auto pt = t->empty_mask();
    pt[*t->find_by_labels({tv(0, 0)})] = 1;
    flag.steps.push_back(pt);
    flag.ensure_valid();
    auto ff = flag_filtration_F(constant_model(t), flag);
    auto rep = check_e1_triples(ff);
    CHECK(rep.pass);
    if (!rep.pass) {
      for (auto& cm : rep.cell_mismatches)
        MESSAGE("cell (", cm.p, ",", cm.q, "): ", cm.e1.to_string(), " vs ",
                cm.relative.to_string());
      for (auto& mm : rep.map_mismatches)
        MESSAGE("map (", mm.p, ",", mm.q, "): ", mm.what);
    }
  }
  SUBCASE("random flags") {
    Rng rng(7502);
    for (int iter = 0; iter < 6; ++iter) {
      auto x = random_two_complex(rng);
      auto flag = random_flag(rng, x);
      auto ff = flag_filtration_F(constant_model(x), flag);
      CHECK(check_e1_triples(ff).pass);
    }
  }
}

TEST_CASE("barycentric subdivision") {
  SUBCASE("hollow triangle subdivides to a hexagon") {
    auto sub = barycentric_subdivision(hollow_triangle());
    CHECK(sub.complex->simplices_of_dim(0).size() == 6);
    CHECK(sub.complex->simplices_of_dim(1).size() == 6);
  }
  SUBCASE("subdivision preserves cohomology including torsion") {
    auto x = rp2();
    auto sub = barycentric_subdivision(x);
    auto pulled = std::make_shared<CellularSheaf>(
        sub.pullback(CellularSheaf::constant(x, 1)));
    SheafModel m = build_sheaf_cochains(sub.complex, pulled);
    CHECK(m.complex->cohomology(0) == AbelianGroup::free_of_rank(1));
    CHECK(m.complex->cohomology(1).is_trivial());
    CHECK(m.complex->cohomology(2) == AbelianGroup{0, {2}});
  }
}

TEST_CASE("diagonal filtration of two flags stays within the combined type") {
  auto x = hollow_triangle();
  SheafModel m = constant_model(x);
  auto y = one_vertex_flag(x, "a");
  auto z = one_vertex_flag(x, "b");
  DeltaInputs d = delta_inputs(m, y, z);
  REQUIRE(d.f.validate().empty());
  REQUIRE(d.g.validate().empty());
  auto delta = diagonal(d.f, d.g);
  CHECK(delta.validate().empty());
  auto type = filtration_type(delta);
  REQUIRE(type.has_value());
  CHECK((*type)[0] >= -1);
  CHECK((*type)[1] <= 1);
}

TEST_CASE("sheaf validation catches inconsistent restrictions") {
  auto x = solid_triangle();
  auto good = CellularSheaf::constant(x, 1);
  CHECK(good.validate().empty());
  // Break one edge -> triangle restriction: paths through it disagree.
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restr;
  for (std::size_t id = 0; id < x->simplex_count(); ++id)
    for (const auto& [fid, sign] : x->facets(id))
      restr[{fid, id}] = IntMatrix::identity(1);
  auto edge = *x->find_by_labels({"a", "b"});
  auto tri = *x->find_by_labels({"a", "b", "c"});
  restr[{edge, tri}] = IntMatrix(1, 1, {3});
  CellularSheaf bad(x, std::vector<std::size_t>(x->simplex_count(), 1), restr);
  CHECK(!bad.validate().empty());
}
