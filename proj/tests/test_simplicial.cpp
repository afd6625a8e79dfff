#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/simplicial.hpp"

using namespace koszul;

namespace {
Field Q = Field::rationals();
Field F2 = Field::prime(2);
}  // namespace

TEST_CASE("fixture simplicial sets are valid") {
  for (int n = 0; n <= 4; ++n) {
    CHECK(validate_sset(standard_simplex(n)).ok());
    if (n >= 1) CHECK(validate_sset(simplex_boundary(n)).ok());
    if (n >= 1) CHECK_MESSAGE(validate_sset(sphere(n)).ok(), validate_sset(sphere(n)).text());
  }
  CHECK(validate_sset(long_edge()).ok());
  CHECK(validate_sset(simplex_quotient(2, {{0, 2}})).ok());
}

TEST_CASE("planted simplicial identity violation") {
  auto K = standard_simplex(2);
  // swap two faces of the top simplex
  auto& top = K.simplices.back();
  std::swap(top.faces[0], top.faces[1]);
  auto r = validate_sset(K);
  CHECK_FALSE(r.ok());
}

TEST_CASE("degenerate forms round trip") {
  auto K = sphere(3);
  DegenerateForm x{0, {1, 0}};
  Form f = to_form(K, x);
  CHECK(f.surj == std::vector<int>{0, 0, 0});
  CHECK(to_degenerate(f) == x);
  CHECK_THROWS_AS(to_form(K, DegenerateForm{0, {0, 1}}), InvalidInput);
}

TEST_CASE("normalized chains") {
  auto C0 = normalized_chains(standard_simplex(0), Q);
  CHECK(C0.objects.size() == 1);
  CHECK(C0.cells.empty());
  auto C1 = normalized_chains(standard_simplex(1), Q);
  u32 e = C1.index("01");
  CHECK(C1.d_coradical[e].coeff(C1.object("1")) == Scalar(Q, 1));
  CHECK(C1.d_coradical[e].coeff(C1.object("0")) == Scalar(Q, -1));
  auto S = normalized_chains(sphere(2), Q);
  u32 s = S.index("s");
  CHECK(S.d[s].empty());
  CHECK(S.d_coradical[s].empty());
  CHECK(S.coproduct[s].empty());
  // the plain cochain differential leaves components
  CHECK_FALSE(validate_curved_algebra(cochain_algebra(standard_simplex(1), Q)).ok());
}

TEST_CASE("twisted chains of simplices follow the subset formula") {
  for (int n = 0; n <= 5; ++n) {
    auto K = standard_simplex(n);
    auto r = subset_formula_check(K, Q);
    CHECK_MESSAGE(r.ok(), r.text());
    auto C = twisted_chains(K, Q);
    CHECK_FALSE(C.curved());
    auto v = validate_pointed_curved_coalgebra(C);
    CHECK_MESSAGE(v.ok(), v.text());
  }
  auto C = twisted_chains(standard_simplex(0), Q);
  CHECK(C.cells.empty());
}

TEST_CASE("twisted sphere") {
  auto C = twisted_chains(sphere(2), Q);
  REQUIRE(C.cells.size() == 1);
  CHECK(C.cells[0].degree == -2);
  CHECK(C.d[0].empty());
  CHECK(C.coproduct[0].empty());
  CHECK_FALSE(C.curved());
}

TEST_CASE("long edge has nonzero curvature") {
  auto K = long_edge();
  auto C = twisted_chains(K, Q);
  CHECK(C.curvature[C.index("t")] == Scalar(Q, -1));
  auto r = twisted_isomorphism_check(K, Q);
  CHECK_MESSAGE(r.ok(), r.text());
}

TEST_CASE("(id, +-e) isomorphisms") {
  std::vector<FiniteSimplicialSet> Ks = {standard_simplex(2), standard_simplex(3), simplex_boundary(3), sphere(2),
                                         sphere(3), long_edge(), simplex_quotient(2, {{0, 2}}),
                                         simplex_quotient(3, {{0, 3}})};
  for (auto& K : Ks)
    for (Field f : {Q, F2}) {
      auto r = twisted_isomorphism_check(K, f);
      CHECK_MESSAGE(r.ok(), r.text());
    }
}

TEST_CASE("chains on maps") {
  auto K1 = standard_simplex(1), K0 = standard_simplex(0);
  auto collapse = simplex_map(1, 0, {0, 0});
  auto m = chains_on_map(K1, K0, collapse, Q);
  CHECK(m.a[0] == Scalar(Q, 1));
  auto r = validate_morphism(twisted_chains(K1, Q), twisted_chains(K0, Q), m);
  CHECK_MESSAGE(r.ok(), r.text());
  for (int v : {0, 1}) {
    auto inc = simplex_map(0, 1, {v});
    auto mi = chains_on_map(K0, K1, inc, Q);
    CHECK(mi.f.empty());
    CHECK(validate_morphism(twisted_chains(K0, Q), twisted_chains(K1, Q), mi).ok());
  }
  auto id = chains_on_map(K1, K1, simplex_map(1, 1, {0, 1}), Q);
  CHECK(same_morphism(id, identity_morphism(twisted_chains(K1, Q))));
}

TEST_CASE("chains on maps is functorial") {
  std::vector<std::vector<int>> maps23 = {{0, 0, 1}, {0, 1, 1}, {0, 2, 3}, {1, 1, 1}, {0, 1, 3}};
  std::vector<std::vector<int>> maps32 = {{0, 0, 1, 2}, {0, 1, 1, 2}, {0, 0, 0, 2}, {1, 1, 2, 2}};
  auto K2 = standard_simplex(2), K3 = standard_simplex(3);
  auto C2 = twisted_chains(K2, Q), C3 = twisted_chains(K3, Q);
  for (auto& a : maps23)
    for (auto& b : maps32) {
      auto f = simplex_map(2, 3, a);
      auto g = simplex_map(3, 2, b);
      auto gf = compose(K2, K3, K2, g, f);
      auto mf = chains_on_map(K2, K3, f, Q);
      auto mg = chains_on_map(K3, K2, g, Q);
      CHECK(validate_morphism(C2, C3, mf).ok());
      CHECK(validate_morphism(C3, C2, mg).ok());
      CHECK(same_morphism(chains_on_map(K2, K2, gf, Q), compose(mg, mf)));
    }
}

TEST_CASE("non-simplicial maps are rejected") {
  auto K1 = standard_simplex(1), K0 = standard_simplex(0);
  SimplicialMap g;
  g.image = {Form{0, {0}}, Form{0, {0}}, Form{0, {0, 1}}};
  CHECK_THROWS_AS(chains_on_map(K1, K0, g, Q), NotSimplicial);
}
