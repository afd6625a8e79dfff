#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/random.hpp"

using namespace koszul;

namespace {

Field Q = Field::rationals();
Field F2 = Field::prime(2);
Field F5 = Field::prime(5);

bool has_failure(const Report& r, const std::string& check) {
  for (auto& f : r.failures)
    if (f.check.find(check) != std::string::npos) return true;
  return false;
}

// k + x with |x| = 0, rebased so the bar is curved
PointedCoalgebra curved_example(Field f) {
  auto D = fixture_square_zero(f, 0);
  Retract w;
  w.v = {D.e(*D.identity[0]) + D.e(D.index("x"))};
  return bar_reduced(D, w, 2).coalgebra;
}

std::vector<PointedCoalgebra> coalgebras(Field f) {
  return {bar_reduced(fixture_k(f), 2).coalgebra, bar_reduced(fixture_A2(f), 2).coalgebra,
          bar_reduced(fixture_S(f, 1), 3).coalgebra, bar_reduced(fixture_homotopy(f), 2).coalgebra,
          curved_example(f)};
}

}  // namespace

TEST_CASE("random pointed coalgebras are valid and dualize both ways") {
  for (Field f : {Q, F2, F5}) {
    Rng rng(100 + f.characteristic());
    int curved = 0;
    for (int i = 0; i < 40; ++i) {
      auto C = random_coalgebra(f, rng);
      auto r = validate_pointed_curved_coalgebra(C);
      CHECK_MESSAGE(r.ok(), r.text());
      curved += C.curved();
      auto A = dualize(C);
      CHECK(validate_curved_algebra(A).ok());
      auto back = codualize(A);
      CHECK(back.objects == C.objects);
      REQUIRE(back.cells.size() == C.cells.size());
      for (u32 k = 0; k < C.cells.size(); ++k) {
        CHECK(back.cells[k].label == C.cells[k].label);
        CHECK(back.d[k] == C.d[k]);
        CHECK(back.curvature[k] == C.curvature[k]);
      }
    }
    CHECK(curved > 0);
  }
}

TEST_CASE("curvature and coassociativity defects are caught") {
  auto C = curved_example(Q);
  REQUIRE(C.curved());
  REQUIRE(validate_pointed_curved_coalgebra(C).ok());
  PointedCoalgebra bad = C;
  bad.curvature[bad.index("[x]")] = Scalar::one(Q);  // wrong degree
  CHECK_FALSE(validate_pointed_curved_coalgebra(bad).ok());

  auto B = bar_reduced(fixture_square_zero(Q, 0), 3).coalgebra;
  REQUIRE(validate_pointed_curved_coalgebra(B).ok());
  PointedCoalgebra bad2 = B;
  u32 k = bad2.index("[x|x|x]");
  REQUIRE(bad2.coproduct[k].size() == 2);
  bad2.coproduct[k].front().coeff = Scalar(Q, 3);
  CHECK_FALSE(validate_pointed_curved_coalgebra(bad2).ok());
}

TEST_CASE("uncurving squares to zero") {
  for (Field f : {Q, F5})
    for (auto& C : coalgebras(f)) {
      auto A = dualize(C);
      Uncurved H(A, 3);
      CHECK(H.generators_square_zero());
      auto r = H.check_square_zero();
      CHECK_MESSAGE(r.ok(), r.text());
      // 1 and eta behave
      HVec one = H.from(A.unit);
      CHECK(H.mul(one, H.eta()) == H.eta());
      CHECK(H.mul(H.eta(), one) == H.eta());
    }
}

TEST_CASE("curved MC equals MC after uncurving") {
  Rng rng(5);
  std::size_t mc = 0, total = 0;
  for (int i = 0; i < 30; ++i) {
    auto A = dualize(random_coalgebra(F2, rng));
    std::vector<u32> deg1;
    for (u32 k = 0; k < A.basis.size(); ++k)
      if (A.basis[k].degree == 1) deg1.push_back(k);
    if (deg1.size() > 4) continue;
    for_each_vector(F2, deg1, [&](const Vec& a) {
      ++total;
      bool x = mc_curved_check(A, a);
      mc += x;
      CHECK(x == mc_transfer_check(A, a));
      CHECK(x == mc_curved_defect(A, a).empty());
    });
  }
  CHECK(mc > 0);
  CHECK(mc < total);
}

TEST_CASE("change of curvature is a curved map and uncurves to a dg map") {
  for (Field f : {Q, F5})
    for (auto& C : coalgebras(f)) {
      auto A = dualize(C);
      Vec b(f);
      for (u32 i = 0; i < A.basis.size(); ++i)
        if (A.basis[i].degree == 1 && A.basis[i].source == A.basis[i].target) b.add(i, Scalar(f, 2));
      auto Ab = change_curvature(A, b);
      CHECK(validate_curved_algebra(Ab).ok());
      AlgebraMorphism m = identity_morphism(A);
      m.b = b;
      CHECK(validate_morphism(A, Ab, m).ok());
      Uncurved HA(A, 3), HB(Ab, 3);
      CHECK(check_dg_algebra_map(HA, HB, m).ok());
      // (id, -b) goes back and composes to the identity
      AlgebraMorphism back = identity_morphism(Ab);
      back.b = b.scaled(Scalar(f, -1));
      CHECK(validate_morphism(Ab, A, back).ok());
      CHECK(same_morphism(compose(A, back, m), identity_morphism(A)));
      // b into A itself: both sides must agree
      bool into_self = validate_morphism(A, A, m).ok();
      CHECK(into_self == check_dg_algebra_map(HA, Uncurved(A, 3), m).ok());
    }
}

TEST_CASE("b off the image of the idempotents is rejected on both sides") {
  auto A = dualize(bar_reduced(fixture_A2(Q), 2).coalgebra);
  Vec b(Q);
  for (u32 i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].degree == 1 && A.basis[i].source != A.basis[i].target) b.add(i, Scalar::one(Q));
  REQUIRE_FALSE(b.empty());
  AlgebraMorphism m = identity_morphism(A);
  m.b = b;
  auto Ab = change_curvature(A, b);
  CHECK(has_failure(validate_morphism(A, Ab, m), "idempotents"));
  Uncurved HA(A, 3), HB(Ab, 3);
  CHECK(has_failure(check_dg_algebra_map(HA, HB, m), "well defined"));
}

TEST_CASE("coalgebra morphisms compose") {
  for (auto& C : coalgebras(F5)) {
    auto id = identity_morphism(C);
    CHECK(validate_morphism(C, C, id).ok());
    CHECK(same_morphism(compose(id, id), id));
  }
  auto C = curved_example(Q);
  CHECK_THROWS_AS(validate_morphism(C, curved_example(F5), identity_morphism(C)), FieldMismatch);
}
