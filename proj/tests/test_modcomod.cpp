#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/fixtures.hpp"
#include "koszul/modcomod.hpp"
#include "koszul/simplicial.hpp"

using namespace koszul;

namespace {

Field Q = Field::rationals();
Field F5 = Field::prime(5);

std::vector<DgCategory> samples(Field f) {
  return {fixture_k(f), fixture_S(f, 1), fixture_A2(f), fixture_D(f, 1), fixture_dual_numbers(f), fixture_homotopy(f)};
}

}  // namespace

TEST_CASE("representables and points") {
  for (auto& D : samples(Q))
    for (u32 o = 0; o < D.objects.size(); ++o) {
      auto M = representable(D, o);
      auto r = validate_module(D, M);
      CHECK_MESSAGE(r.ok(), r.text());
      auto B = bar_reduced(D, 3);
      auto p = validate_comodule(B.coalgebra, point_comodule(B.coalgebra, o));
      CHECK_MESSAGE(p.ok(), p.text());
    }
}

TEST_CASE("twists along the tautological element") {
  for (Field f : {Q, F5})
    for (auto& D : samples(f)) {
      auto B = bar_reduced(D, 3);
      auto tau = tautological(B, D);
      for (u32 o = 0; o < D.objects.size(); ++o) {
        auto P = twist_module(D, B.coalgebra, tau, point_comodule(B.coalgebra, o));
        auto r = validate_module(D, P);
        CHECK_MESSAGE(r.ok(), r.text());
        auto Qm = twist_comodule(B.coalgebra, D, tau, representable(D, o));
        auto rq = validate_comodule(B.coalgebra, Qm);
        CHECK_MESSAGE(rq.ok(), rq.text());
      }
    }
}

TEST_CASE("fg adjunction certificate") {
  for (auto& D : samples(Q)) {
    auto B = bar_reduced(D, 3);
    auto tau = tautological(B, D);
    for (u32 x = 0; x < D.objects.size(); ++x)
      for (u32 y = 0; y < D.objects.size(); ++y) {
        auto N = point_comodule(B.coalgebra, x);
        auto M = representable(D, y);
        auto cert = fg_adjunction_check(B.coalgebra, D, tau, N, M);
        CHECK_MESSAGE(cert.report.ok(), cert.report.text());
        for (auto& [k, p] : cert.dims) CHECK(p.first == p.second);
        for (auto& [k, p] : cert.homology) CHECK(p.first == p.second);
        // a twisted comodule on the left as well
        auto N2 = twist_comodule(B.coalgebra, D, tau, representable(D, x));
        auto c2 = fg_adjunction_check(B.coalgebra, D, tau, N2, M);
        CHECK_MESSAGE(c2.report.ok(), c2.report.text());
      }
  }
}

TEST_CASE("planted d^2 failure in a module") {
  auto D = fixture_D(Q, 1);
  auto M = representable(D, 1);
  REQUIRE(validate_module(D, M).ok());
  // u -> u + v with du = v gives d(d u) = d v = 0, so plant on the other side
  auto bad = M;
  auto u = *bad.find("u"), v = *bad.find("v");
  bad.d[v].add(u, Scalar::one(Q));
  CHECK_FALSE(validate_module(D, bad).ok());
}

TEST_CASE("non-MC tau is rejected") {
  auto D = fixture_D(Q, 1);
  auto B = bar_reduced(D, 2);
  auto tau = tautological(B, D);
  u32 u = B.coalgebra.index("[u]");
  tau.xi[u] = tau.xi[u].scaled(Scalar(Q, 2));
  auto cert = fg_adjunction_check(B.coalgebra, D, tau, point_comodule(B.coalgebra, 0), representable(D, 1));
  CHECK_FALSE(cert.report.ok());
}

TEST_CASE("restriction and corestriction along a collapse") {
  auto K1 = standard_simplex(1), K0 = standard_simplex(0);
  auto C1 = twisted_chains(K1, Q), C0 = twisted_chains(K0, Q);
  auto m = chains_on_map(K1, K0, simplex_map(1, 0, {0, 0}), Q);
  REQUIRE(validate_morphism(C1, C0, m).ok());
  auto N = point_comodule(C0, 0);
  auto E = corestrict_comodule(C1, C0, m, N);
  auto re = validate_comodule(C1, E);
  CHECK_MESSAGE(re.ok(), re.text());
  for (u32 o = 0; o < C1.objects.size(); ++o) {
    auto M = point_comodule(C1, o);
    auto cert = restriction_adjunction_check(C1, C0, m, M, N);
    CHECK_MESSAGE(cert.report.ok(), cert.report.text());
    auto cert2 = restriction_adjunction_check(C1, C0, m, E, N);
    CHECK_MESSAGE(cert2.report.ok(), cert2.report.text());
  }
}

TEST_CASE("restriction along a change of curvature") {
  auto D = fixture_square_zero(Q, 0);
  auto B = bar_reduced(D, 2);
  auto C = B.coalgebra;
  CoalgebraMorphism m = identity_morphism(C);
  m.a[C.index("[x]")] = Scalar::one(Q);
  CurvedAlgebra A = dualize(C);
  Vec bv = dual_morphism(C, C, m).b;
  CurvedAlgebra Ap = A;
  for (u32 i = 0; i < A.basis.size(); ++i) {
    Vec y = A.e(i);
    Ap.d[i] = A.diff(y) - A.mul(bv, y);
    Ap.d[i].add(A.mul(y, bv), Scalar::sign(Q, A.basis[i].degree));
  }
  Ap.curvature = A.curvature - A.diff(bv) + A.mul(bv, bv);
  PointedCoalgebra Cp = codualize(Ap);
  REQUIRE(validate_morphism(Cp, C, m).ok());
  auto tau = tautological(B, D);
  auto N = twist_comodule(C, D, tau, representable(D, 0));
  REQUIRE(validate_comodule(C, N).ok());
  auto E = corestrict_comodule(Cp, C, m, N);
  auto re = validate_comodule(Cp, E);
  CHECK_MESSAGE(re.ok(), re.text());
  auto cert = restriction_adjunction_check(Cp, C, m, E, N);
  CHECK_MESSAGE(cert.report.ok(), cert.report.text());
  auto cert2 = restriction_adjunction_check(Cp, C, m, point_comodule(Cp, 0), N);
  CHECK_MESSAGE(cert2.report.ok(), cert2.report.text());
}
