#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/fixtures.hpp"
#include "koszul/nerve.hpp"

using namespace koszul;

namespace {
Field F2 = Field::prime(2);
Field F3 = Field::prime(3);

std::vector<std::string> keys(const DgCategory& D, const std::vector<NerveSimplex>& v) {
  std::vector<std::string> out;
  for (auto& x : v) out.push_back(show(D, x));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("low-dimensional Lurie checks") {
  auto D = fixture_k(F3);
  NerveSimplex v{0, {0}, {}};
  CHECK(nerve_check_lurie(D, v).ok());
  CHECK(nerve_check_mc(D, v).ok());
  NerveSimplex e{1, {0, 0}, {{{0, 1}, Vec(F3, 0, Scalar(F3, 2))}}};
  CHECK(nerve_check_lurie(D, e).ok());
  CHECK(nerve_check_mc(D, e).ok());
  NerveSimplex missing{1, {0, 0}, {}};
  CHECK_THROWS_AS(nerve_check_lurie(D, missing), IncompleteCandidate);
}

TEST_CASE("2-simplices in a linear category are composites") {
  auto D = fixture_A2(F3);
  u32 f = D.index("f"), i1 = D.index("id_1"), i2 = D.index("id_2");
  NerveSimplex x{2, {0, 0, 1}, {}};
  x.f[{0, 1}] = Vec(F3, i1, Scalar(F3, 2));
  x.f[{1, 2}] = Vec(F3, f, Scalar(F3, 1));
  x.f[{0, 2}] = Vec(F3, f, Scalar(F3, 2));
  x.f[{0, 1, 2}] = Vec(F3);
  CHECK(nerve_check_lurie(D, x).ok());
  CHECK(nerve_check_mc(D, x).ok());
  x.f[{0, 2}] = Vec(F3, f, Scalar(F3, 1));
  CHECK_FALSE(nerve_check_lurie(D, x).ok());
  CHECK_FALSE(nerve_check_mc(D, x).ok());
  (void)i2;
}

TEST_CASE("Lurie and MC agree on every candidate") {
  for (Field fld : {F2, F3}) {
    std::vector<DgCategory> Ds = {fixture_k(fld), fixture_S(fld, 1), fixture_A2(fld), fixture_homotopy(fld)};
    for (auto& D : Ds)
      for (int n = 0; n <= (fld == F2 ? 3 : 2); ++n) {
        std::size_t disagree = 0, valid = 0;
        for_each_nerve_candidate(D, n, 5000000, [&](const NerveSimplex& x) {
          bool a = nerve_check_lurie(D, x).ok(), b = nerve_check_mc(D, x).ok();
          if (a != b) ++disagree;
          if (a) ++valid;
        });
        CHECK(disagree == 0);
        auto L = nerve_enumerate_lurie(D, n, 5000000);
        auto M = nerve_enumerate_mc(D, n, 5000000);
        CHECK(L.size() == valid);
        CHECK(keys(D, L) == keys(D, M));
      }
  }
}

TEST_CASE("planted dictionary sign error is detected") {
  auto D = fixture_homotopy(F3);
  bool caught = false;
  for (auto& x : nerve_enumerate_lurie(D, 2, 5000000))
    if (!nerve_check_mc(D, x, true).ok()) caught = true;
  CHECK(caught);
}

TEST_CASE("structure maps agree both ways") {
  for (Field fld : {F2, F3}) {
    std::vector<DgCategory> Ds = {fixture_A2(fld), fixture_homotopy(fld)};
    for (auto& D : Ds)
      for (int n = 0; n <= 2; ++n)
        for (auto& x : nerve_enumerate_lurie(D, n, 5000000))
          for (int m = 0; m <= 3; ++m)
            for (auto& alpha : monotone_maps(m, n)) {
              NerveSimplex y;
              CHECK_NOTHROW(y = nerve_structure_map(D, alpha, x));
              CHECK(nerve_check_lurie(D, y).ok());
            }
  }
}

TEST_CASE("degeneracy gives the identity edge") {
  auto D = fixture_A2(F3);
  NerveSimplex v{0, {1}, {}};
  auto y = nerve_structure_map(D, {0, 0}, v);
  CHECK(y.f[{0, 1}] == Vec(F3, *D.identity[1], Scalar::one(F3)));
}

TEST_CASE("ordinary nerve of A2 is functors") {
  auto D = fixture_A2(F2);
  for (int n = 0; n <= 3; ++n) CHECK(keys(D, nerve_enumerate_lurie(D, n, 5000000)) == keys(D, poset_functors(D, n, 5000000)));
}

TEST_CASE("F of a bar reproduces the nerve") {
  for (auto D : {fixture_k(F2), fixture_A2(F2), fixture_S(F2, 1)}) {
    auto B = bar_reduced(D, 3);
    for (int n = 0; n <= 2; ++n) {
      auto F = F_level_enumerate(B.coalgebra, n, 5000000);
      auto N = nerve_enumerate_mc(D, n, 5000000);
      CHECK(F.size() == N.size());
      auto C = twisted_chains(standard_simplex(n), F2);
      for (auto& x : N) {
        auto m = psi(C, D, B, nerve_to_mc(D, x, C));
        CHECK(F_level_check(B.coalgebra, n, m).ok());
      }
    }
  }
  auto Bk = bar_reduced(fixture_k(F2), 3);
  CHECK(F_level_enumerate(Bk.coalgebra, 1, 1000).size() == 2);
}

TEST_CASE("L of small simplicial sets") {
  auto L0 = L_functor(standard_simplex(0), 3, F2);
  CHECK(L0.category.basis.size() == 1);
  auto L1 = L_functor(standard_simplex(1), 3, F2);
  CHECK(L1.category.objects.size() == 2);
  CHECK(L1.category.basis.size() == 3);
  auto S2 = L_functor(sphere(2), 5, Field::rationals());
  auto H = homology_dims(hom_complex(S2.category, 0, 0));
  for (int n = 0; n >= -4; --n) CHECK(H[n] == 1);
}
