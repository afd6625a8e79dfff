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

ArrowSpec arrow(std::string label, std::string s, std::string t, int degree,
                std::vector<std::pair<std::vector<std::string>, Scalar>> d = {}) {
  return {std::move(label), std::move(s), std::move(t), degree, std::move(d)};
}

}  // namespace

TEST_CASE("fixtures validate over several fields") {
  for (Field f : {Q, F2, F5}) {
    for (auto D : {fixture_k(f), fixture_S(f, 0), fixture_S(f, 3), fixture_A2(f), fixture_D(f, 1), fixture_D(f, -2),
                   fixture_dual_numbers(f), fixture_square_zero(f, 1), fixture_homotopy(f),
                   fixture_discrete(f, {"a", "b", "c"})}) {
      auto r = validate_dg_category(D);
      CHECK_MESSAGE(r.ok(), r.text());
      CHECK(validate_retract(D, default_retract(D)).ok());
    }
  }
}

TEST_CASE("random dg categories validate") {
  for (Field f : {Q, F2, F5}) {
    Rng rng(11 + f.characteristic());
    for (int i = 0; i < 40; ++i) {
      auto D = random_dg_category(f, rng);
      auto r = validate_dg_category(D);
      CHECK_MESSAGE(r.ok(), r.text());
      CHECK(D.objects.size() <= 3);
      for (u32 s = 0; s < D.objects.size(); ++s)
        for (u32 t = 0; t < D.objects.size(); ++t) CHECK(D.hom(s, t).size() <= 3);
    }
  }
}

TEST_CASE("planted defects are caught") {
  SUBCASE("degree of d") {
    auto D = fixture_D(Q, 1);
    DgCategory bad = D;
    bad.d[bad.index("v")] = bad.e(bad.index("u"));
    CHECK_FALSE(validate_dg_category(bad).ok());
  }
  SUBCASE("associativity") {
    auto D = free_category(Q, {"1", "2", "3", "4"},
                           {arrow("f", "1", "2", 0), arrow("g", "2", "3", 0), arrow("k", "3", "4", 0)});
    REQUIRE(validate_dg_category(D).ok());
    DgCategory bad = D;
    bad.product[{bad.index("f·g"), bad.index("k")}] = bad.e(bad.index("f·g·k")).scaled(Scalar(Q, 2));
    CHECK(has_failure(validate_dg_category(bad), "assoc"));
  }
  SUBCASE("Leibniz") {
    auto D = free_category(Q, {"1", "2", "3"},
                           {arrow("x", "1", "2", -1, {{{"z"}, Scalar::one(Q)}}), arrow("z", "1", "2", 0),
                            arrow("y", "2", "3", 0)});
    REQUIRE(validate_dg_category(D).ok());
    CHECK(D.diff(D.e(D.index("x·y"))) == D.e(D.index("z·y")));
    DgCategory bad = D;
    bad.d[bad.index("x·y")] = Vec(Q);
    auto r = validate_dg_category(bad);
    CHECK(has_failure(r, "Leibniz"));
  }
  SUBCASE("degree and component") {
    auto D = fixture_S(Q, 1);
    DgCategory bad = D;
    bad.d[bad.index("f")] = bad.e(*bad.identity[0]);
    CHECK_FALSE(validate_dg_category(bad).ok());
  }
  SUBCASE("retract") {
    auto D = fixture_dual_numbers(Q);
    Retract v = default_retract(D);
    v.v[0] = D.e(D.index("e"));
    CHECK(has_failure(validate_retract(D, v), "v(identity)"));
  }
}

TEST_CASE("free categories and hom complexes") {
  auto D = free_category(Q, {"1", "2", "3"}, {arrow("f", "1", "2", 0), arrow("g", "2", "3", 0)});
  CHECK(validate_dg_category(D).ok());
  CHECK(D.hom(0, 2).size() == 1);
  CHECK(D.mul(D.e(D.index("f")), D.e(D.index("g"))) == D.e(D.index("f·g")));
  CHECK(D.mul(D.e(D.index("g")), D.e(D.index("f"))).empty());

  // h: 1 -> 1 of degree -1 with dh = f g, cut at word length 2
  auto H = free_category(Q, {"1", "2"},
                         {arrow("f", "1", "2", 0), arrow("g", "2", "1", 0),
                          arrow("h", "1", "1", -1, {{{"f", "g"}, Scalar::one(Q)}})},
                         2);
  CHECK(validate_dg_category(H).ok());
  CHECK_FALSE(H.cut.empty());

  auto Dd = fixture_D(Q, 1);
  auto Hd = homology_dims(hom_complex(Dd, "1", "2"));
  for (auto& [n, k] : Hd) CHECK(k == 0);
  auto Hs = homology_dims(hom_complex(fixture_S(Q, 2), "1", "2"));
  CHECK(Hs[2] == 1);

  CHECK_THROWS_AS(free_category(Q, {"1"}, {arrow("f", "1", "9", 0)}), UnknownObject);
  CHECK_THROWS_AS(free_category(Q, {"1"}, {arrow("l", "1", "1", 0)}), InvalidInput);
  CHECK_THROWS_AS(Dd.object("nope"), UnknownObject);
}

TEST_CASE("rebasing along a retract keeps the category valid") {
  auto D = fixture_dual_numbers(Q);
  Retract w;
  w.v = {D.e(*D.identity[0]) + D.e(D.index("e"))};
  REQUIRE(validate_retract(D, w).ok());
  auto R = rebase(D, w);
  CHECK(validate_dg_category(R).ok());
  // e' = e - 1 squares to 1 - 2e = -1 - 2e'
  Vec e = R.e(R.index("e"));
  Vec expect = R.e(*R.identity[0]).scaled(Scalar(Q, -1)) - e.scaled(Scalar(Q, 2));
  CHECK(R.mul(e, e) == expect);
}

TEST_CASE("scrambled bases stay valid") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    auto D = scramble(fixture_homotopy(F5), rng);
    CHECK(validate_dg_category(D).ok());
  }
}
