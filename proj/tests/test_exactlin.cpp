#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <climits>

#include "koszul/linalg.hpp"
#include "koszul/random.hpp"

using namespace koszul;

namespace {

Field Q = Field::rationals();
Field F2 = Field::prime(2);
Field F5 = Field::prime(5);

SpacePtr space(std::vector<std::string> labels, std::vector<int> degrees) {
  return std::make_shared<GradedSpace>(std::move(labels), std::move(degrees));
}

}  // namespace

TEST_CASE("rationals stay in lowest terms") {
  CHECK((Scalar(Q, 1, 3) + Scalar(Q, 1, 6)).str() == "1/2");
  CHECK(Scalar(Q, 4, -6).str() == "-2/3");
  CHECK(Scalar::parse(Q, "10/4") == Scalar(Q, 5, 2));
  CHECK(Scalar::parse(Q, "-7").str() == "-7");
  CHECK((Scalar(Q, 2, 3) / Scalar(Q, 4, 9)).str() == "3/2");
}

TEST_CASE("overflow moves to gmp and comes back") {
  Scalar big(Q, INT64_MAX);
  Scalar sq = big * big;
  CHECK(sq.str() == "85070591730234615847396907784232501249");
  CHECK(sq / big == big);
  CHECK((sq - sq).is_zero());
  Scalar m(Q, INT64_MIN);
  CHECK((-m).str() == "9223372036854775808");
  CHECK(-(-m) == m);
  Scalar a(Q, 1, INT64_MAX), b(Q, 1, INT64_MAX - 1);
  CHECK((a + b) - b == a);
  CHECK((a * b).inverse() == Scalar(Q, INT64_MAX) * Scalar(Q, INT64_MAX - 1));
}

TEST_CASE("prime fields") {
  CHECK(Scalar(F5, 2) * Scalar(F5, 3) == Scalar::one(F5));
  CHECK(Scalar(F5, -1) == Scalar(F5, 4));
  CHECK(Scalar(F5, 3).inverse() == Scalar(F5, 2));
  CHECK(Scalar(F5, 1, 2) == Scalar(F5, 3));
  CHECK(Scalar::sign(F2, 1) == Scalar::one(F2));
  CHECK(Scalar::parse(F5, "7/3") == Scalar(F5, 4));
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Scalar x = random_scalar(F5, rng, true);
    CHECK(x * x.inverse() == Scalar::one(F5));
  }
}

TEST_CASE("field parsing and errors") {
  CHECK(Field::parse("F2") == F2);
  CHECK(Field::parse("Q") == Q);
  CHECK_THROWS_AS(Field::parse("F4"), InvalidInput);
  CHECK_THROWS_AS(Field::parse("R"), InvalidInput);
  CHECK_THROWS_AS(Scalar(Q, 1) + Scalar(F2, 1), FieldMismatch);
  CHECK_THROWS_AS(Scalar::zero(F5).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), DivisionByZero);
  CHECK_THROWS_AS(Scalar::parse(Q, "x"), InvalidInput);
}

TEST_CASE("combinations cancel") {
  Vec v(Q);
  v.add(3, Scalar(Q, 2));
  v.add(1, Scalar(Q, 1));
  v.add(3, Scalar(Q, -2));
  CHECK(v.size() == 1);
  CHECK(v.coeff(1) == Scalar::one(Q));
  CHECK(v.coeff(3).is_zero());
  CHECK((v - v).empty());
  CHECK(v.scaled(Scalar::zero(Q)).empty());
}

TEST_CASE("kernels, spans and echelon forms") {
  // columns: e0 -> x, e1 -> y, e2 -> x + y
  Vec x(Q, 0, Scalar::one(Q)), y(Q, 1, Scalar::one(Q));
  std::vector<Vec> cols = {x, y, x + y};
  auto kr = kernel_of_columns(Q, cols, {0, 1, 2});
  CHECK(kr.rank == 2);
  REQUIRE(kr.kernel.size() == 1);
  Vec image(Q);
  for (auto& [j, c] : kr.kernel[0]) image.add(cols[j], c);
  CHECK(image.empty());
  auto sol = solve_in_span(Q, cols, x.scaled(Scalar(Q, 3)) - y);
  REQUIRE(sol.has_value());
  Vec back(Q);
  for (auto& [j, c] : *sol) back.add(cols[j], c);
  CHECK(back == x.scaled(Scalar(Q, 3)) - y);
  CHECK_FALSE(solve_in_span(Q, cols, Vec(Q, 2, Scalar::one(Q))).has_value());

  Echelon e(F2);
  Vec x2(F2, 0, Scalar::one(F2)), y2(F2, 1, Scalar::one(F2));
  CHECK(e.insert(x2 + y2));
  CHECK(e.insert(x2));
  CHECK_FALSE(e.insert(y2));
  CHECK(e.rank() == 2);
  CHECK(e.contains(y2));
  CHECK_THROWS_AS(e.insert(x), FieldMismatch);
}

TEST_CASE("homology of small complexes") {
  auto V = space({"a", "b", "c"}, {0, 1, 1});
  LinearMap d(V, V, 1, Q);
  d.columns[0] = Vec(Q, 1, Scalar::one(Q));
  auto H = homology_dims(make_complex(V, d));
  CHECK(H[0] == 0);
  CHECK(H[1] == 1);

  // over F2 the map a -> 2b vanishes
  LinearMap d2(V, V, 1, F2);
  d2.columns[0] = Vec(F2, 1, Scalar(F2, 2));
  auto H2 = homology_dims(make_complex(V, d2));
  CHECK(H2[0] == 1);
  CHECK(H2[1] == 2);

  LinearMap bad(V, V, 1, Q);
  bad.columns[1] = Vec(Q, 2, Scalar::one(Q));
  CHECK_THROWS(make_complex(V, bad));
  CHECK_THROWS_AS(make_complex(V, LinearMap(V, V, 0, Q)), InvalidInput);
}

TEST_CASE("koszul sign on tensor products of maps") {
  auto V = space({"u", "v"}, {0, 1});
  LinearMap d(V, V, 1, Q);
  d.columns[0] = Vec(Q, 1, Scalar::one(Q));
  LinearMap id(V, V, 0, Q);
  for (u32 i = 0; i < 2; ++i) id.columns[i] = Vec(Q, i, Scalar::one(Q));
  // d (x) 1 + 1 (x) d squares to zero
  LinearMap D = koszul_tensor(d, id);
  LinearMap E = koszul_tensor(id, d);
  for (std::size_t j = 0; j < D.columns.size(); ++j) D.columns[j] += E.columns[j];
  CHECK(compose(D, D).is_zero());
  auto H = homology_dims(make_complex(D.source, D));
  std::size_t total = 0;
  for (auto& [n, k] : H) total += k;
  CHECK(total == 0);
}
