#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "koszul/io.hpp"
#include "koszul/random.hpp"

using namespace koszul;

namespace {

Field Q = Field::rationals();
Field F5 = Field::prime(5);

std::string fixture_path(const std::string& name) { return std::string(KOSZUL_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pointer_of(const std::string& text) {
  try {
    auto doc = read_document(text);
    if (doc.kind == "dgcat") to_dgcat(doc, Q);
    if (doc.kind == "sset") to_sset(doc);
    if (doc.kind == "coalgebra") to_coalgebra(doc, Q);
  } catch (const ParseError& e) {
    return e.pointer;
  }
  return "no error";
}

// reparse a serialized value and serialize again
template <class Parse>
void round_trip(const json& j, Parse parse) {
  std::string first = canonical(j);
  auto doc = read_document(first);
  CHECK(canonical(parse(doc)) == first);
}

}  // namespace

TEST_CASE("every fixture file is canonical and round-trips") {
  auto C = to_coalgebra(load_document(fixture_path("bar-a2.json")), Q);
  auto A2 = to_dgcat(load_document(fixture_path("a2.json")), Q);
  std::size_t seen = 0;
  for (auto& entry : std::filesystem::directory_iterator(KOSZUL_FIXTURES)) {
    std::string text = slurp(entry.path().string());
    auto doc = read_document(text);
    Field f = document_field(doc, std::nullopt, Q);
    json again;
    if (doc.kind == "dgcat") again = serialize(to_dgcat(doc, f));
    if (doc.kind == "coalgebra") again = serialize(to_coalgebra(doc, f));
    if (doc.kind == "sset") again = serialize(to_sset(doc));
    if (doc.kind == "comodule") again = serialize(to_comodule(doc, f, C), C);
    if (doc.kind == "module") again = serialize(to_module(doc, f, A2), A2);
    if (doc.kind == "mc") again = serialize(to_mc(doc, f, C, A2), C, A2);
    CHECK_MESSAGE(canonical(again) == text, entry.path().string());
    ++seen;
  }
  CHECK(seen >= 15);
}

TEST_CASE("the S(n) fixture parses to a valid category") {
  for (std::string name : {"s0.json", "s1.json", "s2.json"}) {
    auto D = to_dgcat(load_document(fixture_path(name)), Q);
    CHECK(validate_dg_category(D).ok());
    CHECK(D.objects.size() == 2);
    CHECK(D.hom(0, 1).size() == 1);
  }
  auto S2 = to_dgcat(load_document(fixture_path("s2.json")), Q);
  CHECK(S2.basis[S2.index("f")].degree == 2);
}

TEST_CASE("in-memory values round-trip") {
  Rng rng(9);
  for (Field f : {Q, F5}) {
    for (int i = 0; i < 20; ++i) {
      auto D = random_dg_category(f, rng);
      round_trip(serialize(D), [&](const Document& d) { return serialize(to_dgcat(d, f)); });
      auto C = random_coalgebra(f, rng);
      round_trip(serialize(C), [&](const Document& d) { return serialize(to_coalgebra(d, f)); });
      auto M = random_comodule(C, rng);
      round_trip(serialize(M, C), [&](const Document& d) { return serialize(to_comodule(d, f, C), C); });
      auto N = random_module(D, rng);
      round_trip(serialize(N, D), [&](const Document& d) { return serialize(to_module(d, f, D), D); });
    }
  }
  auto B = bar_reduced(fixture_homotopy(Q), 2);
  auto tau = tautological(B, B.base);
  round_trip(serialize(tau, B.coalgebra, B.base),
             [&](const Document& d) { return serialize(to_mc(d, Q, B.coalgebra, B.base), B.coalgebra, B.base); });
  auto id = identity_morphism(B.coalgebra);
  round_trip(serialize(id, B.coalgebra, B.coalgebra), [&](const Document& d) {
    return serialize(to_morphism(d, Q, B.coalgebra, B.coalgebra), B.coalgebra, B.coalgebra);
  });
  auto O = cobar(B.coalgebra, 2);
  round_trip(serialize(O.category), [&](const Document& d) { return serialize(to_dgcat(d, Q)); });
  auto Oc = to_dgcat(read_document(canonical(serialize(O.category))), Q);
  CHECK(validate_dg_category(Oc).ok() == validate_dg_category(O.category).ok());
  for (auto& K : {standard_simplex(3), sphere(2), long_edge(), simplex_quotient(2, {{0, 2}})})
    round_trip(serialize(K), [&](const Document& d) { return serialize(to_sset(d)); });
}

TEST_CASE("parsed values agree with the originals") {
  auto D = fixture_homotopy(Q);
  auto D2 = to_dgcat(read_document(canonical(serialize(D))), Q);
  REQUIRE(D2.basis.size() == D.basis.size());
  for (u32 a = 0; a < D.basis.size(); ++a) {
    u32 a2 = D2.index(D.basis[a].label);
    for (u32 b = 0; b < D.basis.size(); ++b) {
      u32 b2 = D2.index(D.basis[b].label);
      CHECK(show(D, D.mul(D.e(a), D.e(b))) == show(D2, D2.mul(D2.e(a2), D2.e(b2))));
    }
    CHECK(show(D, D.d[a]) == show(D2, D2.d[a2]));
  }
}

TEST_CASE("canonical output is idempotent and sorted") {
  std::string messy = R"({"schema":1,"kind":"dgcat","field":"Q","objects":["b","a"],
    "cells":[{"label":"z","source":"a","target":"b","degree":0},{"label":"y","source":"a","target":"b","degree":0}],
    "differential":{"z":{"y":"4/2"}}})";
  auto once = canonical(serialize(to_dgcat(read_document(messy), Q)));
  auto twice = canonical(serialize(to_dgcat(read_document(once), Q)));
  CHECK(once == twice);
  CHECK(once.find("\"2\"") != std::string::npos);
  CHECK(once.find("\"a\",\n    \"b\"") != std::string::npos);
  CHECK(once.find("\"y\"") < once.find("\"z\""));
}

TEST_CASE("parse errors carry a JSON pointer") {
  CHECK(pointer_of("{\"schema\": 2, \"kind\": \"dgcat\"}") == "/schema");
  CHECK(pointer_of("{\"schema\": 1, \"kind\": \"monoid\"}") == "/kind");
  CHECK(pointer_of("{\"schema\": 1}") == "/kind");
  CHECK(pointer_of("[1, 2]") == "");
  CHECK(pointer_of("{oops") == "");
  CHECK(pointer_of(R"({"schema":1,"kind":"dgcat","objects":["a"],
    "cells":[{"label":"x","source":"a","target":"q","degree":0}]})") == "/cells/0/target");
  CHECK(pointer_of(R"({"schema":1,"kind":"dgcat","objects":["a"],
    "cells":[{"label":"x","source":"a","target":"a","degree":0}],
    "differential":{"x":{"w":1}}})") == "/differential/x/w");
  CHECK(pointer_of(R"({"schema":1,"kind":"dgcat","objects":["a"],
    "cells":[{"label":"x","source":"a","target":"a","degree":0}],
    "products":[{"left":"id_a","right":"x","value":{"x":1}}]})") == "/products/0");
  CHECK(pointer_of(R"({"schema":1,"kind":"dgcat","field":"F6","objects":[],"cells":[]})") == "/field");
  CHECK(pointer_of(R"({"schema":1,"kind":"coalgebra","objects":["a"],
    "cells":[{"label":"c","source":"a","target":"a","degree":-1}],
    "differential":{"c":{"c":"1/0"}}})") == "/differential/c/c");
}

TEST_CASE("an unsorted degeneracy word is rejected") {
  std::string good = R"({"schema":1,"kind":"sset","simplices":[
    {"label":"v","dim":0},
    {"label":"t","dim":3,"faces":[
      {"base":"v","degeneracies":[1,0]},{"base":"v","degeneracies":[1,0]},
      {"base":"v","degeneracies":[1,0]},{"base":"v","degeneracies":[1,0]}]}]})";
  CHECK(pointer_of(good) == "no error");
  std::string bad = good;
  bad.replace(bad.find("[1,0]"), 5, "[0,1]");
  CHECK(pointer_of(bad) == "/simplices/1/faces/0/degeneracies");
  std::string repeated = good;
  repeated.replace(repeated.find("[1,0]"), 5, "[1,1]");
  CHECK(pointer_of(repeated) == "/simplices/1/faces/0/degeneracies");
}

TEST_CASE("field precedence") {
  auto doc = read_document(R"({"schema":1,"kind":"sset","field":"F5","simplices":[]})");
  CHECK(document_field(doc, std::nullopt, Q) == F5);
  CHECK(document_field(doc, Field::prime(2), Q) == Field::prime(2));
  auto bare = read_document(R"({"schema":1,"kind":"sset","simplices":[]})");
  CHECK(document_field(bare, std::nullopt, F5) == F5);
}
