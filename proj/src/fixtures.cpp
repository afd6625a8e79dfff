#include "koszul/fixtures.hpp"

namespace koszul {

CategoryBuilder::CategoryBuilder(Field f, std::vector<std::string> objects, bool identities) : field_(f) {
  D_.field = f;
  D_.objects = std::move(objects);
  D_.identity.assign(D_.objects.size(), std::nullopt);
  if (identities)
    for (u32 s = 0; s < D_.objects.size(); ++s) {
      D_.identity[s] = cell("id_" + D_.objects[s], D_.objects[s], D_.objects[s], 0);
    }
}

u32 CategoryBuilder::cell(const std::string& label, const std::string& source, const std::string& target,
                          int degree) {
  auto find = [&](const std::string& o) -> u32 {
    for (u32 i = 0; i < D_.objects.size(); ++i)
      if (D_.objects[i] == o) return i;
    throw UnknownObject("unknown object '" + o + "'");
  };
  u32 k = static_cast<u32>(D_.basis.size());
  D_.basis.push_back({label, find(source), find(target), degree});
  if (!label_.emplace(label, k).second) throw InvalidInput("duplicate label '" + label + "'");
  return k;
}

void CategoryBuilder::product(const std::string& a, const std::string& b,
                              const std::vector<std::pair<std::string, Scalar>>& v) {
  products_.emplace_back(a, b, v);
}

void CategoryBuilder::differential(const std::string& a, const std::vector<std::pair<std::string, Scalar>>& v) {
  diffs_.emplace_back(a, v);
}

DgCategory CategoryBuilder::build() {
  DgCategory D = D_;
  D.reindex();
  auto vec = [&](const std::vector<std::pair<std::string, Scalar>>& v) {
    Vec r(field_);
    for (auto& [l, c] : v) r.add(D.index(l), c);
    return r;
  };
  for (u32 i = 0; i < D.basis.size(); ++i) {
    auto& c = D.basis[i];
    if (D.identity[c.source]) D.product[{*D.identity[c.source], i}] = D.e(i);
    if (D.identity[c.target]) D.product[{i, *D.identity[c.target]}] = D.e(i);
  }
  for (auto& [a, b, v] : products_) {
    Vec r = vec(v);
    if (!r.empty()) D.product[{D.index(a), D.index(b)}] = r;
  }
  for (auto& [a, v] : diffs_) D.d[D.index(a)] = vec(v);
  D.set_unit_from_identities();
  return D;
}

DgCategory fixture_k(Field f) { return CategoryBuilder(f, {"*"}).build(); }

DgCategory fixture_S(Field f, int n) {
  CategoryBuilder b(f, {"1", "2"});
  b.cell("f", "1", "2", n);
  return b.build();
}

DgCategory fixture_A2(Field f) { return fixture_S(f, 0); }

DgCategory fixture_D(Field f, int n) {
  CategoryBuilder b(f, {"1", "2"});
  b.cell("u", "1", "2", n - 1);
  b.cell("v", "1", "2", n);
  b.differential("u", {{"v", Scalar::one(f)}});
  return b.build();
}

DgCategory fixture_dual_numbers(Field f) {
  CategoryBuilder b(f, {"*"});
  b.cell("e", "*", "*", 0);
  return b.build();
}

DgCategory fixture_square_zero(Field f, int degree) {
  CategoryBuilder b(f, {"*"});
  b.cell("x", "*", "*", degree);
  return b.build();
}

DgCategory fixture_homotopy(Field f) {
  CategoryBuilder b(f, {"1", "2"});
  b.cell("f", "1", "2", 0);
  b.cell("g", "2", "1", 0);
  b.cell("fg", "1", "1", 0);
  b.cell("h", "1", "1", -1);
  b.product("f", "g", "fg");
  b.differential("h", {{"fg", Scalar::one(f)}});
  return b.build();
}

DgCategory fixture_discrete(Field f, const std::vector<std::string>& objects) {
  return CategoryBuilder(f, objects).build();
}

}  // namespace koszul
