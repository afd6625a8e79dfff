#pragma once
#include "koszul/barcobar.hpp"

namespace koszul {

// small explicit dg categories; identities are labelled id_<object>
class CategoryBuilder {
 public:
  CategoryBuilder(Field f, std::vector<std::string> objects, bool identities = true);
  u32 cell(const std::string& label, const std::string& source, const std::string& target, int degree);
  void product(const std::string& a, const std::string& b, const std::vector<std::pair<std::string, Scalar>>& v);
  void product(const std::string& a, const std::string& b, const std::string& c) {
    product(a, b, {{c, Scalar::one(field_)}});
  }
  void differential(const std::string& a, const std::vector<std::pair<std::string, Scalar>>& v);
  DgCategory build();

 private:
  Field field_;
  DgCategory D_;
  std::map<std::string, u32> label_;
  std::vector<std::tuple<std::string, std::string, std::vector<std::pair<std::string, Scalar>>>> products_;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, Scalar>>>> diffs_;
};

DgCategory fixture_k(Field f);                  // one object
DgCategory fixture_S(Field f, int n);           // 1 -> 2, one arrow of degree n
DgCategory fixture_A2(Field f);                 // S(0)
DgCategory fixture_D(Field f, int n);           // hom(1,2) = {u in n-1, v in n}, du = v
DgCategory fixture_dual_numbers(Field f);       // k[e]/e^2, |e| = 0
DgCategory fixture_square_zero(Field f, int degree);  // k + x, x^2 = 0, dx = 0
DgCategory fixture_homotopy(Field f);           // f: 1->2, g: 2->1, h in End(1)^-1, dh = f then g
DgCategory fixture_discrete(Field f, const std::vector<std::string>& objects);

}  // namespace koszul
