#pragma once
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "koszul/linalg.hpp"
#include "koszul/report.hpp"

namespace koszul {

using u32 = std::uint32_t;

// basis element living in the (source, target) component
struct Cell {
  std::string label;
  u32 source = 0, target = 0;
  int degree = 0;
};

// Finite graded algebra over k^S on a basis tagged by components.
// Products are diagrammatic: (a, b) with target(a) == source(b) means
// "a then b" and lands in (source(a), target(b)).
struct Algebra {
  Field field;
  std::vector<std::string> objects;
  std::vector<Cell> basis;
  std::map<std::pair<u32, u32>, Vec> product;
  std::vector<Vec> d;
  Vec unit;

  // degrees of (s,t) where the presentation is a truncation that may not be
  // exact; validators skip identities landing there when length_lowering
  std::map<std::pair<u32, u32>, std::set<int>> cut;
  bool length_lowering = false;

  void reindex();
  std::optional<u32> find(const std::string& label) const;
  u32 index(const std::string& label) const;
  std::optional<u32> find_object(const std::string& label) const;
  u32 object(const std::string& label) const;  // throws UnknownObject

  Vec e(u32 i) const { return Vec(field, i, Scalar::one(field)); }
  const Vec* mul_basis(u32 a, u32 b) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec diff(const Vec& x) const;
  std::vector<u32> hom(u32 s, u32 t) const;  // sorted by label
  bool is_cut(u32 s, u32 t, int deg) const;
  GradedSpace space() const;

 private:
  std::unordered_map<std::string, u32> index_;
  std::unordered_map<std::string, u32> object_index_;
};

struct DgCategory : Algebra {
  std::vector<std::optional<u32>> identity;  // per object
  void set_unit_from_identities();
};

// per object, coefficient functional on hom(s,s)^0
struct Retract {
  std::vector<Vec> v;  // indexed by object; a functional as a combination of basis indices
  Scalar value(const DgCategory& D, u32 basis_index) const;
};

// pieces shared by the dg and curved validators
void check_components(const Algebra& A, Report& r);
void check_associativity(const Algebra& A, Report& r);
void check_unit(const Algebra& A, Report& r);
void check_leibniz(const Algebra& A, Report& r);

Report validate_dg_category(const DgCategory& D);
Retract default_retract(const DgCategory& D);
Report validate_retract(const DgCategory& D, const Retract& v);

struct ArrowSpec {
  std::string label, source, target;
  int degree = 0;
  // differential as a combination of paths; a path is a list of arrow
  // labels, or the single entry "id:<object>" for an identity
  std::vector<std::pair<std::vector<std::string>, Scalar>> differential;
};

DgCategory free_category(Field f, const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                         std::optional<int> word_bound = std::nullopt);

FiniteComplex hom_complex(const DgCategory& D, const std::string& s, const std::string& t);
FiniteComplex hom_complex(const DgCategory& D, u32 s, u32 t);

std::string show(const Algebra& A, const Vec& v);

// change of basis b -> b - v(b) id on non-identity labels, labels kept
DgCategory rebase(const DgCategory& D, const Retract& v);

}  // namespace koszul
