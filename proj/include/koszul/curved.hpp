#pragma once
#include <functional>
#include <optional>

#include "koszul/dgcat.hpp"

namespace koszul {

struct CurvedAlgebra : Algebra {
  Vec curvature;
};

struct CoTerm {
  u32 left, right;
  Scalar coeff;
};

// Pointed coalgebra with coradical k[S]. Grouplikes are named by the object
// labels; the reduced part has basis `cells`. Object and cell labels share
// one namespace so the dual keeps them verbatim.
struct PointedCoalgebra {
  Field field;
  std::vector<std::string> objects;
  std::vector<Cell> cells;
  std::vector<std::vector<CoTerm>> coproduct;  // reduced, per cell
  std::vector<Vec> d;                          // per cell, into cells
  std::vector<Vec> d_coradical;                // per cell, into objects (zero when split)
  std::vector<Scalar> curvature;               // per cell

  void reindex();
  void resize();  // size the per-cell tables to cells.size()
  std::optional<u32> find(const std::string& label) const;
  u32 index(const std::string& label) const;
  std::optional<u32> find_object(const std::string& label) const;
  u32 object(const std::string& label) const;
  bool split() const;
  bool curved() const;
  // iterated reduced coproduct: all length-k tensors of cells with coefficient
  std::map<std::vector<u32>, Scalar> iterated(u32 cell, int k) const;
  int conilpotence_degree() const;  // longest nonzero iterated tensor length

 private:
  std::unordered_map<std::string, u32> index_;
  std::unordered_map<std::string, u32> object_index_;
};

// algebra side (f, b): f on basis of source, b in target
struct AlgebraMorphism {
  std::vector<Vec> f;
  Vec b;
};

// coalgebra side (f, a): object map, f on cells (into target cells), a per
// source cell (only nonzero on degree -1 cells with O(s) == O(t))
struct CoalgebraMorphism {
  std::vector<u32> object_map;
  std::vector<Vec> f;
  std::vector<Scalar> a;
};

Report validate_curved_algebra(const CurvedAlgebra& A);
Report validate_pointed_curved_coalgebra(const PointedCoalgebra& C, bool require_split = true);

CurvedAlgebra dualize(const PointedCoalgebra& C);
// inverse of dualize; A must have its unit a sum of basis idempotents
PointedCoalgebra codualize(const CurvedAlgebra& A);

// algebra side calculus
// split = false treats A and B as algebras over k alone, so b need not
// commute with the images of the idempotents
Report validate_morphism(const CurvedAlgebra& A, const CurvedAlgebra& B, const AlgebraMorphism& m,
                         bool split = true);
// A^b: d' = d - [b, -], h' = h - db + b^2; (id, b): A -> A^b is curved
CurvedAlgebra change_curvature(const CurvedAlgebra& A, const Vec& b);
AlgebraMorphism compose(const CurvedAlgebra& B, const AlgebraMorphism& g, const AlgebraMorphism& f);  // g after f
AlgebraMorphism identity_morphism(const Algebra& A);
bool same_morphism(const AlgebraMorphism& x, const AlgebraMorphism& y);

// coalgebra side calculus
AlgebraMorphism dual_morphism(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& m);
Report validate_morphism(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& m);
// same, with both duals precomputed
Report validate_morphism(const PointedCoalgebra& C, const PointedCoalgebra& D, const CurvedAlgebra& Cdual,
                         const CurvedAlgebra& Ddual, const CoalgebraMorphism& m);
CoalgebraMorphism compose(const CoalgebraMorphism& g, const CoalgebraMorphism& f);  // g after f
CoalgebraMorphism identity_morphism(const PointedCoalgebra& C);
bool same_morphism(const CoalgebraMorphism& x, const CoalgebraMorphism& y);

// ---- uncurving ----
// element of H A: tuples (a0, ..., ak) of composable basis indices standing
// for a0 eta a1 eta ... eta ak
using Tuple = std::vector<u32>;
using HVec = Combo<Tuple>;

class Uncurved {
 public:
  Uncurved(const CurvedAlgebra& A, int bound) : A_(A), bound_(bound) {}
  const CurvedAlgebra& algebra() const { return A_; }
  int bound() const { return bound_; }

  HVec from(const Vec& a) const;
  HVec eta() const;
  HVec mul(const HVec& x, const HVec& y) const;  // exact, no truncation
  HVec d(const HVec& x) const;                   // exact
  HVec truncate(HVec x) const;                   // drop eta-count > bound
  int degree(const Tuple& t) const;
  std::vector<Tuple> basis() const;  // eta-count <= bound
  // d_H^2 on every basis tuple, modulo eta-count > bound
  Report check_square_zero() const;
  // d_H^2 on generators (A basis and eta), exactly
  bool generators_square_zero() const;
  std::string show(const HVec& x) const;

 private:
  const CurvedAlgebra& A_;
  int bound_;
  HVec d_tuple(const Tuple& t) const;
};

// f_b : H A -> H B applied to an element, exact
HVec apply_dg_map(const Uncurved& HA, const Uncurved& HB, const AlgebraMorphism& m, const HVec& x);
// chain-map assertion on tuples of eta-count <= bound-1
Report check_dg_map(const Uncurved& HA, const Uncurved& HB, const AlgebraMorphism& m);
// the above plus f_b(xy) = f_b(x) f_b(y) on basis pairs of A and f_b(1) = 1
Report check_dg_algebra_map(const Uncurved& HA, const Uncurved& HB, const AlgebraMorphism& m);

// MC elements of a curved algebra: h + da + a^2
Vec mc_curved_defect(const CurvedAlgebra& A, const Vec& a);
bool mc_curved_check(const CurvedAlgebra& A, const Vec& a);
bool mc_transfer_check(const CurvedAlgebra& A, const Vec& a);  // a + eta MC in H A at eta-count 2
std::vector<Vec> mc_curved_enumerate(const CurvedAlgebra& A, std::size_t budget);

// all vectors of a finite-field span, in a fixed order
std::size_t count_span(Field f, std::size_t dim, std::size_t budget);
void for_each_vector(Field f, const std::vector<u32>& basis, const std::function<void(const Vec&)>& fn);

}  // namespace koszul
