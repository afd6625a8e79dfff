#pragma once
#include "koszul/barcobar.hpp"

namespace koszul {

// basis element of a module or comodule, living over `object`
struct Elem {
  std::string label;
  u32 object = 0;
  int degree = 0;
};

struct CoactTerm {
  u32 cell;  // reduced cell of the coalgebra
  u32 elem;
  Scalar coeff;
};

// left comodule; coaction stored by its reduced part, m -> s (x) m is implied
struct Comodule {
  Field field;
  std::vector<Elem> basis;
  std::vector<Vec> d;
  std::vector<std::vector<CoactTerm>> coaction;
  void resize();
  std::optional<u32> find(const std::string& label) const;
};

// left module in the diagrammatic convention: a in hom(s,t) acts M(t) -> M(s)
struct Module {
  Field field;
  std::vector<Elem> basis;
  std::vector<Vec> d;
  std::map<std::pair<u32, u32>, Vec> action;  // (a, m) -> a.m, only nonzero entries
  Vec act(const Algebra& A, const Vec& a, const Vec& m) const;
  std::optional<u32> find(const std::string& label) const;
};

Report validate_comodule(const PointedCoalgebra& C, const Comodule& M);
Report validate_module(const DgCategory& A, const Module& M);

Comodule point_comodule(const PointedCoalgebra& C, u32 object);  // k_X
Module representable(const DgCategory& A, u32 object);           // s -> hom(s, X)

Module twist_module(const DgCategory& A, const PointedCoalgebra& C, const MCElement& tau, const Comodule& N);
Comodule twist_comodule(const PointedCoalgebra& C, const DgCategory& A, const MCElement& tau, const Module& M);

// graded hom complexes of (co)module maps, degree by degree
struct HomComplex {
  std::vector<int> degrees;
  std::map<int, std::vector<std::vector<Vec>>> maps;  // degree -> basis of maps, each a column list
  FiniteComplex complex;
};
HomComplex module_homs(const DgCategory& A, const Module& P, const Module& M);
HomComplex comodule_homs(const PointedCoalgebra& C, const Comodule& N, const Comodule& M);

struct AdjunctionCertificate {
  Report report;
  std::map<int, std::pair<std::size_t, std::size_t>> dims;  // degree -> (left, right)
  std::map<int, std::pair<std::size_t, std::size_t>> homology;
};
// Hom_A(A box^tau N, M) vs Hom_C(N, C box^tau M)
AdjunctionCertificate fg_adjunction_check(const PointedCoalgebra& C, const DgCategory& A, const MCElement& tau,
                                          const Comodule& N, const Module& M);

// equalizer of X (x) Y  ==>  X (x) D (x) Y for a right comodule X and a left
// comodule Y over D, both given by reduced coactions (X side as (elem, cell))
struct RightCoaction {
  std::vector<Elem> basis;  // object = right object
  std::vector<std::vector<std::pair<u32, std::pair<u32, Scalar>>>> coaction;  // x -> (x', (cell, coeff))
};
struct Cotensor {
  std::vector<std::pair<u32, u32>> pairs;  // ambient basis
  std::vector<Vec> basis;                  // equalizer basis over pair positions
};
Cotensor cotensor(const PointedCoalgebra& D, const RightCoaction& X, const Comodule& Y);

Comodule restrict_comodule(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& f,
                           const Comodule& M);  // R_f
Comodule corestrict_comodule(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& f,
                             const Comodule& N);  // E_f = C box_D N
// Hom_D(R_f M, N) vs Hom_C(M, E_f N)
AdjunctionCertificate restriction_adjunction_check(const PointedCoalgebra& C, const PointedCoalgebra& D,
                                                   const CoalgebraMorphism& f, const Comodule& M, const Comodule& N);

}  // namespace koszul
