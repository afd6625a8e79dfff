#pragma once
#include "koszul/curved.hpp"

namespace koszul {

struct BarCoalgebra {
  PointedCoalgebra coalgebra;
  DgCategory base;                       // the (rebased) category whose letters are used
  std::vector<std::vector<u32>> words;   // per cell, letters as base basis indices
  std::map<std::vector<u32>, u32> word_index;
  int word_bound = 0;
  bool reduced = false;
  Retract retract;  // meaningful when reduced
};

// coordinates of the original category vs the rebased letters
Vec to_bar_base(const BarCoalgebra& B, const DgCategory& D, const Vec& x);
Vec from_bar_base(const BarCoalgebra& B, const DgCategory& D, const Vec& x);

BarCoalgebra bar_nonreduced(const DgCategory& D, int W);
BarCoalgebra bar_reduced(const DgCategory& D, const Retract& v, int W);
BarCoalgebra bar_reduced(const DgCategory& D, int W);  // default retract
std::string word_label(const Algebra& D, const std::vector<u32>& w);

// words in cobar generators; identity at s is (s, {})
using PathKey = std::pair<u32, std::vector<u32>>;
using PVec = Combo<PathKey>;

PVec path_mul(const PointedCoalgebra& C, const PVec& x, const PVec& y);
PVec cobar_d_generator(const PointedCoalgebra& C, u32 cell);
PVec cobar_d(const PointedCoalgebra& C, const PVec& x);
std::string path_label(const PointedCoalgebra& C, const PathKey& p);

struct Cobar {
  DgCategory category;
  std::vector<PathKey> paths;  // per basis element
  std::map<PathKey, u32> path_index;
  int word_bound = 0;
  bool curved = false;
  // degrees of (s,t) containing a word of length W+1
  std::map<std::pair<u32, u32>, std::set<int>> inexact;
  bool exact(u32 s, u32 t, int deg) const;
  Vec to_basis(const PVec& x) const;  // drops words longer than W
};

Cobar cobar(const PointedCoalgebra& C, int W);
// d^2 on words of degree n where degree n+1 is exact
Report check_cobar_square_zero(const Cobar& O);

// dg functor Omega C -> Omega C' given on generators
struct CobarFunctor {
  std::vector<u32> object_map;
  std::vector<PVec> generator;  // per source cell
};
CobarFunctor cobar_on_morphism(const PointedCoalgebra& C, const PointedCoalgebra& Cp, const CoalgebraMorphism& m);
PVec apply_functor(const PointedCoalgebra& Cp, const CobarFunctor& F, const PVec& x);
Report check_cobar_functor(const PointedCoalgebra& C, const PointedCoalgebra& Cp, const CobarFunctor& F);
CobarFunctor compose(const PointedCoalgebra& Cpp, const CobarFunctor& G, const CobarFunctor& F);

// ---- MC elements ----
struct MCElement {
  std::vector<u32> object_map;
  std::vector<Vec> xi;  // per cell of C, over basis of D
};

Vec mc_defect(const PointedCoalgebra& C, const DgCategory& D, const MCElement& x, u32 cell);
Report mc_check(const PointedCoalgebra& C, const DgCategory& D, const MCElement& x);
// the same data read as a functor Omega C -> D, checked through the cobar differential
Vec functor_value(const PointedCoalgebra& C, const DgCategory& D, const MCElement& F, const PVec& x);
Report functor_check(const PointedCoalgebra& C, const DgCategory& D, const MCElement& F);
bool same_mc(const MCElement& a, const MCElement& b);

std::size_t candidate_count(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget);
void for_each_candidate(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget,
                        const std::function<void(const MCElement&)>& fn);
std::vector<MCElement> mc_enumerate(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget);
std::vector<MCElement> functor_enumerate(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget);

// adjunction maps
MCElement phi(const MCElement& functor);
MCElement phi_inv(const MCElement& xi);
CoalgebraMorphism psi(const PointedCoalgebra& C, const DgCategory& D, const BarCoalgebra& B, const MCElement& xi);
MCElement psi_inv(const PointedCoalgebra& C, const DgCategory& D, const BarCoalgebra& B, const CoalgebraMorphism& m);
// all curved morphisms C -> T over F_p, brute force within the budget
std::vector<CoalgebraMorphism> morphism_enumerate(const PointedCoalgebra& C, const PointedCoalgebra& T,
                                                  std::size_t budget);
std::vector<CoalgebraMorphism> bar_morphism_enumerate(const PointedCoalgebra& C, const BarCoalgebra& B,
                                                      std::size_t budget);
// counts of MC(C, D), Fun(Omega C, D), Hom(C, B D) over F_p and the
// phi / psi round trips; B D is taken at W = max(2, conilpotence of C)
struct RoundTrip {
  Report report;
  std::size_t mc = 0, functors = 0, morphisms = 0;
  int word_bound = 0;
};
RoundTrip adjunction_roundtrip(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget);
// tautological element on B(D): [b] -> -b
MCElement tautological(const BarCoalgebra& B, const DgCategory& D);
// tau_C : C -> Omega C, c -> <c>, valued in the truncated cobar
MCElement cobar_tautological(const PointedCoalgebra& C, const Cobar& O);

struct CounitResult {
  Report report;
  bool equal = true;
  bool stabilized = true;
  bool quasi_iso = true;
  // (s,t) -> degree -> (dim H Omega B D, dim H D)
  std::map<std::pair<u32, u32>, std::map<int, std::pair<std::size_t, std::size_t>>> table;
  std::vector<std::string> inexact;  // "(s,t) degree" entries inside the window
};
CounitResult counit_check(const DgCategory& D, int W, int lo, int hi);

struct RetractCertificate {
  Report report;
  AlgebraMorphism forward, backward;
};
RetractCertificate retract_independence(const DgCategory& D, const Retract& v, const Retract& w, int W);

Report reduced_unreduced_check(const DgCategory& D, const Retract& v, int W);

}  // namespace koszul
