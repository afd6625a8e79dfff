#pragma once
#include "koszul/barcobar.hpp"
#include "koszul/simplicial.hpp"

namespace koszul {

// f_I for every I subset of [n] with |I| >= 2, of degree -(|I|-2), in
// hom(X_min, X_max)
struct NerveSimplex {
  int n = 0;
  std::vector<u32> objects;
  std::map<std::vector<int>, Vec> f;
  friend bool operator==(const NerveSimplex&, const NerveSimplex&) = default;
};

std::vector<std::vector<int>> nerve_subsets(int n);  // sorted by size, then lexicographically
Report nerve_check_lurie(const DgCategory& D, const NerveSimplex& x);

// subset dictionary xi_I = eps(|I|-2) f_I; sign_error plants a wrong sign
// in degree 1 for negative controls
MCElement nerve_to_mc(const DgCategory& D, const NerveSimplex& x, const PointedCoalgebra& C, bool sign_error = false);
NerveSimplex nerve_from_mc(const DgCategory& D, int n, const MCElement& xi, const PointedCoalgebra& C);
Report nerve_check_mc(const DgCategory& D, const NerveSimplex& x, bool sign_error = false);

// MC element pulled back along a coalgebra morphism (f, a): xi f - a id
MCElement mc_pullback(const DgCategory& D, const PointedCoalgebra& source, const MCElement& xi,
                      const CoalgebraMorphism& m);

// alpha: [m] -> [n]; both ways, throws ComparisonFailure on disagreement
NerveSimplex nerve_act_lurie(const DgCategory& D, const std::vector<int>& alpha, const NerveSimplex& x);
NerveSimplex nerve_act_mc(const DgCategory& D, const std::vector<int>& alpha, const NerveSimplex& x);
NerveSimplex nerve_structure_map(const DgCategory& D, const std::vector<int>& alpha, const NerveSimplex& x);

std::size_t nerve_candidate_count(const DgCategory& D, int n, std::size_t budget);
void for_each_nerve_candidate(const DgCategory& D, int n, std::size_t budget,
                              const std::function<void(const NerveSimplex&)>& fn);
std::vector<NerveSimplex> nerve_enumerate_lurie(const DgCategory& D, int n, std::size_t budget);
std::vector<NerveSimplex> nerve_enumerate_mc(const DgCategory& D, int n, std::size_t budget);
// functors from the poset [n] to an ordinary linear category, brute force
std::vector<NerveSimplex> poset_functors(const DgCategory& D, int n, std::size_t budget);

// all monotone maps [m] -> [n]
std::vector<std::vector<int>> monotone_maps(int m, int n);

// F(C)_n = Hom(C~(Delta^n), C)
Report F_level_check(const PointedCoalgebra& C, int n, const CoalgebraMorphism& m);
std::vector<CoalgebraMorphism> F_level_enumerate(const PointedCoalgebra& C, int n, std::size_t budget);

// L(K) = Omega C~(K), truncated at W
Cobar L_functor(const FiniteSimplicialSet& K, int W, Field f);

std::string show(const DgCategory& D, const NerveSimplex& x);

}  // namespace koszul
