#pragma once
#include "koszul/curved.hpp"

namespace koszul {

// s_{j1} ... s_{jk} x with j1 > ... > jk
struct DegenerateForm {
  u32 base = 0;
  std::vector<int> word;
  friend bool operator==(const DegenerateForm&, const DegenerateForm&) = default;
};

struct NondegenerateSimplex {
  std::string label;
  int dim = 0;
  std::vector<DegenerateForm> faces;  // d_0 .. d_dim, empty for vertices
};

struct FiniteSimplicialSet {
  std::vector<NondegenerateSimplex> simplices;

  void reindex();
  std::optional<u32> find(const std::string& label) const;
  u32 index(const std::string& label) const;
  int dim(const DegenerateForm& x) const { return simplices[x.base].dim + static_cast<int>(x.word.size()); }
  std::vector<u32> vertices() const;  // indices of 0-simplices, in order
  int top_dimension() const;

 private:
  std::unordered_map<std::string, u32> index_;
};

// a simplex as (base, monotone surjection [m] -> [dim base])
struct Form {
  u32 base = 0;
  std::vector<int> surj;
  friend bool operator==(const Form&, const Form&) = default;
  friend auto operator<=>(const Form&, const Form&) = default;
};

Form to_form(const FiniteSimplicialSet& K, const DegenerateForm& x);
DegenerateForm to_degenerate(const Form& x);
bool is_degenerate(const Form& x);
Form nondegenerate(const FiniteSimplicialSet& K, u32 i);
// x composed with a monotone map alpha: [m] -> [dim x]
Form act(const FiniteSimplicialSet& K, const Form& x, const std::vector<int>& alpha);
Form face(const FiniteSimplicialSet& K, const Form& x, int i);
u32 vertex(const FiniteSimplicialSet& K, const Form& x, int k);  // index of the k-th vertex

Report validate_sset(const FiniteSimplicialSet& K);

// fixtures
FiniteSimplicialSet standard_simplex(int n);                      // vertices 0..n, simplices named by subsets "012"
FiniteSimplicialSet simplex_boundary(int n);                      // all proper faces of Delta^n
FiniteSimplicialSet sphere(int n);                                // one vertex p, one n-simplex s
FiniteSimplicialSet long_edge();                                  // 2-simplex with a degenerate long edge
FiniteSimplicialSet simplex_quotient(int n, const std::vector<std::vector<int>>& identify);  // glue vertices

// chains
PointedCoalgebra normalized_chains(const FiniteSimplicialSet& K, Field f);
// plain cochains; d does not preserve the k^S splitting
CurvedAlgebra cochain_algebra(const FiniteSimplicialSet& K, Field f);
Vec constant_cochain(const FiniteSimplicialSet& K, const CurvedAlgebra& A);  // e
CurvedAlgebra twisted_cochain_algebra(const FiniteSimplicialSet& K, Field f);
PointedCoalgebra twisted_chains(const FiniteSimplicialSet& K, Field f);
// (id, -e) and (id, e) between the twisted and plain cochain algebras,
// validated and composed both ways
Report twisted_isomorphism_check(const FiniteSimplicialSet& K, Field f);
// C~ differential against sum_{i=1}^{n-1} (-1)^i d_i, on simplices whose
// extreme edges are nondegenerate
Report subset_formula_check(const FiniteSimplicialSet& K, Field f);

struct SimplicialMap {
  std::vector<Form> image;  // per nondegenerate simplex of the source
};
Report validate_map(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, const SimplicialMap& g);
SimplicialMap compose(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, const FiniteSimplicialSet& M,
                      const SimplicialMap& g, const SimplicialMap& f);  // g after f
// the map of simplices induced by monotone alpha: [m] -> [n] from Delta^m to Delta^n
SimplicialMap simplex_map(int m, int n, const std::vector<int>& alpha);
CoalgebraMorphism chains_on_map(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, const SimplicialMap& g,
                                Field f);

}  // namespace koszul
