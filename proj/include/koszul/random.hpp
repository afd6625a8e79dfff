#pragma once
#include <random>

#include "koszul/fixtures.hpp"
#include "koszul/modcomod.hpp"

namespace koszul {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n);
Scalar random_scalar(Field f, Rng& rng, bool nonzero = false);

// invertible change of basis preserving the given block of each index;
// P[j] = new basis vector j in old coordinates, Pinv the inverse
struct BasisChange {
  std::vector<Vec> P, Pinv;
};
BasisChange random_basis_change(Field f, Rng& rng, const std::vector<std::string>& blocks,
                                const std::vector<bool>& frozen = {});
Vec apply_change(const std::vector<Vec>& M, const Vec& v);

DgCategory change_basis(const DgCategory& D, const BasisChange& b);
PointedCoalgebra change_basis(const PointedCoalgebra& C, const BasisChange& b);
Comodule change_basis(const Comodule& M, const BasisChange& b);
Module change_basis(const Module& M, const Algebra& A, const BasisChange& b);
DgCategory scramble(const DgCategory& D, Rng& rng);
PointedCoalgebra scramble(const PointedCoalgebra& C, Rng& rng);

// <= max_objects objects, every hom of dim <= max_hom, valid
DgCategory random_dg_category(Field f, Rng& rng, int max_objects = 3, int max_hom = 3);
// <= 2 objects, <= 4 cells, degrees in [-3, 3], valid, possibly curved
PointedCoalgebra random_coalgebra(Field f, Rng& rng);

Comodule shift(const Comodule& M, int k);
Module shift(const Module& M, int k);
Comodule direct_sum(const Comodule& a, const Comodule& b);
Module direct_sum(const Module& a, const Module& b);

// valid small comodule / module, dims <= max_dim
Comodule random_comodule(const PointedCoalgebra& C, Rng& rng, std::size_t max_dim = 3);
Module random_module(const DgCategory& D, Rng& rng, std::size_t max_dim = 3);

struct FgInstance {
  DgCategory D;
  BarCoalgebra B;
  MCElement tau;
  Comodule N;
  Module M;
};
FgInstance random_fg_instance(Field f, Rng& rng);

}  // namespace koszul
