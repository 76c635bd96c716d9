#ifndef NKOSZUL_GENERATORS_HPP
#define NKOSZUL_GENERATORS_HPP

// Seeded random inputs for property checks.

#include <random>

#include "nkoszul/algebra.hpp"
#include "nkoszul/module.hpp"

namespace nkoszul {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);
Scalar random_nonzero(Rng& rng, const PrimeField& f);

struct RandomPresentationOptions {
  int max_vertices = 3;
  int max_arrows = 4;
  std::vector<int> n_choices{2, 3, 4};
  int max_relations = 3;
  bool truncate = true;
};

Quiver random_quiver(Rng& rng, int max_vertices, int max_arrows);
/// Relations are random combinations of parallel paths of length n.
Presentation random_presentation(Rng& rng, const PrimeField& f, const RandomPresentationOptions& opts = {});

/// Random labels in degrees [lo, hi] with up to max_dim basis vectors per
/// degree and random label-respecting generator actions. Not validated.
GradedModule random_graded_data(Rng& rng, const std::shared_ptr<const GradedAlgebra>& alg, int lo, int hi, int max_dim,
                                double density = 0.5);
/// Quotient of a sum of free modules e_v A[-d], with d drawn from `gen_degrees` and
/// cut off above `top`, by the submodule generated by random vertex-homogeneous
/// elements. Always a module.
GradedModule random_quotient_module(Rng& rng, const std::shared_ptr<const GradedAlgebra>& alg, const std::vector<int>& gen_degrees,
                                    int top, int max_generators, int max_relations);
/// KQ/J^n: every path of length n is a relation.
Presentation truncated_presentation(const Quiver& q, int n, const PrimeField& f = PrimeField());
/// One vertex with `loops` loops named x, y, z, ...
Quiver loop_quiver(int loops);
/// K<x, y>/(xy - yx).
Presentation commutative_plane(const PrimeField& f = PrimeField());

/// A module over Λ^!_U supported on m + nj and m + nj + 1 for j < levels, with
/// random degree-1 maps onto the odd degrees and degree-n actions induced from
/// random maps X_{s+1} -> X_{s+n}, one per path of length n - 1. Validated;
/// throws std::runtime_error when no attempt gives a module.
GradedModule random_l_module(Rng& rng, const std::shared_ptr<const GradedAlgebra>& u, int m, int levels, int max_dim);

/// Random invertible change of basis in every degree, preserving vertex labels.
GradedModule random_conjugate(Rng& rng, const GradedModule& m);

}  // namespace nkoszul

#endif  // NKOSZUL_GENERATORS_HPP
