#ifndef NKOSZUL_GRMOD_HPP
#define NKOSZUL_GRMOD_HPP

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "nkoszul/module.hpp"

namespace nkoszul {

using DegreeSet = std::function<bool(int)>;
DegreeSet degrees_in(std::vector<int> degrees);

/// U = ∪_k [kn, kn + r], S = m + U, and the quotient set (S:U), which is
/// m + nZ, or all of Z when 2r = n = 2.
struct TorsionParams {
  int n = 2;
  int r = 1;
  int m = 0;

  void check() const;  // 0 <= 2r <= n, strict when n > 2
  bool in_U(int d) const;
  bool in_S(int d) const;
  bool in_quotient_set(int d) const;
};

std::vector<int> support(const GradedModule& m);

GradedModule socle(const GradedModule& m, GradedMorphism* inclusion = nullptr);
/// M / M·A_{>0}.
GradedModule top(const GradedModule& m, GradedMorphism* projection = nullptr);

/// The submodule generated by the components in X is everything.
bool generated_in_degrees(const GradedModule& m, const DegreeSet& x);
/// Supp(top M) ⊆ X; equivalent to generated_in_degrees for finite modules.
bool top_supported_in(const GradedModule& m, const DegreeSet& x);
/// Supp(Soc M) ⊆ X.
bool cogenerated_in_degrees(const GradedModule& m, const DegreeSet& x);

/// A projective cover P -> M with one free summand e_v A[-d] per top basis
/// vector, cut off above `hi`. Generators are (degree, vertex) pairs.
struct ProjectiveCover {
  GradedModule cover;
  GradedMorphism map;
  std::vector<std::pair<int, int>> generators;
};
ProjectiveCover projective_cover(const GradedModule& m, int hi);

/// Generator degrees and vertices of P0 and P1 in a minimal presentation P1 -> P0 -> M -> 0.
struct MinimalPresentation {
  std::vector<std::pair<int, int>> p0, p1;
};
/// Throws WindowError when the algebra window cannot hold the relations.
MinimalPresentation minimal_presentation(const GradedModule& m);
bool presented_in_degrees(const GradedModule& m, const DegreeSet& x);

/// Largest submodule supported off S.
DegreewiseSubspaces torsion_submodule(const GradedModule& m, const TorsionParams& params);
/// No x in a degree off S is killed by all degree-1 generators.
bool is_torsionfree(const GradedModule& m, const TorsionParams& params);
/// Torsionfree and generated in (S:U).
bool in_G(const GradedModule& m, const TorsionParams& params);

/// A^op together with the element of A that each generator of A^op reverses.
struct OppositeAlgebra {
  std::shared_ptr<const GradedAlgebra> algebra;
  std::vector<Vector> generator_images;  // in the original V_{deg g}
};
OppositeAlgebra opposite_algebra(const std::shared_ptr<const GradedAlgebra>& alg);
std::shared_ptr<const PathAlgebra> opposite_path_algebra(const PathAlgebra& alg);

/// D(M)_d = (M_{-d})^* over A^op, with dual bases and transposed actions.
GradedModule graded_dual(const GradedModule& m, const OppositeAlgebra& op);
GradedModule graded_dual(const GradedModule& m);

/// (M)_S for a module over Λ^!, as a module over the support algebra `u`.
GradedModule restrict_S(const GradedModule& m, const TorsionParams& params, const std::shared_ptr<const GradedAlgebra>& u);

/// V over E viewed over Λ^!_U by V_j ↦ degree δ_0(j), and back.
GradedModule regrade_to_support(const GradedModule& v, const std::shared_ptr<const GradedAlgebra>& u);
GradedModule regrade_to_yoneda(const GradedModule& x, const std::shared_ptr<const GradedAlgebra>& e);

/// Generated in (S:U) and Ker(μ_{d,1})·Λ^!_{n-1} ⊆ Ker(μ_{d,n}) for d in m + nZ.
/// Throws std::invalid_argument when Supp(X) is not inside S.
bool in_L(const GradedModule& x, const TorsionParams& params);
/// Generated in even degrees and the same kernel condition read through E_1 = Λ^!_1, E_2 = Λ^!_n.
bool in_L_E(const GradedModule& v);

/// Δ_{s,u}: X_{-s-u} -> X_{-s} ⊗ KQ_u. Rows are the pairs (basis y of X_{-s}, path p of
/// the base quiver) with y at o(p), listed y-major in `rows`.
struct Comultiplication {
  Matrix map;
  std::vector<std::pair<int, Path>> rows;
};
Comultiplication comultiplication(const GradedModule& x, int s, int u);

/// Cogenerated in -(S:U) and the comultiplication square can be completed for every k.
/// Throws std::invalid_argument when Supp(X) is not inside -S.
bool in_Lo(const GradedModule& x, const TorsionParams& params);

}  // namespace nkoszul

#endif  // NKOSZUL_GRMOD_HPP
