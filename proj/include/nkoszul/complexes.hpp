#ifndef NKOSZUL_COMPLEXES_HPP
#define NKOSZUL_COMPLEXES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nkoszul/grmod.hpp"

namespace nkoszul {

/// A complex of graded modules over one algebra, stored on the positions
/// [lo, lo + size) and zero elsewhere. diff(k) maps term(k) to term(k + 1).
class GradedComplex {
 public:
  GradedComplex() = default;
  GradedComplex(std::shared_ptr<const GradedAlgebra> alg, int period, int lo);

  const std::shared_ptr<const GradedAlgebra>& algebra_ptr() const { return alg_; }
  const GradedAlgebra& algebra() const { return *alg_; }
  int period() const { return period_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool is_zero() const;

  /// Zero module outside the stored positions.
  GradedModule term(int k) const;
  /// Zero morphism outside the stored positions.
  GradedMorphism diff(int k) const;

  void push(GradedModule term, GradedMorphism diff_out);
  void set_diff(int k, GradedMorphism d);

 private:
  std::shared_ptr<const GradedAlgebra> alg_;
  int period_ = 2;
  int lo_ = 0;
  std::vector<GradedModule> terms_;
  std::vector<GradedMorphism> diffs_;
};

/// The matrix of diff(k) in degree d.
Matrix diff_component(const GradedComplex& c, int k, int d);
/// d^{k+len-1} ∘ ... ∘ d^k in degree d.
Matrix composite(const GradedComplex& c, int k, int len, int d);

/// Every n-fold composite of consecutive differentials vanishes.
bool is_n_complex(const GradedComplex& c, int n);
/// Each differential is a graded morphism between its terms.
bool differentials_are_morphisms(const GradedComplex& c);

/// Hom_{Λ0}(Λ, V)[shift] for the Λ_0-module V with basis labels `labels`: the
/// component of degree -shift - i is Hom_{Λ0}(Λ_i, V), with basis f_{b,y}
/// (b ∈ Λ_i, y ∈ V, t(b) = label y), f_{b,y} labelled by s(b). Components of Λ
/// above `top` are dropped.
GradedModule coinduced(const std::shared_ptr<const PathAlgebra>& lambda, const std::vector<int>& labels, int shift, int top);
/// Basis position of f_{b,y} inside its component, or -1.
int coinduced_index(const PathAlgebra& lambda, const std::vector<int>& labels, int i, int b, int y);

/// The canonical map I -> Hom_{Λ0}(Λ, I_{-shift})[shift], w ↦ (a ↦ w·a).
GradedMorphism cogenerator_map(const GradedModule& i, const PathAlgebra& lambda, int shift);

/// Free or cofree description of one term of a linear complex.
enum class Flavor { kProjective, kAlmostInjective };
struct LinearityCertificate {
  Flavor flavor = Flavor::kProjective;
  /// Position -> multiplicity of each vertex (e_v Λ, resp. D(Λ e_v)).
  std::map<int, std::vector<int>> multiplicities;
};

/// Projective and generated in `degree`, checked through the projective cover.
std::optional<std::vector<int>> projective_generated_in(const GradedModule& m, int degree);
/// Isomorphic to Hom_{Λ0}(Λ, V)[-degree] for some V, checked through the cogenerator map.
std::optional<std::vector<int>> almost_injective_cogenerated_in(const GradedModule& m, const PathAlgebra& lambda, int degree);
/// Each C^k projective generated in -k, or almost injective cogenerated in -k.
std::optional<LinearityCertificate> certify_linear(const GradedComplex& c, Flavor flavor);

/// Requires the generators of degree 1 of M's algebra to be the arrows of Λ^op, in order.
void require_dual_arrows(const GradedModule& m, const PathAlgebra& lambda, const char* where);

/// M·I_n^⊥ = 0 for a module over a quotient of KQ^op, checked path by path.
bool annihilates_orthogonal(const GradedModule& m, const PathAlgebra& lambda);
/// M / M·I_n^⊥, the largest quotient that does.
GradedModule kill_orthogonal(const GradedModule& m, const PathAlgebra& lambda);

/// Ψ(M): P^k = M_k ⊗ Λ[k] with d(x ⊗ b) = Σ_α x·α^o ⊗ αb.
GradedComplex psi(const GradedModule& m, const std::shared_ptr<const PathAlgebra>& lambda, bool allow_windowed = false);

/// Which arrows enter the differential of ν; the default uses all of them.
struct NuVariant {
  bool drop_last_arrow = false;
};
/// ν(M): I^j_d = Hom_{Λ0}(Λ_{-d-j}, M_j) with (df)(a) = Σ_α f(aα)·α^o.
GradedComplex nu(const GradedModule& m, const std::shared_ptr<const PathAlgebra>& lambda, bool allow_windowed = false,
                 NuVariant variant = {});

/// Stalk complexes with a single term at `position`.
GradedComplex stalk(const GradedModule& m, int position, int period);
/// D(Λ)[j] as a right Λ-module: Hom_{Λ0}(Λ, Λ_0)[j].
GradedModule dual_regular(const std::shared_ptr<const PathAlgebra>& lambda, int j);

/// Membership predicates for ν-type complexes; positions outside the window are zero.
bool in_T_star(const GradedComplex& c, const TorsionParams& params);
bool in_G_star(const GradedComplex& c, const TorsionParams& params);

/// H_m: Ĩ^k = I^{δ_m(k)}, d̃^{2j} = d^{m+jn}, d̃^{2j+1} = d^{m+(j+1)n-1} ∘ ... ∘ d^{m+jn+1}.
GradedComplex contract_H(const GradedComplex& c, int n, int m);
/// G_m: P̃^j = P^{-δ_m(-j)}, d̃^{2j-1} = d^{-m+jn-1}, d̃^{2j} = d^{-m+(j+1)n-2} ∘ ... ∘ d^{-m+jn}.
GradedComplex contract_G(const GradedComplex& c, int n, int m);

/// ξ on X_{m+jn+1} ⊗ p^o for each p ∈ Q_{n-1}: a map X_{s+1} -> X_{s+n}, keyed by path.
/// Throws std::logic_error when two decompositions disagree.
std::map<Path, Matrix> xi_maps(const GradedModule& x, const PathAlgebra& lambda, int s, std::uint64_t seed = 7);

/// The 2-complex F(X) for X over Λ^!_U with in_L(X).
GradedComplex equivalence_F(const GradedModule& x, const std::shared_ptr<const PathAlgebra>& lambda, const TorsionParams& params);
/// The inverse: X_{δ_m(k)} read from Ĩ^k, actions from the differentials.
/// Throws std::invalid_argument when (a) or (b) fails or the result is not a module.
GradedModule extract_module(const GradedComplex& c, const std::shared_ptr<const GradedAlgebra>& u, const TorsionParams& params);

struct MembershipReport {
  bool verdict = false;
  std::string reason;
  std::optional<GradedModule> witness;
};
MembershipReport in_Y(const GradedComplex& c, const std::shared_ptr<const GradedAlgebra>& u, const TorsionParams& params);

/// D of each term with positions negated; the terms live over `op`.
GradedComplex dual_complex(const GradedComplex& c, const OppositeAlgebra& op);
/// The opposite of a path algebra built from `target`'s own quiver, so that D lands on `target`.
OppositeAlgebra arrow_opposite(const std::shared_ptr<const PathAlgebra>& target);

/// The algebras involved on the opposite side of Λ.
struct OppositeSide {
  std::shared_ptr<const PathAlgebra> lambda_op;
  OppositeAlgebra to_op;     // Λ-modules -> Λ^op-modules
  OppositeAlgebra from_op;   // Λ^op-modules -> Λ-modules
};
OppositeSide opposite_side(const std::shared_ptr<const PathAlgebra>& lambda);

/// D ∘ F_{Λ^op} ∘ D for X over Λ^!_U with in_Lo(X).
GradedComplex equivalence_F_dual(const GradedModule& x, const std::shared_ptr<const PathAlgebra>& lambda, const TorsionParams& params);
/// Conditions of the projective side: P̃^j projective generated in δ_m(-j); Ker d̃^{2k-1} ⊆ P̃^{2k-1}J.
bool projective_conditions(const GradedComplex& c, const TorsionParams& params, std::string* reason = nullptr);
MembershipReport in_Yo(const GradedComplex& c, const std::shared_ptr<const GradedAlgebra>& u, const TorsionParams& params);

/// A basis of chain maps c -> c' (one graded morphism per position).
std::vector<std::map<int, GradedMorphism>> hom_complexes(const GradedComplex& c, const GradedComplex& cp);
bool iso_complexes(const GradedComplex& c, const GradedComplex& cp, int attempts = 8, std::uint64_t seed = 3);

}  // namespace nkoszul

#endif  // NKOSZUL_COMPLEXES_HPP
