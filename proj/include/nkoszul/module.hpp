#ifndef NKOSZUL_MODULE_HPP
#define NKOSZUL_MODULE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nkoszul/algebra.hpp"

namespace nkoszul {

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// A finite graded right module over a GradedAlgebra: components M_d for d in
/// [lo, hi] (zero elsewhere), every basis vector x sitting at one vertex
/// (x = x e_v), and one matrix per generator g and degree d giving
/// M_d -> M_{d + deg g}. Construction does not check the module axioms; call
/// validate() or build through the helpers below, which preserve them.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(std::shared_ptr<const GradedAlgebra> alg, int lo, std::vector<std::vector<int>> labels);
  static GradedModule zero(std::shared_ptr<const GradedAlgebra> alg);

  const GradedAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const GradedAlgebra>& algebra_ptr() const { return alg_; }
  const PrimeField& field() const { return alg_->field(); }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(labels_.size()) - 1; }
  int dim(int d) const;
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  const std::vector<int>& labels(int d) const;

  /// M_d -> M_{d + deg g}; d must lie in [lo, hi].
  const Matrix& action(int g, int d) const;
  /// Same, but a correctly shaped zero matrix outside the window.
  Matrix action_or_zero(int g, int d) const;
  void set_action(int g, int d, const Matrix& m);

  bool validated() const { return validated_; }
  ValidationReport validate();
  void require_validated(const char* where) const;
  /// For constructions that preserve the module axioms by design.
  void assume_valid() { validated_ = true; }

  /// Drops zero components at both ends.
  GradedModule trimmed() const;
  /// Same data with explicit zero components added so that [lo, hi] is covered.
  GradedModule widened(int lo, int hi) const;

 private:
  std::shared_ptr<const GradedAlgebra> alg_;
  int lo_ = 0;
  std::vector<std::vector<int>> labels_;
  std::vector<std::vector<Matrix>> actions_;  // [g][d - lo]
  bool validated_ = false;
};

/// Action of algebra basis elements: element(d, t) is dim M_{d+t} x (dim M_d * dim V_t)
/// with column i * dim V_t + b holding x_i * b. Built from generator actions
/// through the algebra's decompositions.
class ActionTable {
 public:
  explicit ActionTable(const GradedModule& m) : m_(&m) {}
  const Matrix& element(int d, int t);
  /// Right multiplication by a ∈ V_t as a map M_d -> M_{d+t}.
  Matrix by(int d, int t, const Vector& a);
  /// Right multiplication by basis element b of V_t.
  Matrix by_basis(int d, int t, int b);

 private:
  const GradedModule* m_;
  std::map<std::pair<int, int>, Matrix> cache_;
};

/// Degree-preserving linear maps, one matrix per degree (absent means zero).
struct GradedMorphism {
  std::map<int, Matrix> components;
  Matrix component(int d, Index rows, Index cols) const;
};

bool is_morphism(const GradedMorphism& f, const GradedModule& from, const GradedModule& to);
GradedMorphism compose(const GradedMorphism& g, const GradedMorphism& f, const GradedModule& from,
                       const GradedModule& mid, const GradedModule& to);

/// Degreewise subspaces of a module, keyed by degree; absent degrees are zero.
using DegreewiseSubspaces = std::map<int, Subspace>;

Subspace part(const DegreewiseSubspaces& s, const GradedModule& m, int d);
/// The submodule generated by the seeds.
DegreewiseSubspaces generated_submodule(const GradedModule& m, const DegreewiseSubspaces& seeds);
/// Sum of the images of all generators: M·A_{>0}.
DegreewiseSubspaces radical(const GradedModule& m);
/// Elements killed by every generator.
DegreewiseSubspaces socle_parts(const GradedModule& m);

/// The submodule with the canonical RREF basis in each degree; throws if the
/// subspaces are not closed under the action or not vertex-homogeneous.
GradedModule submodule(const GradedModule& m, const DegreewiseSubspaces& s, GradedMorphism* inclusion = nullptr);
/// The quotient with basis the non-pivot standard vectors in each degree.
GradedModule quotient(const GradedModule& m, const DegreewiseSubspaces& s, GradedMorphism* projection = nullptr);

/// The same labels and generator actions over another algebra with the same
/// generator signature; not validated.
GradedModule with_algebra(const GradedModule& m, const std::shared_ptr<const GradedAlgebra>& alg);

/// M[k]_d = M_{d+k}.
GradedModule shift(const GradedModule& m, int k);
GradedModule direct_sum(const std::vector<GradedModule>& parts);

/// e_v A with e_v placed in `degree`, cut off above `hi`.
GradedModule free_module(const std::shared_ptr<const GradedAlgebra>& alg, int vertex, int degree, int hi);
/// The simple module at `vertex` concentrated in `degree`.
GradedModule simple_module(const std::shared_ptr<const GradedAlgebra>& alg, int vertex, int degree);

/// A basis of Hom(M, N) as graded module maps of degree zero.
std::vector<GradedMorphism> hom_space(const GradedModule& from, const GradedModule& to);
/// Searches the Hom space for a degreewise invertible map using seeded random combinations.
bool isomorphic(const GradedModule& a, const GradedModule& b, int attempts = 8, std::uint64_t seed = 1);
/// Same dimensions, labels and action matrices.
bool identical(const GradedModule& a, const GradedModule& b);

}  // namespace nkoszul

#endif  // NKOSZUL_MODULE_HPP
