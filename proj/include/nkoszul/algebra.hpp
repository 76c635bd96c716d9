#ifndef NKOSZUL_ALGEBRA_HPP
#define NKOSZUL_ALGEBRA_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkoszul/linalg.hpp"
#include "nkoszul/quiver.hpp"

namespace nkoszul {

class PathAlgebra;

/// Raised when a computation needs a graded component outside the built window.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A homogeneous algebra generator: basis element `index` of component `degree`.
struct Generator {
  std::string name;
  int degree = 1;
  int index = 0;
  int source = 0;
  int target = 0;
};

/// Basis element b of V_t written as sum of coef * (basis y of V_{t - deg g}) * g.
struct DecompositionTerm {
  int generator = 0;
  int prefix = 0;
  Scalar coef = 1;
};
using Decomposition = std::vector<std::vector<DecompositionTerm>>;

/// A positively graded algebra with semisimple degree-0 part KQ_0, given by
/// finite-dimensional components V_0..V_top (each basis element lying in one
/// e_i V e_j block), a homogeneous generating set and right multiplication by
/// the generators. Components above `top` are zero when `bounded()`.
class GradedAlgebra {
 public:
  enum class Kind { kPath, kSupport, kYoneda };

  virtual ~GradedAlgebra() = default;

  Kind kind() const { return kind_; }
  const PrimeField& field() const { return field_; }
  int vertex_count() const { return vertex_count_; }
  int top() const { return top_; }
  bool bounded() const { return bounded_; }
  int homogeneity() const { return n_; }

  /// dim V_t; throws WindowError past an unbounded window.
  int dim(int t) const;
  bool in_window(int t) const { return t >= 0 && (t <= top_ || bounded_); }
  const std::vector<int>& sources(int t) const;
  const std::vector<int>& targets(int t) const;

  const std::vector<Generator>& generators() const { return generators_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  int max_generator_degree() const;
  int find_generator(const std::string& name) const;  // -1 when absent

  /// V_{t + deg g} x V_t.
  Matrix right_mult(int t, int g) const;

  /// Expresses each basis element of V_t (t >= 1) through generators.
  const Decomposition& decomposition(int t) const;
  /// Linear relations among the terms y*g spanning V_t, as rows over the
  /// domain layout of `domain_layout(t)`; empty for path algebras, whose
  /// modules are validated against their defining relations instead.
  const Subspace& syzygies(int t) const;
  /// (generator, offset) pairs: the domain coordinate of y*g is offset + y.
  std::vector<std::pair<int, int>> domain_layout(int t) const;

  /// Λ^! for support-restricted and regraded algebras, null otherwise.
  const std::shared_ptr<const PathAlgebra>& dual_base() const { return dual_base_; }

  /// Generator degrees and endpoints; modules may be compared only across equal signatures.
  std::string signature() const;

 protected:
  GradedAlgebra(Kind kind, PrimeField field, int vertex_count, int n)
      : kind_(kind), field_(field), vertex_count_(vertex_count), n_(n) {}

  virtual Decomposition compute_decomposition(int t) const;

  Kind kind_;
  PrimeField field_;
  int vertex_count_ = 1;
  int n_ = 2;
  int top_ = 0;
  bool bounded_ = false;
  std::vector<std::vector<int>> sources_, targets_;  // [t][basis]
  std::vector<Generator> generators_;
  std::vector<std::vector<Matrix>> right_;  // [t][g], stored while t + deg g <= top
  std::shared_ptr<const PathAlgebra> dual_base_;

 private:
  Matrix phi(int t) const;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, Decomposition> decomposition_cache_;
  mutable std::map<int, Subspace> syzygy_cache_;
};

/// a * b for a in V_t and b in V_s, through the generator decompositions of b.
Vector product(const GradedAlgebra& alg, int t, const Vector& a, int s, const Vector& b);

/// A quiver with homogeneous relations of degree >= n.
struct Presentation {
  Quiver quiver;
  int n = 2;
  std::vector<PathCombination> relations;
  PrimeField field;
  /// Asserted bound: Λ_k = 0 for k > cap; verified while building.
  std::optional<int> degree_cap;
  /// Imposed bound: every path longer than this lies in the ideal.
  std::optional<int> truncation;
};

/// Λ = KQ/I through a degree window: ideal slices I_k, canonical quotient
/// bases (the paths that are not RREF pivots of I_k) and multiplication.
class PathAlgebra : public GradedAlgebra {
 public:
  /// Builds slices for k <= top. Throws on inhomogeneous or low-degree
  /// relations and on a violated degree cap.
  static std::shared_ptr<const PathAlgebra> build(const Presentation& pres, int top);

  const Presentation& presentation() const { return pres_; }
  const Quiver& quiver() const { return pres_.quiver; }

  const std::vector<Path>& paths(int k) const;
  int path_index(const Path& p) const;  // -1 when p is not of a built length
  const Subspace& ideal(int k) const;
  /// Path index of basis element b of Λ_k.
  int basis_path_index(int k, int b) const { return basis_paths_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(b)); }
  const Path& basis_path(int k, int b) const { return paths(k)[static_cast<std::size_t>(basis_path_index(k, b))]; }
  /// Basis position of a path, or -1 if the path is an ideal pivot.
  int basis_position(int k, int path_idx) const { return basis_pos_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(path_idx)); }

  /// Image of a path (by index) or a combination in the quotient basis of Λ_k.
  Vector coordinates(int k, int path_idx) const;
  Vector coordinates(const PathCombination& c) const;
  Vector coordinates(const Path& p) const;

  /// Left multiplication by an arrow, Λ_t -> Λ_{t+1}.
  Matrix left_mult(int t, int arrow) const;
  /// Product of homogeneous elements u in Λ_k and v in Λ_l.
  Vector multiply(int k, const Vector& u, int l, const Vector& v) const;

  /// Generator index of an arrow (arrows are the generators, in order).
  int arrow_generator(int arrow) const { return arrow; }

 protected:
  Decomposition compute_decomposition(int t) const override;

 private:
  PathAlgebra(const Presentation& pres)
      : GradedAlgebra(Kind::kPath, pres.field, pres.quiver.vertex_count(), pres.n), pres_(pres) {}

  Presentation pres_;
  std::vector<std::vector<Path>> paths_;
  std::vector<std::map<std::vector<int>, int>> path_lookup_;
  std::vector<Subspace> ideals_;
  std::vector<std::vector<int>> basis_paths_;
  std::vector<std::vector<int>> basis_pos_;
};

/// I_n^⊥ inside KQ_n^op, as the kernel of the pairing Gram matrix. Coordinates
/// follow `enumerate_paths(quiver.opposite(), n)`.
Subspace compute_orthogonal(const PathAlgebra& lambda);

/// The basis of I_n^⊥ obtained by sorting Q_n into independent-mod-I paths
/// (r block), the other paths outside I (s block) and the paths inside I (t block).
struct DualData {
  std::vector<int> r_block, s_block, t_block;  // indices into paths(n)
  Matrix lambda;                               // r x s, p_j = sum_i lambda(i, j) p_i mod I
  std::vector<PathCombination> h_basis;        // over the opposite quiver
  Subspace orthogonal;
};
DualData compute_orthogonal_via_ordering(const PathAlgebra& lambda);

/// The n-homogeneous dual KQ^op/<I_n^⊥> through degree `top`.
std::shared_ptr<const PathAlgebra> build_dual(const PathAlgebra& lambda, int top);

/// The strictly increasing map with δ_m(2k) = m + kn and δ_m(2k+1) = m + kn + 1.
struct DegreeMap {
  int m = 0;
  int n = 2;

  int operator()(int j) const;
  bool in_image(int d) const;
  /// Inverse on the image; throws std::domain_error elsewhere.
  int inverse(int d) const;
};

/// U = nZ ∪ (nZ + 1).
bool in_support_set(int t, int n);

/// Λ^!_U: components of degree in U, generated by arrows and (for n > 2) a
/// basis of Λ^!_n; products leaving U vanish.
std::shared_ptr<const GradedAlgebra> restrict_support(const std::shared_ptr<const PathAlgebra>& dual);

/// E with E_j = Λ^!_{δ_0(j)}, generated in degrees 1 and 2.
std::shared_ptr<const GradedAlgebra> yoneda_regrade(const std::shared_ptr<const GradedAlgebra>& support);

}  // namespace nkoszul

#endif  // NKOSZUL_ALGEBRA_HPP
