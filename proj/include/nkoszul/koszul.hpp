#ifndef NKOSZUL_KOSZUL_HPP
#define NKOSZUL_KOSZUL_HPP

#include <limits>
#include <memory>
#include <vector>

#include "nkoszul/complexes.hpp"

namespace nkoszul {

/// P^N -> ... -> P^0 -> M -> 0 built from iterated projective covers.
/// maps[0] is P^0 -> M and maps[j] is P^j -> P^{j-1}.
struct ResolutionSegment {
  GradedModule resolved;
  int bound = 0;
  std::vector<GradedModule> terms;
  std::vector<std::vector<std::pair<int, int>>> generators;  // (degree, vertex) per term
  std::vector<GradedMorphism> maps;
  /// A zero syzygy was reached, so the resolution stops at terms.size() - 1.
  bool complete = false;
  /// Internal degree through which every term is exact; unlimited over a bounded algebra.
  int exact_through = std::numeric_limits<int>::max();
};

/// Thrown when the algebra window cannot hold the next step; carries what was computed.
class ResolutionWindowError : public WindowError {
 public:
  ResolutionWindowError(const std::string& what, ResolutionSegment partial)
      : WindowError(what), partial_(std::move(partial)) {}
  const ResolutionSegment& partial() const { return partial_; }

 private:
  ResolutionSegment partial_;
};

ResolutionSegment minimal_projective_resolution(const GradedModule& m, int bound);

/// Exactness and minimality of a segment, checked degree by degree.
bool check_resolution(const ResolutionSegment& r);

/// Λ_0 as a right module: the simples at every vertex in degree 0.
GradedModule degree_zero_part(const std::shared_ptr<const GradedAlgebra>& alg);

struct KoszulReport {
  bool verdict = false;
  int bound = 0;
  int exact_through = std::numeric_limits<int>::max();
  /// Generation degrees of P^j, sorted.
  std::vector<std::vector<int>> degrees;
  /// First homological degree off the pattern, or -1.
  int first_failure = -1;
};

/// P^j in the minimal resolution of Λ_0 is generated purely in degree δ_0(j), for j <= bound.
KoszulReport n_koszul_report(const std::shared_ptr<const PathAlgebra>& lambda, int bound);
bool is_n_koszul(const std::shared_ptr<const PathAlgebra>& lambda, int bound);
/// Builds Λ through `top`, or through its truncation when one is declared.
bool is_n_koszul(const Presentation& pres, int bound, int top);

/// ext[j](v, w): copies of e_w Λ in P^j of the minimal resolution of the simple at v.
std::vector<Matrix> ext_dims(const std::shared_ptr<const PathAlgebra>& lambda, int bound);
/// The same table read off Λ^!_{δ(j)}: paths of Q from v to w.
std::vector<Matrix> dual_dims(const PathAlgebra& dual, int bound);

/// 0 -> M -> Ĩ^0 -> Ĩ^1 -> ..., computed as D of the minimal resolution of D(M).
/// Positions 0..; the complex is a 2-complex over Λ.
GradedComplex minimal_coresolution(const GradedModule& m, int bound);

/// Cogenerated in degree 0 with Ĩ^j cogenerated in degree -δ_0(j) for j <= bound.
bool is_n_cokoszul(const GradedModule& m, int bound);

/// in_Y with m = 0 applied to the coresolution segment. Requires is_n_cokoszul.
bool is_H0_liftable_resolution(const GradedModule& m, int bound);

}  // namespace nkoszul

#endif  // NKOSZUL_KOSZUL_HPP
