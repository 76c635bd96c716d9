#include "nkoszul/koszul.hpp"

#include <algorithm>
#include <stdexcept>

namespace nkoszul {

namespace {

int top_generator_degree(const GradedModule& m) {
  const auto rad = radical(m);
  int out = m.lo();
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (part(rad, m, d).dim() < m.dim(d)) out = d;
  return out;
}

const PathAlgebra& path_algebra_of(const GradedModule& m, const char* where) {
  if (m.algebra().kind() != GradedAlgebra::Kind::kPath) throw std::invalid_argument(std::string(where) + ": expects a module over a path algebra");
  return static_cast<const PathAlgebra&>(m.algebra());
}

bool on_pattern(const ResolutionSegment& r, int n, int bound, int* first_failure) {
  const DegreeMap delta{0, n};
  for (int j = 0; j <= bound && j < static_cast<int>(r.generators.size()); ++j) {
    for (const auto& [d, v] : r.generators[static_cast<std::size_t>(j)]) {
      if (d != delta(j)) {
        if (first_failure) *first_failure = j;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

ResolutionSegment minimal_projective_resolution(const GradedModule& m, int bound) {
  m.require_validated("minimal_projective_resolution");
  const GradedAlgebra& alg = m.algebra();
  const PrimeField& f = m.field();
  ResolutionSegment out;
  out.resolved = m;
  out.bound = bound;
  if (!alg.bounded()) {
    out.exact_through = alg.top();
    if (!m.is_zero() && (m.lo() < 0 || m.hi() > alg.top()))
      throw ResolutionWindowError("minimal_projective_resolution: the module leaves the algebra window", out);
  }
  GradedModule k = m.trimmed();
  GradedMorphism incl;  // K -> P^{j-1}
  for (int j = 0; j <= bound; ++j) {
    if (k.is_zero()) {
      if (!alg.bounded() && m.lo() + j > alg.top())
        throw ResolutionWindowError("minimal_projective_resolution: syzygy " + std::to_string(j) + " lies beyond the window", out);
      out.complete = true;
      break;
    }
    const int hi = alg.bounded() ? top_generator_degree(k) + alg.top() : alg.top();
    const auto cover = projective_cover(k, hi);
    const GradedModule& p = cover.cover;
    GradedMorphism d;
    DegreewiseSubspaces ker;
    for (int e = p.lo(); e <= p.hi(); ++e) {
      const Matrix c = cover.map.component(e, k.dim(e), p.dim(e));
      ker[e] = kernel(c, f);
      d.components[e] = j == 0 ? c : multiply(incl.component(e, out.terms.back().dim(e), k.dim(e)), c, f);
    }
    out.terms.push_back(p);
    out.generators.push_back(cover.generators);
    out.maps.push_back(std::move(d));
    if (j == bound) break;
    k = submodule(p, ker, &incl);
    k.assume_valid();
  }
  return out;
}

bool check_resolution(const ResolutionSegment& r) {
  const PrimeField& f = r.resolved.field();
  for (std::size_t j = 0; j < r.terms.size(); ++j) {
    const GradedModule& p = r.terms[j];
    const GradedModule& below = j == 0 ? r.resolved : r.terms[j - 1];
    if (!is_morphism(r.maps[j], p, below)) return false;
    const auto rad = j == 0 ? DegreewiseSubspaces{} : radical(below);
    const int lo = std::min(p.lo(), below.lo()), hi = std::min(std::max(p.hi(), below.hi()), r.exact_through);
    for (int e = lo; e <= hi; ++e) {
      const Matrix c = r.maps[j].component(e, below.dim(e), p.dim(e));
      const Subspace img = image(c, f);
      if (j == 0) {
        if (img.dim() != below.dim(e)) return false;
        continue;
      }
      const Matrix prev = r.maps[j - 1].component(e, (j == 1 ? r.resolved : r.terms[j - 2]).dim(e), below.dim(e));
      if (!multiply(prev, c, f).isZero()) return false;
      if (img.dim() != kernel(prev, f).dim()) return false;
      if (!subspace_contains(part(rad, below, e), img, f)) return false;
    }
    // Past the last term the kernel must vanish when the segment claims completeness.
    if (r.complete && j + 1 == r.terms.size()) {
      for (int e = p.lo(); e <= std::min(p.hi(), r.exact_through); ++e)
        if (kernel(r.maps[j].component(e, below.dim(e), p.dim(e)), f).dim() != 0) return false;
    }
  }
  return true;
}

GradedModule degree_zero_part(const std::shared_ptr<const GradedAlgebra>& alg) {
  std::vector<GradedModule> parts;
  for (int v = 0; v < alg->vertex_count(); ++v) parts.push_back(simple_module(alg, v, 0));
  return direct_sum(parts);
}

KoszulReport n_koszul_report(const std::shared_ptr<const PathAlgebra>& lambda, int bound) {
  KoszulReport out;
  out.bound = bound;
  ResolutionSegment r;
  bool exhausted = false;
  try {
    r = minimal_projective_resolution(degree_zero_part(lambda), bound);
  } catch (const ResolutionWindowError& e) {
    r = e.partial();
    exhausted = true;
  }
  out.exact_through = r.exact_through;
  for (const auto& gens : r.generators) {
    std::vector<int> ds;
    for (const auto& [d, v] : gens) ds.push_back(d);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    out.degrees.push_back(std::move(ds));
  }
  out.verdict = on_pattern(r, lambda->homogeneity(), bound, &out.first_failure) && !exhausted;
  return out;
}

bool is_n_koszul(const std::shared_ptr<const PathAlgebra>& lambda, int bound) { return n_koszul_report(lambda, bound).verdict; }

bool is_n_koszul(const Presentation& pres, int bound, int top) {
  const int t = pres.truncation ? *pres.truncation + 1 : pres.degree_cap ? *pres.degree_cap + 1 : top;
  return is_n_koszul(PathAlgebra::build(pres, t), bound);
}

std::vector<Matrix> ext_dims(const std::shared_ptr<const PathAlgebra>& lambda, int bound) {
  const int verts = lambda->vertex_count();
  std::vector<Matrix> out(static_cast<std::size_t>(bound + 1), Matrix::Zero(verts, verts));
  for (int v = 0; v < verts; ++v) {
    const auto r = minimal_projective_resolution(simple_module(lambda, v, 0), bound);
    for (std::size_t j = 0; j < r.generators.size(); ++j)
      for (const auto& [d, w] : r.generators[j]) out[j](v, w) += 1;
  }
  return out;
}

std::vector<Matrix> dual_dims(const PathAlgebra& dual, int bound) {
  const int verts = dual.vertex_count();
  const DegreeMap delta{0, dual.homogeneity()};
  std::vector<Matrix> out;
  for (int j = 0; j <= bound; ++j) {
    const int t = delta(j);
    Matrix m = Matrix::Zero(verts, verts);
    // A path of Q^op from w to v is a path of Q from v to w.
    for (int b = 0; b < dual.dim(t); ++b) m(dual.targets(t)[static_cast<std::size_t>(b)], dual.sources(t)[static_cast<std::size_t>(b)]) += 1;
    out.push_back(std::move(m));
  }
  return out;
}

GradedComplex minimal_coresolution(const GradedModule& m, int bound) {
  const auto lambda = std::dynamic_pointer_cast<const PathAlgebra>(m.algebra_ptr());
  if (!lambda) throw std::invalid_argument("minimal_coresolution: expects a module over a path algebra");
  if (!lambda->bounded()) throw WindowError("minimal_coresolution: Λ is not known to be finite dimensional");
  const auto side = opposite_side(lambda);
  GradedModule dm = graded_dual(m, side.to_op);
  dm.assume_valid();
  const auto r = minimal_projective_resolution(dm, bound);
  const int len = static_cast<int>(r.terms.size());
  if (len == 0) return GradedComplex(lambda, 2, 0);
  GradedComplex p(side.lambda_op, 2, -(len - 1));
  for (int j = len - 1; j >= 0; --j) p.push(r.terms[static_cast<std::size_t>(j)], j >= 1 ? r.maps[static_cast<std::size_t>(j)] : GradedMorphism{});
  return dual_complex(p, side.from_op);
}

bool is_n_cokoszul(const GradedModule& m, int bound) {
  path_algebra_of(m, "is_n_cokoszul");
  if (m.is_zero()) return true;
  const auto lambda = std::static_pointer_cast<const PathAlgebra>(m.algebra_ptr());
  if (!lambda->bounded()) throw WindowError("is_n_cokoszul: Λ is not known to be finite dimensional");
  const auto side = opposite_side(lambda);
  GradedModule dm = graded_dual(m, side.to_op);
  dm.assume_valid();
  return on_pattern(minimal_projective_resolution(dm, bound), lambda->homogeneity(), bound, nullptr);
}

bool is_H0_liftable_resolution(const GradedModule& m, int bound) {
  if (m.is_zero()) return true;
  if (!is_n_cokoszul(m, bound)) throw std::invalid_argument("is_H0_liftable_resolution: the module is not n-coKoszul");
  const auto lambda = std::static_pointer_cast<const PathAlgebra>(m.algebra_ptr());
  const int n = lambda->homogeneity();
  const GradedComplex c = minimal_coresolution(m, bound);
  const DegreeMap delta{0, n};
  const auto u = restrict_support(build_dual(*lambda, delta(c.hi() + 1) + n + 1));
  return in_Y(c, u, TorsionParams{n, 1, 0}).verdict;
}

}  // namespace nkoszul
