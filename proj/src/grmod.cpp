#include "nkoszul/grmod.hpp"

#include <algorithm>
#include <set>

namespace nkoszul {

namespace {

int mod_floor(int a, int n) { return ((a % n) + n) % n; }

// Linear map whose kernel is s: v -> residual(v) on the non-pivot coordinates.
Matrix annihilator_of(const Subspace& s, const PrimeField& f) {
  const auto keep = s.non_pivots();
  Matrix out(static_cast<Index>(keep.size()), s.ambient_dim());
  for (Index i = 0; i < s.ambient_dim(); ++i) {
    const Vector r = s.residual(Vector::Unit(s.ambient_dim(), i), f);
    for (std::size_t k = 0; k < keep.size(); ++k) out(static_cast<Index>(k), i) = r(keep[k]);
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts, Index cols) {
  Index rows = 0;
  for (const auto& p : parts) rows += p.rows();
  Matrix out(rows, cols);
  Index off = 0;
  for (const auto& p : parts) {
    out.middleRows(off, p.rows()) = p;
    off += p.rows();
  }
  return out;
}

const PathAlgebra& require_dual_base(const GradedAlgebra& alg, const char* where) {
  if (!alg.dual_base()) throw std::invalid_argument(std::string(where) + ": module must live over Λ^!_U or E");
  return *alg.dual_base();
}

}  // namespace

DegreeSet degrees_in(std::vector<int> degrees) {
  std::set<int> s(degrees.begin(), degrees.end());
  return [s](int d) { return s.count(d) > 0; };
}

void TorsionParams::check() const {
  if (n < 2) throw std::invalid_argument("torsion parameters need n >= 2");
  if (r < 0 || 2 * r > n || (n > 2 && 2 * r == n)) {
    throw std::invalid_argument("torsion parameters need 0 <= 2r <= n, strictly when n > 2");
  }
}

bool TorsionParams::in_U(int d) const { return mod_floor(d, n) <= r; }
bool TorsionParams::in_S(int d) const { return in_U(d - m); }
bool TorsionParams::in_quotient_set(int d) const {
  if (2 * r == n && n == 2) return true;
  return mod_floor(d - m, n) == 0;
}

std::vector<int> support(const GradedModule& m) {
  std::vector<int> out;
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (m.dim(d) > 0) out.push_back(d);
  return out;
}

GradedModule socle(const GradedModule& m, GradedMorphism* inclusion) { return submodule(m, socle_parts(m), inclusion); }

GradedModule top(const GradedModule& m, GradedMorphism* projection) { return quotient(m, radical(m), projection); }

bool generated_in_degrees(const GradedModule& m, const DegreeSet& x) {
  DegreewiseSubspaces seeds;
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (x(d)) seeds[d] = Subspace::full(m.dim(d));
  const auto gen = generated_submodule(m, seeds);
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (part(gen, m, d).dim() != m.dim(d)) return false;
  return true;
}

bool top_supported_in(const GradedModule& m, const DegreeSet& x) {
  const auto rad = radical(m);
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (part(rad, m, d).dim() != m.dim(d) && !x(d)) return false;
  return true;
}

bool cogenerated_in_degrees(const GradedModule& m, const DegreeSet& x) {
  const auto soc = socle_parts(m);
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (part(soc, m, d).dim() > 0 && !x(d)) return false;
  return true;
}

ProjectiveCover projective_cover(const GradedModule& m, int hi) {
  const auto& alg = m.algebra_ptr();
  ProjectiveCover out{GradedModule::zero(alg), {}, {}};
  const auto rad = radical(m);
  std::vector<GradedModule> summands;
  std::vector<std::pair<int, int>> tops;  // (degree, basis index in M_d)
  for (int d = m.lo(); d <= m.hi(); ++d) {
    for (Index j : part(rad, m, d).non_pivots()) {
      const int v = m.labels(d)[static_cast<std::size_t>(j)];
      summands.push_back(free_module(alg, v, d, hi));
      tops.emplace_back(d, static_cast<int>(j));
      out.generators.emplace_back(d, v);
    }
  }
  if (summands.empty()) return out;
  out.cover = direct_sum(summands).widened(m.lo(), hi);
  ActionTable table(m);
  for (int e = out.cover.lo(); e <= out.cover.hi(); ++e) {
    Matrix c = Matrix::Zero(m.dim(e), out.cover.dim(e));
    if (m.dim(e) > 0) {
      Index col = 0;
      for (std::size_t s = 0; s < summands.size(); ++s) {
        const auto [d, j] = tops[s];
        const int v = out.generators[s].second;
        if (e < d) continue;
        const int t = e - d;
        const Matrix act = table.element(d, t);
        const int dv = alg->dim(t);
        for (int b = 0; b < dv; ++b) {
          if (alg->sources(t)[static_cast<std::size_t>(b)] != v) continue;
          c.col(col++) = act.col(static_cast<Index>(j) * dv + b);
        }
      }
    }
    out.map.components[e] = c;
  }
  return out;
}

MinimalPresentation minimal_presentation(const GradedModule& m) {
  MinimalPresentation out;
  if (m.is_zero()) return out;
  const int hi = m.hi() + m.algebra().max_generator_degree();
  const auto cover = projective_cover(m, hi);
  out.p0 = cover.generators;
  DegreewiseSubspaces ker;
  for (int d = cover.cover.lo(); d <= cover.cover.hi(); ++d) {
    ker[d] = kernel(cover.map.component(d, m.dim(d), cover.cover.dim(d)), m.field());
  }
  const GradedModule k = submodule(cover.cover, ker);
  const auto rad = radical(k);
  for (int d = k.lo(); d <= k.hi(); ++d) {
    for (Index j : part(rad, k, d).non_pivots()) out.p1.emplace_back(d, k.labels(d)[static_cast<std::size_t>(j)]);
  }
  return out;
}

bool presented_in_degrees(const GradedModule& m, const DegreeSet& x) {
  const auto p = minimal_presentation(m);
  for (const auto& [d, v] : p.p0)
    if (!x(d)) return false;
  for (const auto& [d, v] : p.p1)
    if (!x(d)) return false;
  return true;
}

DegreewiseSubspaces torsion_submodule(const GradedModule& m, const TorsionParams& params) {
  params.check();
  const PrimeField& f = m.field();
  const auto& gens = m.algebra().generators();
  DegreewiseSubspaces out;
  // Constraints only point upward in degree, so one descending pass reaches the fixed point.
  for (int d = m.hi(); d >= m.lo(); --d) {
    if (params.in_S(d) || m.dim(d) == 0) {
      out[d] = Subspace(m.dim(d));
      continue;
    }
    std::vector<Matrix> conds;
    for (int g = 0; g < m.algebra().generator_count(); ++g) {
      const int e = d + gens[static_cast<std::size_t>(g)].degree;
      if (e > m.hi() || m.dim(e) == 0) continue;
      conds.push_back(multiply(annihilator_of(out.at(e), f), m.action(g, d), f));
    }
    out[d] = kernel(vstack(conds, m.dim(d)), f);
  }
  return out;
}

bool is_torsionfree(const GradedModule& m, const TorsionParams& params) {
  params.check();
  const auto& gens = m.algebra().generators();
  for (int d = m.lo(); d <= m.hi(); ++d) {
    if (params.in_S(d) || m.dim(d) == 0) continue;
    std::vector<Matrix> acts;
    for (int g = 0; g < m.algebra().generator_count(); ++g)
      if (gens[static_cast<std::size_t>(g)].degree == 1) acts.push_back(m.action(g, d));
    if (!kernel(vstack(acts, m.dim(d)), m.field()).is_zero()) return false;
  }
  return true;
}

bool in_G(const GradedModule& m, const TorsionParams& params) {
  return is_torsionfree(m, params) && generated_in_degrees(m, [&](int d) { return params.in_quotient_set(d); });
}

// ---------------------------------------------------------------------------

std::shared_ptr<const PathAlgebra> opposite_path_algebra(const PathAlgebra& alg) {
  Presentation op = alg.presentation();
  op.quiver = alg.quiver().opposite();
  op.relations.clear();
  for (const auto& rel : alg.presentation().relations) {
    PathCombination r{rel.degree, {}};
    for (const auto& [p, c] : rel.terms) r.add(opposite(p), c, op.field);
    op.relations.push_back(std::move(r));
  }
  return PathAlgebra::build(op, alg.bounded() ? alg.top() + 1 : alg.top());
}

OppositeAlgebra opposite_algebra(const std::shared_ptr<const GradedAlgebra>& alg) {
  OppositeAlgebra out;
  switch (alg->kind()) {
    case GradedAlgebra::Kind::kPath: {
      const auto& path = static_cast<const PathAlgebra&>(*alg);
      out.algebra = opposite_path_algebra(path);
      break;
    }
    case GradedAlgebra::Kind::kSupport:
      out.algebra = restrict_support(opposite_path_algebra(*alg->dual_base()));
      break;
    case GradedAlgebra::Kind::kYoneda:
      out.algebra = yoneda_regrade(restrict_support(opposite_path_algebra(*alg->dual_base())));
      break;
  }
  const auto& gens = out.algebra->generators();
  for (const auto& g : gens) {
    if (g.degree == 1) {
      out.generator_images.push_back(Vector::Unit(alg->dim(1), g.index));
    } else {
      // Degree-n basis elements of the opposite dual, reversed into the original dual.
      const PathAlgebra& opd = *out.algebra->dual_base();
      const int n = opd.homogeneity();
      out.generator_images.push_back(alg->dual_base()->coordinates(opposite(opd.basis_path(n, g.index))));
    }
  }
  return out;
}

GradedModule graded_dual(const GradedModule& m, const OppositeAlgebra& op) {
  std::vector<std::vector<int>> labels;
  const int lo = -m.hi(), hi = -m.lo();
  for (int d = lo; d <= hi; ++d) labels.push_back(m.labels(-d));
  GradedModule out(op.algebra, lo, std::move(labels));
  ActionTable table(m);
  const auto& gens = op.algebra->generators();
  for (int g = 0; g < op.algebra->generator_count(); ++g) {
    const int k = gens[static_cast<std::size_t>(g)].degree;
    for (int d = lo; d <= hi; ++d) {
      if (out.dim(d + k) == 0 || out.dim(d) == 0) continue;
      const Matrix a = table.by(-d - k, k, op.generator_images[static_cast<std::size_t>(g)]);
      out.set_action(g, d, a.transpose());
    }
  }
  if (m.validated()) out.assume_valid();
  return out;
}

GradedModule graded_dual(const GradedModule& m) { return graded_dual(m, opposite_algebra(m.algebra_ptr())); }

GradedModule restrict_S(const GradedModule& m, const TorsionParams& params, const std::shared_ptr<const GradedAlgebra>& u) {
  params.check();
  if (params.r != 1) throw std::invalid_argument("restrict_S supports r = 1 only");
  if (!u->dual_base() || u->kind() != GradedAlgebra::Kind::kSupport || u->dual_base()->signature() != m.algebra().signature() ||
      u->homogeneity() != params.n) {
    throw std::invalid_argument("restrict_S: support algebra does not match the module's algebra");
  }
  std::vector<std::vector<int>> labels;
  for (int d = m.lo(); d <= m.hi(); ++d) labels.push_back(params.in_S(d) ? m.labels(d) : std::vector<int>{});
  GradedModule out(u, m.lo(), std::move(labels));
  ActionTable table(m);
  for (int g = 0; g < u->generator_count(); ++g) {
    const auto& gen = u->generators()[static_cast<std::size_t>(g)];
    for (int d = m.lo(); d <= m.hi(); ++d) {
      if (out.dim(d) == 0 || out.dim(d + gen.degree) == 0) continue;
      out.set_action(g, d, gen.degree == 1 ? m.action(g, d) : table.by_basis(d, gen.degree, gen.index));
    }
  }
  if (m.validated()) out.assume_valid();
  return out;
}

GradedModule regrade_to_support(const GradedModule& v, const std::shared_ptr<const GradedAlgebra>& u) {
  if (v.algebra().kind() != GradedAlgebra::Kind::kYoneda) throw std::invalid_argument("regrade_to_support expects an E-module");
  const DegreeMap delta{0, u->homogeneity()};
  if (v.hi() < v.lo()) return GradedModule::zero(u);
  const int lo = delta(v.lo()), hi = delta(v.hi());
  std::vector<std::vector<int>> labels;
  for (int d = lo; d <= hi; ++d) labels.push_back(delta.in_image(d) ? v.labels(delta.inverse(d)) : std::vector<int>{});
  GradedModule out(u, lo, std::move(labels));
  for (int g = 0; g < u->generator_count(); ++g) {
    const int deg = u->generators()[static_cast<std::size_t>(g)].degree;
    for (int j = v.lo(); j <= v.hi(); ++j) {
      const int d = delta(j);
      if (out.dim(d) == 0 || out.dim(d + deg) == 0) continue;
      out.set_action(g, d, v.action(g, j));
    }
  }
  if (v.validated()) out.assume_valid();
  return out;
}

GradedModule regrade_to_yoneda(const GradedModule& x, const std::shared_ptr<const GradedAlgebra>& e) {
  const DegreeMap delta{0, e->homogeneity()};
  for (int d : support(x))
    if (!delta.in_image(d)) throw std::invalid_argument("regrade_to_yoneda: support is not inside U");
  const auto supp = support(x);
  if (supp.empty()) return GradedModule::zero(e);
  const int lo = delta.inverse(supp.front()), hi = delta.inverse(supp.back());
  std::vector<std::vector<int>> labels;
  for (int j = lo; j <= hi; ++j) labels.push_back(x.labels(delta(j)));
  GradedModule out(e, lo, std::move(labels));
  for (int g = 0; g < e->generator_count(); ++g) {
    const int deg = e->generators()[static_cast<std::size_t>(g)].degree;
    for (int j = lo; j <= hi; ++j) {
      if (out.dim(j) == 0 || out.dim(j + deg) == 0) continue;
      if (deg == 1 && delta(j) + 1 != delta(j + 1)) continue;
      out.set_action(g, j, x.action(g, delta(j)));
    }
  }
  if (x.validated()) out.assume_valid();
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Pairs (basis vector i of X_d, arrow a) with i at the source of the arrow generator.
std::vector<std::pair<int, int>> degree_one_pairs(const GradedModule& x, int d, int arrows) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < x.dim(d); ++i)
    for (int a = 0; a < arrows; ++a)
      if (x.labels(d)[static_cast<std::size_t>(i)] == x.algebra().generators()[static_cast<std::size_t>(a)].source) out.emplace_back(i, a);
  return out;
}

// Checks Ker(μ_1)·Λ^!_{n-1} ⊆ Ker(μ_n) at degree d, with `act_n(b)` the action
// X_d -> X_{d+span} of basis element b of Λ^!_n.
template <typename ActN>
bool kernel_condition(const GradedModule& x, int d, int d1, int dn, const PathAlgebra& dual, ActN act_n) {
  const PrimeField& f = x.field();
  const int n = dual.homogeneity();
  const int arrows = dual.quiver().arrow_count();
  const auto pairs = degree_one_pairs(x, d, arrows);
  if (pairs.empty()) return true;
  Matrix mu1(x.dim(d1), static_cast<Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    mu1.col(static_cast<Index>(k)) = x.dim(d1) > 0 ? Vector(x.action(pairs[k].second, d).col(pairs[k].first)) : Vector(Vector::Zero(0));
  }
  const Subspace ker = kernel(mu1, f);
  if (ker.is_zero() || x.dim(dn) == 0) return true;
  const int dn_alg = dual.dim(n);
  std::vector<Matrix> act;
  for (int b = 0; b < dn_alg; ++b) act.push_back(act_n(b));
  for (int c = 0; c < dual.dim(n - 1); ++c) {
    const Vector ec = Vector::Unit(dual.dim(n - 1), c);
    Matrix t = Matrix::Zero(x.dim(dn), static_cast<Index>(pairs.size()));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, a] = pairs[k];
      const Vector ac = dual.multiply(1, Vector::Unit(dual.dim(1), a), n - 1, ec);
      for (int b = 0; b < dn_alg; ++b)
        if (ac(b) != 0) t.col(static_cast<Index>(k)) += ac(b) * act[static_cast<std::size_t>(b)].col(i);
    }
    if (!multiply(f.reduce(t), ker.basis().transpose(), f).isZero()) return false;
  }
  return true;
}

}  // namespace

bool in_L(const GradedModule& x, const TorsionParams& params) {
  params.check();
  if (x.algebra().kind() != GradedAlgebra::Kind::kSupport) throw std::invalid_argument("in_L expects a module over Λ^!_U");
  for (int d : support(x))
    if (!params.in_S(d)) throw std::invalid_argument("in_L: support is not inside S");
  if (!generated_in_degrees(x, [&](int d) { return params.in_quotient_set(d); })) return false;
  const PathAlgebra& dual = require_dual_base(x.algebra(), "in_L");
  const int n = params.n;
  ActionTable table(x);
  for (int d = x.lo(); d <= x.hi(); ++d) {
    if (mod_floor(d - params.m, n) != 0 || x.dim(d) == 0) continue;
    if (!kernel_condition(x, d, d + 1, d + n, dual, [&](int b) { return table.by_basis(d, n, b); })) return false;
  }
  return true;
}

bool in_L_E(const GradedModule& v) {
  if (v.algebra().kind() != GradedAlgebra::Kind::kYoneda) throw std::invalid_argument("in_L_E expects a module over E");
  const PathAlgebra& dual = require_dual_base(v.algebra(), "in_L_E");
  const int n = dual.homogeneity();
  if (n == 2) return true;
  if (!generated_in_degrees(v, [](int j) { return mod_floor(j, 2) == 0; })) return false;
  const int arrows = dual.quiver().arrow_count();
  for (int j = v.lo(); j <= v.hi(); ++j) {
    if (mod_floor(j, 2) != 0 || v.dim(j) == 0) continue;
    if (!kernel_condition(v, j, j + 1, j + 2, dual, [&](int b) { return v.action_or_zero(arrows + b, j); })) return false;
  }
  return true;
}

Comultiplication comultiplication(const GradedModule& x, int s, int u) {
  const PathAlgebra& dual = require_dual_base(x.algebra(), "comultiplication");
  const int n = dual.homogeneity();
  if (u < 0 || !in_support_set(u, n)) throw std::invalid_argument("comultiplication: u must be a nonnegative element of U");
  const Quiver base = dual.quiver().opposite();
  Comultiplication out;
  const auto paths = enumerate_paths(base, u);
  for (int y = 0; y < x.dim(-s); ++y)
    for (const auto& p : paths)
      if (x.labels(-s)[static_cast<std::size_t>(y)] == p.source(base)) out.rows.emplace_back(y, p);
  out.map = Matrix::Zero(static_cast<Index>(out.rows.size()), x.dim(-s - u));
  if (out.rows.empty() || x.dim(-s - u) == 0) return out;
  ActionTable table(x);
  std::map<Path, Matrix> acts;
  for (const auto& p : paths) acts.emplace(p, table.by(-s - u, u, dual.coordinates(opposite(p))));
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    const auto& [y, p] = out.rows[r];
    out.map.row(static_cast<Index>(r)) = acts.at(p).row(y);
  }
  return out;
}

bool in_Lo(const GradedModule& x, const TorsionParams& params) {
  params.check();
  if (x.algebra().kind() != GradedAlgebra::Kind::kSupport) throw std::invalid_argument("in_Lo expects a module over Λ^!_U");
  for (int d : support(x))
    if (!params.in_S(-d)) throw std::invalid_argument("in_Lo: support is not inside -S");
  if (!cogenerated_in_degrees(x, [&](int d) { return params.in_quotient_set(-d); })) return false;
  const PathAlgebra& dual = require_dual_base(x.algebra(), "in_Lo");
  const PrimeField& f = x.field();
  const int n = params.n;
  const Quiver base = dual.quiver().opposite();
  const auto short_paths = enumerate_paths(base, n - 1);
  ActionTable table(x);
  for (int top_deg = x.lo(); top_deg <= x.hi(); ++top_deg) {
    // top_deg = -s - n with s = m + kn
    const int s = -top_deg - n;
    if (mod_floor(s - params.m, n) != 0 || x.dim(top_deg) == 0) continue;
    const int below = -s - 1;
    for (const auto& q : short_paths) {
      const int v = q.source(base);
      std::vector<int> ys;
      for (int i = 0; i < x.dim(below); ++i)
        if (x.labels(below)[static_cast<std::size_t>(i)] == v) ys.push_back(i);
      std::vector<Matrix> lhs, rhs;
      for (int a = 0; a < base.arrow_count(); ++a) {
        if (base.arrow(a).target != v) continue;
        // q^o α^o as a path of the dual quiver.
        Path word = opposite(q);
        word.arrows.push_back(a);
        word.vertex = word.source(dual.quiver());
        rhs.push_back(table.by(top_deg, n, dual.coordinates(word)));
        const Matrix act = x.action_or_zero(a, below);
        Matrix restricted(act.rows(), static_cast<Index>(ys.size()));
        for (std::size_t k = 0; k < ys.size(); ++k) restricted.col(static_cast<Index>(k)) = act.col(ys[k]);
        lhs.push_back(restricted);
      }
      if (lhs.empty()) continue;
      const Matrix a = vstack(lhs, static_cast<Index>(ys.size()));
      const Matrix b = vstack(rhs, x.dim(top_deg));
      if (!solve_matrix(a, b, f)) return false;
    }
  }
  return true;
}

}  // namespace nkoszul
