#include "nkoszul/complexes.hpp"

#include <random>
#include <stdexcept>

namespace nkoszul {

namespace {

int mod_floor(int a, int n) { return ((a % n) + n) % n; }

const PathAlgebra& as_path(const GradedAlgebra& alg, const char* where) {
  if (alg.kind() != GradedAlgebra::Kind::kPath) throw std::invalid_argument(std::string(where) + ": expects complexes over a path algebra");
  return static_cast<const PathAlgebra&>(alg);
}

int lambda_top(const PathAlgebra& lambda, bool allow_windowed, const char* where) {
  if (!lambda.bounded() && !allow_windowed) {
    throw WindowError(std::string(where) + ": Λ is not known to be finite dimensional within its window");
  }
  return lambda.top();
}

// Basis pairs (b, y) of Hom_{Λ0}(Λ_i, V): b ∈ Λ_i, y ∈ V with t(b) = label y.
std::vector<std::pair<int, int>> co_pairs(const PathAlgebra& lambda, const std::vector<int>& labels, int i) {
  std::vector<std::pair<int, int>> out;
  if (i > lambda.top()) return out;
  for (int b = 0; b < lambda.dim(i); ++b)
    for (std::size_t y = 0; y < labels.size(); ++y)
      if (lambda.targets(i)[static_cast<std::size_t>(b)] == labels[y]) out.emplace_back(b, static_cast<int>(y));
  return out;
}

std::map<std::pair<int, int>, int> index_of(const std::vector<std::pair<int, int>>& pairs) {
  std::map<std::pair<int, int>, int> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) out.emplace(pairs[k], static_cast<int>(k));
  return out;
}

// Matrix of a ↦ a·q for a path q of Q, Λ_i -> Λ_{i+|q|}.
Matrix right_by_path(const PathAlgebra& lambda, int i, const Path& q) {
  const PrimeField& f = lambda.field();
  Matrix acc = Matrix::Identity(lambda.dim(i), lambda.dim(i));
  int t = i;
  for (int a : q.arrows) {
    if (t + 1 > lambda.top()) return Matrix::Zero(0, lambda.dim(i));
    acc = multiply(lambda.right_mult(t, a), acc, f);
    ++t;
  }
  // Trivial paths act as idempotents.
  if (q.arrows.empty()) {
    for (int b = 0; b < lambda.dim(i); ++b)
      if (lambda.targets(i)[static_cast<std::size_t>(b)] != q.vertex) acc(b, b) = 0;
  }
  return acc;
}

// The map Hom_{Λ0}(Λ, V)[s] -> Hom_{Λ0}(Λ, W)[s + len] given by
// f ↦ (a ↦ Σ_q A_q f(a q)) over paths q of length len.
GradedMorphism coinduced_map(const PathAlgebra& lambda, int top, const std::vector<int>& v, int s, const std::vector<int>& w,
                             const std::vector<std::pair<Path, Matrix>>& terms, int len) {
  const PrimeField& f = lambda.field();
  GradedMorphism out;
  for (int i = len; i <= top; ++i) {
    const int d = -s - i;
    const auto src = co_pairs(lambda, v, i);
    const auto tgt = co_pairs(lambda, w, i - len);
    if (src.empty() || tgt.empty()) continue;
    const auto tgt_index = index_of(tgt);
    Matrix m = Matrix::Zero(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
    for (const auto& [q, a] : terms) {
      const Matrix r = right_by_path(lambda, i - len, q);  // Λ_i x Λ_{i-len}
      if (r.rows() == 0) continue;
      for (std::size_t c = 0; c < src.size(); ++c) {
        const auto [b, y] = src[c];
        for (int aa = 0; aa < lambda.dim(i - len); ++aa) {
          const Scalar coef = r(b, aa);
          if (coef == 0) continue;
          for (Index z = 0; z < a.rows(); ++z) {
            if (a(z, y) == 0) continue;
            auto it = tgt_index.find({aa, static_cast<int>(z)});
            if (it == tgt_index.end()) continue;
            m(it->second, static_cast<Index>(c)) = f.add(m(it->second, static_cast<Index>(c)), f.mul(coef, a(z, y)));
          }
        }
      }
    }
    out.components[d] = m;
  }
  return out;
}

Path arrow_path(const Quiver& q, int a) { return Path{q.arrow(a).source, {a}}; }

template <typename PositionMap>
GradedComplex contract(const GradedComplex& c, PositionMap pos) {
  GradedComplex out(c.algebra_ptr(), 2, 0);
  if (c.is_zero()) return out;
  // pos is strictly increasing; find the output positions landing in [lo, hi].
  int k = 0;
  while (pos(k) > c.lo()) --k;
  while (pos(k) < c.lo()) ++k;
  if (pos(k) > c.hi()) return out;
  int last = k;
  while (pos(last + 1) <= c.hi()) ++last;
  out = GradedComplex(c.algebra_ptr(), 2, k);
  for (int j = k; j <= last; ++j) {
    const GradedModule src = c.term(pos(j));
    const GradedModule tgt = c.term(pos(j + 1));
    GradedMorphism d;
    const int len = pos(j + 1) - pos(j);
    for (int e = src.lo(); e <= src.hi(); ++e) {
      if (src.dim(e) == 0 || tgt.dim(e) == 0) continue;
      d.components[e] = composite(c, pos(j), len, e);
    }
    out.push(src, std::move(d));
  }
  return out;
}

// Action of a path of Q^op on M_k, composed from the arrow actions.
Matrix path_action(const GradedModule& m, const Path& w, int k) {
  const PrimeField& f = m.field();
  Matrix acc = Matrix::Identity(m.dim(k), m.dim(k));
  for (std::size_t i = 0; i < w.arrows.size(); ++i) acc = multiply(m.action(w.arrows[i], k + static_cast<int>(i)), acc, f);
  for (int c = 0; c < m.dim(k); ++c)
    if (w.arrows.empty() && m.labels(k)[static_cast<std::size_t>(c)] != w.vertex) acc.col(c).setZero();
  return acc;
}

// Images M_k·h for h running through a basis of I_n^⊥.
std::map<int, std::vector<Matrix>> orthogonal_images(const GradedModule& m, const PathAlgebra& lambda) {
  const PrimeField& f = m.field();
  const int n = lambda.homogeneity();
  const Subspace orth = compute_orthogonal(lambda);
  const auto words = enumerate_paths(lambda.quiver().opposite(), n);
  std::map<int, std::vector<Matrix>> out;
  for (int k = m.lo(); k + n <= m.hi(); ++k) {
    for (Index h = 0; h < orth.dim(); ++h) {
      Matrix acc = Matrix::Zero(m.dim(k + n), m.dim(k));
      for (std::size_t p = 0; p < words.size(); ++p) {
        const Scalar c = orth.basis()(h, static_cast<Index>(p));
        if (c != 0) acc = f.reduce(Matrix(acc + c * path_action(m, words[p], k)));
      }
      out[k].push_back(acc);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

GradedComplex::GradedComplex(std::shared_ptr<const GradedAlgebra> alg, int period, int lo)
    : alg_(std::move(alg)), period_(period), lo_(lo) {}

bool GradedComplex::is_zero() const {
  for (const auto& t : terms_)
    if (!t.is_zero()) return false;
  return true;
}

GradedModule GradedComplex::term(int k) const {
  if (k < lo_ || k > hi()) return GradedModule::zero(alg_);
  return terms_[static_cast<std::size_t>(k - lo_)];
}

GradedMorphism GradedComplex::diff(int k) const {
  if (k < lo_ || k > hi()) return {};
  return diffs_[static_cast<std::size_t>(k - lo_)];
}

void GradedComplex::push(GradedModule term, GradedMorphism diff_out) {
  terms_.push_back(std::move(term));
  diffs_.push_back(std::move(diff_out));
}

void GradedComplex::set_diff(int k, GradedMorphism d) {
  if (k < lo_ || k > hi()) throw std::out_of_range("set_diff: position outside the complex");
  diffs_[static_cast<std::size_t>(k - lo_)] = std::move(d);
}

Matrix diff_component(const GradedComplex& c, int k, int d) {
  const GradedModule src = c.term(k), tgt = c.term(k + 1);
  return c.diff(k).component(d, tgt.dim(d), src.dim(d));
}

Matrix composite(const GradedComplex& c, int k, int len, int d) {
  const PrimeField& f = c.algebra().field();
  const int dim0 = c.term(k).dim(d);
  Matrix acc = Matrix::Identity(dim0, dim0);
  for (int s = 0; s < len; ++s) acc = multiply(diff_component(c, k + s, d), acc, f);
  return acc;
}

bool is_n_complex(const GradedComplex& c, int n) {
  for (int k = c.lo(); k + n - 1 <= c.hi(); ++k) {
    const GradedModule t = c.term(k);
    for (int d = t.lo(); d <= t.hi(); ++d) {
      if (t.dim(d) == 0) continue;
      if (!composite(c, k, n, d).isZero()) return false;
    }
  }
  return true;
}

bool differentials_are_morphisms(const GradedComplex& c) {
  for (int k = c.lo(); k <= c.hi(); ++k)
    if (!is_morphism(c.diff(k), c.term(k), c.term(k + 1))) return false;
  return true;
}

// ---------------------------------------------------------------------------

GradedModule coinduced(const std::shared_ptr<const PathAlgebra>& lambda, const std::vector<int>& labels, int shift, int top) {
  const int imax = std::min(top, lambda->top());
  std::vector<std::vector<std::pair<int, int>>> pairs;
  std::vector<std::vector<int>> module_labels;
  for (int i = imax; i >= 0; --i) {
    auto p = co_pairs(*lambda, labels, i);
    std::vector<int> l;
    for (const auto& [b, y] : p) l.push_back(lambda->sources(i)[static_cast<std::size_t>(b)]);
    module_labels.push_back(std::move(l));
    pairs.push_back(std::move(p));
  }
  GradedModule out(lambda, -shift - imax, std::move(module_labels));
  // (f·β)(a) = f(βa)
  for (int beta = 0; beta < lambda->quiver().arrow_count(); ++beta) {
    for (int i = 1; i <= imax; ++i) {
      const auto& src = pairs[static_cast<std::size_t>(imax - i)];
      const auto& tgt = pairs[static_cast<std::size_t>(imax - i + 1)];
      const auto tgt_index = index_of(tgt);
      const Matrix l = lambda->left_mult(i - 1, beta);  // Λ_i x Λ_{i-1}
      Matrix m = Matrix::Zero(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
      for (std::size_t c = 0; c < src.size(); ++c) {
        const auto [b, y] = src[c];
        for (int a = 0; a < lambda->dim(i - 1); ++a) {
          if (l(b, a) == 0) continue;
          auto it = tgt_index.find({a, y});
          if (it != tgt_index.end()) m(it->second, static_cast<Index>(c)) = l(b, a);
        }
      }
      out.set_action(beta, -shift - i, m);
    }
  }
  out.assume_valid();
  return out;
}

int coinduced_index(const PathAlgebra& lambda, const std::vector<int>& labels, int i, int b, int y) {
  const auto pairs = co_pairs(lambda, labels, i);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (pairs[k] == std::make_pair(b, y)) return static_cast<int>(k);
  return -1;
}

GradedMorphism cogenerator_map(const GradedModule& m, const PathAlgebra& lambda, int shift) {
  GradedMorphism out;
  const int top_deg = -shift;
  if (top_deg < m.lo() || top_deg > m.hi()) return out;
  const std::vector<int>& labels = m.labels(top_deg);
  ActionTable table(m);
  for (int d = m.lo(); d <= std::min(m.hi(), top_deg); ++d) {
    const int i = top_deg - d;
    if (m.dim(d) == 0 || i > lambda.top()) continue;
    const auto pairs = co_pairs(lambda, labels, i);
    if (pairs.empty()) continue;
    const Matrix& el = table.element(d, i);
    const int dv = lambda.dim(i);
    Matrix c = Matrix::Zero(static_cast<Index>(pairs.size()), m.dim(d));
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const auto [b, y] = pairs[r];
      for (int w = 0; w < m.dim(d); ++w) c(static_cast<Index>(r), w) = el(y, static_cast<Index>(w) * dv + b);
    }
    out.components[d] = c;
  }
  return out;
}

std::optional<std::vector<int>> projective_generated_in(const GradedModule& m, int degree) {
  std::vector<int> mult(static_cast<std::size_t>(m.algebra().vertex_count()), 0);
  if (m.is_zero()) return mult;
  const auto rad = radical(m);
  for (int d = m.lo(); d <= m.hi(); ++d)
    if (part(rad, m, d).dim() != m.dim(d) && d != degree) return std::nullopt;
  const int hi = std::max(m.hi(), degree + (m.algebra().bounded() ? m.algebra().top() : 0));
  const auto cover = projective_cover(m, hi);
  for (const auto& [d, v] : cover.generators) ++mult[static_cast<std::size_t>(v)];
  for (int d = std::min(m.lo(), cover.cover.lo()); d <= std::max(m.hi(), cover.cover.hi()); ++d) {
    const Matrix c = cover.map.component(d, m.dim(d), cover.cover.dim(d));
    if (c.rows() != c.cols() || rank(c, m.field()) != c.rows()) return std::nullopt;
  }
  return mult;
}

std::optional<std::vector<int>> almost_injective_cogenerated_in(const GradedModule& m, const PathAlgebra& lambda, int degree) {
  std::vector<int> mult(static_cast<std::size_t>(lambda.vertex_count()), 0);
  if (m.is_zero()) return mult;
  if (degree < m.lo() || degree > m.hi()) return std::nullopt;
  for (int v : m.labels(degree)) ++mult[static_cast<std::size_t>(v)];
  const auto phi = cogenerator_map(m, lambda, -degree);
  const int imax = lambda.top();
  const int lo = std::min(m.lo(), degree - imax);
  for (int d = lo; d <= m.hi(); ++d) {
    const int i = degree - d;
    const int target_dim = (i < 0 || i > imax) ? 0 : static_cast<int>(co_pairs(lambda, m.labels(degree), i).size());
    const Matrix c = phi.component(d, target_dim, m.dim(d));
    if (c.rows() != c.cols() || rank(c, m.field()) != c.rows()) return std::nullopt;
  }
  return mult;
}

std::optional<LinearityCertificate> certify_linear(const GradedComplex& c, Flavor flavor) {
  LinearityCertificate cert;
  cert.flavor = flavor;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    const GradedModule t = c.term(k);
    const auto mult = flavor == Flavor::kProjective ? projective_generated_in(t, -k)
                                                    : almost_injective_cogenerated_in(t, as_path(c.algebra(), "certify_linear"), -k);
    if (!mult) return std::nullopt;
    cert.multiplicities[k] = *mult;
  }
  return cert;
}

void require_dual_arrows(const GradedModule& m, const PathAlgebra& lambda, const char* where) {
  const Quiver& q = lambda.quiver();
  const auto& gens = m.algebra().generators();
  bool ok = m.algebra().vertex_count() == q.vertex_count() && static_cast<int>(gens.size()) >= q.arrow_count();
  for (int a = 0; ok && a < q.arrow_count(); ++a) {
    const auto& g = gens[static_cast<std::size_t>(a)];
    ok = g.degree == 1 && g.source == q.arrow(a).target && g.target == q.arrow(a).source;
  }
  if (!ok) throw std::invalid_argument(std::string(where) + ": the module's degree-1 generators are not the arrows of the opposite quiver");
}

// ---------------------------------------------------------------------------

bool annihilates_orthogonal(const GradedModule& m, const PathAlgebra& lambda) {
  for (const auto& [k, images] : orthogonal_images(m, lambda))
    for (const auto& a : images)
      if (!a.isZero()) return false;
  return true;
}

GradedModule kill_orthogonal(const GradedModule& m, const PathAlgebra& lambda) {
  const PrimeField& f = m.field();
  const int n = lambda.homogeneity();
  DegreewiseSubspaces seeds;
  for (const auto& [k, images] : orthogonal_images(m, lambda)) {
    Matrix rows(0, m.dim(k + n));
    for (const auto& a : images) {
      Matrix grown(rows.rows() + a.cols(), rows.cols());
      grown << rows, a.transpose();
      rows = grown;
    }
    Matrix prev = part(seeds, m, k + n).basis();
    Matrix both(prev.rows() + rows.rows(), rows.cols());
    both << prev, rows;
    seeds[k + n] = Subspace::from_rows(both, f);
  }
  return quotient(m, generated_submodule(m, seeds));
}

GradedComplex psi(const GradedModule& m, const std::shared_ptr<const PathAlgebra>& lambda, bool allow_windowed) {
  m.require_validated("psi");
  require_dual_arrows(m, *lambda, "psi");
  const int top = lambda_top(*lambda, allow_windowed, "psi");
  const PrimeField& f = lambda->field();
  GradedComplex out(lambda, lambda->homogeneity(), m.lo());
  if (m.is_zero()) return GradedComplex(lambda, lambda->homogeneity(), 0);
  // Basis of P^k in degree -k + i: (x, b) with x ∈ M_k, b ∈ Λ_i, s(b) = label x; labelled t(b).
  auto basis = [&](int k, int i) {
    std::vector<std::pair<int, int>> out_pairs;
    if (k < m.lo() || k > m.hi()) return out_pairs;
    for (int x = 0; x < m.dim(k); ++x)
      for (int b = 0; b < lambda->dim(i); ++b)
        if (lambda->sources(i)[static_cast<std::size_t>(b)] == m.labels(k)[static_cast<std::size_t>(x)]) out_pairs.emplace_back(x, b);
    return out_pairs;
  };
  for (int k = m.lo(); k <= m.hi(); ++k) {
    std::vector<std::vector<int>> labels;
    for (int i = 0; i <= top; ++i) {
      std::vector<int> l;
      for (const auto& [x, b] : basis(k, i)) l.push_back(lambda->targets(i)[static_cast<std::size_t>(b)]);
      labels.push_back(std::move(l));
    }
    GradedModule p(lambda, -k, std::move(labels));
    for (int beta = 0; beta < lambda->quiver().arrow_count(); ++beta) {
      for (int i = 0; i < top; ++i) {
        const auto src = basis(k, i), tgt = basis(k, i + 1);
        const auto tgt_index = index_of(tgt);
        const Matrix r = lambda->right_mult(i, beta);
        Matrix a = Matrix::Zero(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
          const auto [x, b] = src[c];
          for (int b2 = 0; b2 < lambda->dim(i + 1); ++b2) {
            if (r(b2, b) == 0) continue;
            a(tgt_index.at({x, b2}), static_cast<Index>(c)) = r(b2, b);
          }
        }
        p.set_action(beta, -k + i, a);
      }
    }
    p.assume_valid();
    // d(x ⊗ b) = Σ_α x·α^o ⊗ αb, landing in degree -(k+1) + (i+1).
    GradedMorphism d;
    for (int i = 0; i + 1 <= top && k + 1 <= m.hi(); ++i) {
      const auto src = basis(k, i), tgt = basis(k + 1, i + 1);
      if (src.empty() || tgt.empty()) continue;
      const auto tgt_index = index_of(tgt);
      Matrix c = Matrix::Zero(static_cast<Index>(tgt.size()), static_cast<Index>(src.size()));
      for (int alpha = 0; alpha < lambda->quiver().arrow_count(); ++alpha) {
        const Matrix& act = m.action(alpha, k);
        const Matrix l = lambda->left_mult(i, alpha);
        for (std::size_t col = 0; col < src.size(); ++col) {
          const auto [x, b] = src[col];
          for (Index z = 0; z < act.rows(); ++z) {
            if (act(z, x) == 0) continue;
            for (int b2 = 0; b2 < lambda->dim(i + 1); ++b2) {
              if (l(b2, b) == 0) continue;
              auto it = tgt_index.find({static_cast<int>(z), b2});
              if (it == tgt_index.end()) continue;
              c(it->second, static_cast<Index>(col)) = f.add(c(it->second, static_cast<Index>(col)), f.mul(act(z, x), l(b2, b)));
            }
          }
        }
      }
      d.components[-k + i] = c;
    }
    out.push(std::move(p), std::move(d));
  }
  return out;
}

GradedComplex nu(const GradedModule& m, const std::shared_ptr<const PathAlgebra>& lambda, bool allow_windowed, NuVariant variant) {
  m.require_validated("nu");
  require_dual_arrows(m, *lambda, "nu");
  const int top = lambda_top(*lambda, allow_windowed, "nu");
  if (m.is_zero()) return GradedComplex(lambda, lambda->homogeneity(), 0);
  GradedComplex out(lambda, lambda->homogeneity(), m.lo());
  const Quiver& q = lambda->quiver();
  int arrows = q.arrow_count();
  if (variant.drop_last_arrow) --arrows;
  for (int j = m.lo(); j <= m.hi(); ++j) {
    GradedModule term = coinduced(lambda, m.labels(j), j, top);
    GradedMorphism d;
    if (j + 1 <= m.hi()) {
      std::vector<std::pair<Path, Matrix>> terms;
      for (int a = 0; a < arrows; ++a) terms.emplace_back(arrow_path(q, a), m.action(a, j));
      d = coinduced_map(*lambda, top, m.labels(j), j, m.labels(j + 1), terms, 1);
    }
    out.push(std::move(term), std::move(d));
  }
  return out;
}

GradedComplex stalk(const GradedModule& m, int position, int period) {
  GradedComplex out(m.algebra_ptr(), period, position);
  out.push(m, {});
  return out;
}

GradedModule dual_regular(const std::shared_ptr<const PathAlgebra>& lambda, int j) {
  std::vector<int> labels;
  for (int v = 0; v < lambda->vertex_count(); ++v) labels.push_back(v);
  return coinduced(lambda, labels, j, lambda->top());
}

bool in_T_star(const GradedComplex& c, const TorsionParams& params) {
  params.check();
  for (int k = c.lo(); k <= c.hi(); ++k)
    if (params.in_S(k) && !c.term(k).is_zero()) return false;
  return true;
}

bool in_G_star(const GradedComplex& c, const TorsionParams& params) {
  params.check();
  if (params.n == 2 && params.r == 1) return true;
  const auto lambda = std::dynamic_pointer_cast<const PathAlgebra>(c.algebra_ptr());
  if (!lambda) throw std::invalid_argument("in_G_star: expects complexes over a path algebra");
  const PrimeField& f = lambda->field();
  for (int j = c.lo(); j <= c.hi(); ++j) {
    const GradedModule t = c.term(j);
    if (t.is_zero()) continue;
    if (!params.in_S(j)) {
      DegreewiseSubspaces ker;
      for (int d = t.lo(); d <= t.hi(); ++d) ker[d] = kernel(diff_component(c, j, d), f);
      const GradedModule k = submodule(t, ker);
      if (!k.is_zero() && !hom_space(dual_regular(lambda, j), k).empty()) return false;
    }
    if (mod_floor(j - params.m, params.n) != 0) {
      const auto soc = socle_parts(t);
      for (int d = t.lo(); d <= t.hi(); ++d) {
        const Subspace s = part(soc, t, d);
        if (s.is_zero()) continue;
        const Subspace im = image(diff_component(c, j - 1, d), f);
        if (!subspace_contains(im.ambient_dim() == s.ambient_dim() ? im : Subspace(s.ambient_dim()), s, f)) return false;
      }
    }
  }
  return true;
}

GradedComplex contract_H(const GradedComplex& c, int n, int m) {
  const DegreeMap delta{m, n};
  return contract(c, [&](int k) { return delta(k); });
}

GradedComplex contract_G(const GradedComplex& c, int n, int m) {
  const DegreeMap delta{m, n};
  return contract(c, [&](int k) { return -delta(-k); });
}

// ---------------------------------------------------------------------------

namespace {

int degree_n_generator(const GradedAlgebra& u, int n, int b) {
  for (int g = 0; g < u.generator_count(); ++g) {
    const auto& gen = u.generators()[static_cast<std::size_t>(g)];
    if (gen.degree == n && gen.index == b) return g;
  }
  return -1;
}

// Pairs (i, α) with x_i at the source of α^o, and μ_1 on them: X_s^{pairs} -> X_{s+1}.
struct DegreeOneMap {
  std::vector<std::pair<int, int>> pairs;
  Matrix mu;
};

DegreeOneMap degree_one_map(const GradedModule& x, const Quiver& q, int s) {
  DegreeOneMap out;
  const int dim_s = (s < x.lo() || s > x.hi()) ? 0 : x.dim(s);
  for (int i = 0; i < dim_s; ++i)
    for (int a = 0; a < q.arrow_count(); ++a)
      if (x.labels(s)[static_cast<std::size_t>(i)] == q.arrow(a).target) out.pairs.emplace_back(i, a);
  const int dim_next = (s + 1 < x.lo() || s + 1 > x.hi()) ? 0 : x.dim(s + 1);
  out.mu = Matrix::Zero(dim_next, static_cast<Index>(out.pairs.size()));
  for (std::size_t k = 0; k < out.pairs.size(); ++k) {
    if (dim_next == 0) break;
    out.mu.col(static_cast<Index>(k)) = x.action(out.pairs[k].second, s).col(out.pairs[k].first);
  }
  return out;
}

// Keeps only the components (i, α) of a preimage of y with s(α) = label y.
void restrict_section(Matrix& z, const DegreeOneMap& map, const GradedModule& x, const Quiver& q, int s) {
  for (std::size_t k = 0; k < map.pairs.size(); ++k)
    for (Index y = 0; y < z.cols(); ++y)
      if (q.arrow(map.pairs[k].second).source != x.labels(s + 1)[static_cast<std::size_t>(y)]) z(static_cast<Index>(k), y) = 0;
}

std::map<Path, Matrix> xi_from_section(const GradedModule& x, const PathAlgebra& lambda, const PathAlgebra& dual, int s,
                                       const DegreeOneMap& map, const Matrix& z, ActionTable& table) {
  const PrimeField& f = x.field();
  const Quiver& q = lambda.quiver();
  const int n = lambda.homogeneity();
  const int dim_next = static_cast<int>(z.cols());
  const int dim_far = (s + n > x.hi()) ? 0 : x.dim(s + n);
  std::map<Path, Matrix> out;
  for (const auto& p : enumerate_paths(q, n - 1)) {
    Matrix xi = Matrix::Zero(dim_far, dim_next);
    if (dim_far > 0) {
      for (std::size_t k = 0; k < map.pairs.size(); ++k) {
        const auto [i, a] = map.pairs[k];
        const Path alpha{q.arrow(a).source, {a}};
        if (!composable(q, p, alpha)) continue;
        const Vector w = dual.coordinates(opposite(concat(q, p, alpha)));
        const Matrix act = table.by(s, n, w);
        xi = f.reduce(Matrix(xi + act.col(i) * z.row(static_cast<Index>(k))));
      }
    }
    out.emplace(p, xi);
  }
  return out;
}

const PathAlgebra& module_dual_base(const GradedModule& x, const char* where) {
  if (!x.algebra().dual_base()) throw std::invalid_argument(std::string(where) + ": expects a module over Λ^!_U");
  return *x.algebra().dual_base();
}

}  // namespace

std::map<Path, Matrix> xi_maps(const GradedModule& x, const PathAlgebra& lambda, int s, std::uint64_t seed) {
  const PrimeField& f = x.field();
  const PathAlgebra& dual = module_dual_base(x, "xi_maps");
  const Quiver& q = lambda.quiver();
  const auto map = degree_one_map(x, q, s);
  const Index dim_next = map.mu.rows();
  ActionTable table(x);
  if (dim_next == 0) return xi_from_section(x, lambda, dual, s, map, Matrix::Zero(static_cast<Index>(map.pairs.size()), 0), table);
  const auto z = solve_matrix(map.mu, Matrix::Identity(dim_next, dim_next), f);
  if (!z) throw std::invalid_argument("xi_maps: X_{s+1} is not X_s·Λ^!_1");
  Matrix z1 = *z;
  restrict_section(z1, map, x, q, s);
  const auto xi = xi_from_section(x, lambda, dual, s, map, z1, table);

  const Subspace ker = kernel(map.mu, f);
  if (!ker.is_zero()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Scalar> coef(0, f.modulus() - 1);
    Matrix r(ker.dim(), dim_next);
    for (Index i = 0; i < r.rows(); ++i)
      for (Index j = 0; j < r.cols(); ++j) r(i, j) = coef(rng);
    Matrix z2 = f.reduce(Matrix(z1 + multiply(ker.basis().transpose(), r, f)));
    restrict_section(z2, map, x, q, s);
    const auto xi2 = xi_from_section(x, lambda, dual, s, map, z2, table);
    for (const auto& [p, m] : xi)
      if (xi2.at(p) != m) throw std::logic_error("xi_maps: the result depends on the chosen decomposition");
  }
  return xi;
}

GradedComplex equivalence_F(const GradedModule& x, const std::shared_ptr<const PathAlgebra>& lambda, const TorsionParams& params) {
  params.check();
  x.require_validated("equivalence_F");
  require_dual_arrows(x, *lambda, "equivalence_F");
  if (x.algebra().kind() != GradedAlgebra::Kind::kSupport) throw std::invalid_argument("equivalence_F expects a module over Λ^!_U");
  if (params.n != lambda->homogeneity()) throw std::invalid_argument("equivalence_F: n does not match the algebra");
  if (!in_L(x, params)) throw std::invalid_argument("equivalence_F: the module is not in L(S,U)");
  const int top = lambda_top(*lambda, false, "equivalence_F");
  const int n = params.n;
  if (x.is_zero()) return GradedComplex(lambda, 2, 0);
  const DegreeMap delta{params.m, n};
  int kmin = 0;
  while (delta(kmin) > x.lo()) --kmin;
  while (delta(kmin) < x.lo()) ++kmin;
  int kmax = kmin;
  while (delta(kmax + 1) <= x.hi()) ++kmax;
  auto labels_at = [&](int d) { return (d < x.lo() || d > x.hi()) ? std::vector<int>{} : x.labels(d); };
  const Quiver& q = lambda->quiver();
  GradedComplex out(lambda, 2, kmin);
  for (int k = kmin; k <= kmax; ++k) {
    const int s = delta(k);
    GradedModule term = coinduced(lambda, labels_at(s), s, top);
    GradedMorphism d;
    if (k < kmax) {
      if (n == 2 || mod_floor(k, 2) == 0) {
        std::vector<std::pair<Path, Matrix>> terms;
        for (int a = 0; a < q.arrow_count(); ++a) terms.emplace_back(arrow_path(q, a), x.action_or_zero(a, s));
        d = coinduced_map(*lambda, top, labels_at(s), s, labels_at(s + 1), terms, 1);
      } else {
        std::vector<std::pair<Path, Matrix>> terms;
        for (auto& [p, m] : xi_maps(x, *lambda, s - 1)) terms.emplace_back(p, std::move(m));
        d = coinduced_map(*lambda, top, labels_at(s), s, labels_at(s + n - 1), terms, n - 1);
      }
    }
    out.push(std::move(term), std::move(d));
  }
  return out;
}

GradedModule extract_module(const GradedComplex& c, const std::shared_ptr<const GradedAlgebra>& u, const TorsionParams& params) {
  params.check();
  const auto lambda = std::dynamic_pointer_cast<const PathAlgebra>(c.algebra_ptr());
  if (!lambda) throw std::invalid_argument("extract_module: expects a complex over a path algebra");
  if (u->kind() != GradedAlgebra::Kind::kSupport || !u->dual_base()) throw std::invalid_argument("extract_module: expects Λ^!_U");
  const PrimeField& f = lambda->field();
  const int n = params.n;
  const Quiver& q = lambda->quiver();
  const PathAlgebra& dual = *u->dual_base();
  if (c.is_zero()) return GradedModule::zero(u);
  const DegreeMap delta{params.m, n};

  for (int k = c.lo(); k <= c.hi(); ++k) {
    if (!almost_injective_cogenerated_in(c.term(k), *lambda, -delta(k))) {
      throw std::invalid_argument("extract_module: condition (a) fails, term " + std::to_string(k) + " is not almost injective cogenerated in degree " +
                                  std::to_string(-delta(k)));
    }
    if (n > 2 && mod_floor(k, 2) == 1) {
      const GradedModule t = c.term(k);
      const auto soc = socle_parts(t);
      for (int d = t.lo(); d <= t.hi(); ++d) {
        const Subspace s = part(soc, t, d);
        if (!s.is_zero() && !subspace_contains(image(diff_component(c, k - 1, d), f), s, f)) {
          throw std::invalid_argument("extract_module: condition (b) fails, the socle of term " + std::to_string(k) +
                                      " is not in the image of the differential");
        }
      }
    }
  }

  const int lo = delta(c.lo()), hi = delta(c.hi());
  std::vector<std::vector<int>> labels;
  for (int d = lo; d <= hi; ++d) {
    if (!delta.in_image(d)) {
      labels.emplace_back();
      continue;
    }
    const GradedModule t = c.term(delta.inverse(d));
    labels.push_back((-d < t.lo() || -d > t.hi()) ? std::vector<int>{} : t.labels(-d));
  }
  GradedModule x(u, lo, labels);
  auto labels_at = [&](int d) { return (d < lo || d > hi) ? std::vector<int>{} : labels[static_cast<std::size_t>(d - lo)]; };

  // Preimage under the cogenerator map of the basis vector f_{b,y} of Hom(Λ_i, V_k).
  auto lift = [&](int k, int i, int b, int y) -> Vector {
    const GradedModule t = c.term(k);
    const int s = delta(k);
    const auto phi = cogenerator_map(t, *lambda, s);
    const auto& v = labels_at(s);
    const int r = coinduced_index(*lambda, v, i, b, y);
    const int rows = static_cast<int>(co_pairs(*lambda, v, i).size());
    const Matrix m = phi.component(-s - i, rows, t.dim(-s - i));
    const auto w = solve(m, Vector::Unit(rows, r), f);
    if (!w) throw std::logic_error("extract_module: cogenerator map is not invertible");
    return *w;
  };

  // Degree-1 actions from the single-step differentials.
  for (int k = c.lo(); k < c.hi(); ++k) {
    const int s = delta(k);
    if (delta(k + 1) != s + 1) continue;
    const auto& v = labels_at(s);
    const auto& w = labels_at(s + 1);
    if (v.empty() || w.empty()) continue;
    for (int a = 0; a < q.arrow_count(); ++a) {
      Matrix act = Matrix::Zero(static_cast<Index>(w.size()), static_cast<Index>(v.size()));
      const int b = lambda->basis_position(1, lambda->path_index(arrow_path(q, a)));
      for (std::size_t y = 0; y < v.size(); ++y) {
        if (q.arrow(a).target != v[y]) continue;
        act.col(static_cast<Index>(y)) = multiply(diff_component(c, k, -s - 1), lift(k, 1, b, static_cast<int>(y)), f);
      }
      x.set_action(a, s, act);
    }
  }

  if (n > 2) {
    // ξ(y ⊗ p^o) from the composite differentials, then x·(α^o p^o) = ξ(xα^o ⊗ p^o).
    for (int k = c.lo(); k < c.hi(); ++k) {
      if (mod_floor(k, 2) != 1) continue;
      const int s = delta(k) - 1;
      const auto& v = labels_at(s);
      const auto& mid = labels_at(s + 1);
      const auto& far = labels_at(s + n);
      if (v.empty() || far.empty()) continue;
      std::map<Path, Matrix> xi;
      for (const auto& p : enumerate_paths(q, n - 1)) {
        Matrix m = Matrix::Zero(static_cast<Index>(far.size()), static_cast<Index>(mid.size()));
        const int b = lambda->basis_position(n - 1, lambda->path_index(p));
        if (b < 0) throw std::logic_error("extract_module: a path of length n-1 is not a basis element of Λ");
        for (std::size_t y = 0; y < mid.size(); ++y) {
          if (p.target(q) != mid[y]) continue;
          m.col(static_cast<Index>(y)) = multiply(diff_component(c, k, -s - n), lift(k, n - 1, b, static_cast<int>(y)), f);
        }
        xi.emplace(p, m);
      }
      for (int b = 0; b < dual.dim(n); ++b) {
        const int g = degree_n_generator(*u, n, b);
        const Path& word = dual.basis_path(n, b);
        const int a = word.arrows.front();
        const Path rest{dual.quiver().arrow(a).target, std::vector<int>(word.arrows.begin() + 1, word.arrows.end())};
        const Path p = opposite(rest);
        const Matrix first = x.action_or_zero(a, s);
        x.set_action(g, s, multiply(xi.at(p), first, f));
      }
    }
    // Odd degrees: y = Σ x_α α^o gives y·w = Σ (x_α·(α^o w')) w_n.
    for (int k = c.lo(); k < c.hi(); ++k) {
      if (mod_floor(k, 2) != 0) continue;
      const int s = delta(k);
      const auto& mid = labels_at(s + 1);
      const auto& far = labels_at(s + n + 1);
      if (mid.empty() || far.empty()) continue;
      const auto map = degree_one_map(x, dual.quiver().opposite(), s);
      const auto z = solve_matrix(map.mu, Matrix::Identity(map.mu.rows(), map.mu.rows()), f);
      if (!z) throw std::invalid_argument("extract_module: degree " + std::to_string(s + 1) + " is not generated from degree " + std::to_string(s));
      ActionTable table(x);
      for (int b = 0; b < dual.dim(n); ++b) {
        const int g = degree_n_generator(*u, n, b);
        const Path& word = dual.basis_path(n, b);
        const int last = word.arrows.back();
        Matrix act = Matrix::Zero(static_cast<Index>(far.size()), static_cast<Index>(mid.size()));
        for (std::size_t k2 = 0; k2 < map.pairs.size(); ++k2) {
          const auto [i, a] = map.pairs[k2];
          std::vector<int> arrows{a};
          arrows.insert(arrows.end(), word.arrows.begin(), word.arrows.end() - 1);
          const Path head{dual.quiver().arrow(a).source, arrows};
          if (dual.quiver().arrow(a).target != word.source(dual.quiver())) continue;
          const Vector hv = dual.coordinates(head);
          const Matrix step = multiply(x.action_or_zero(last, s + n), table.by(s, n, hv), f);
          act = f.reduce(Matrix(act + step.col(i) * z->row(static_cast<Index>(k2))));
        }
        x.set_action(g, s + 1, act);
      }
    }
  }
  const auto report = x.validate();
  if (!report.ok()) throw std::invalid_argument("extract_module: the extracted data is not a module: " + report.summary());
  return x;
}

MembershipReport in_Y(const GradedComplex& c, const std::shared_ptr<const GradedAlgebra>& u, const TorsionParams& params) {
  MembershipReport out;
  const auto lambda = std::dynamic_pointer_cast<const PathAlgebra>(c.algebra_ptr());
  if (!lambda) {
    out.reason = "not a complex over a path algebra";
    return out;
  }
  GradedModule x;
  try {
    x = extract_module(c, u, params);
  } catch (const std::invalid_argument& e) {
    out.reason = e.what();
    return out;
  }
  if (!in_L(x, params)) {
    out.reason = "the extracted module is not in L(S,U)";
    return out;
  }
  const GradedComplex back = equivalence_F(x, lambda, params);
  if (!iso_complexes(back, c)) {
    out.reason = "the complex is not isomorphic to F of its extracted module";
    return out;
  }
  out.verdict = true;
  out.witness = x;
  return out;
}

// ---------------------------------------------------------------------------

GradedComplex dual_complex(const GradedComplex& c, const OppositeAlgebra& op) {
  if (c.is_zero()) return GradedComplex(op.algebra, c.period(), 0);
  GradedComplex out(op.algebra, c.period(), -c.hi());
  for (int k = -c.hi(); k <= -c.lo(); ++k) {
    const GradedModule src = c.term(-k);
    GradedModule term = src.is_zero() ? GradedModule::zero(op.algebra) : graded_dual(src, op);
    GradedMorphism d;
    const GradedModule prev = c.term(-k - 1);
    for (int e = -src.hi(); e <= -src.lo(); ++e) {
      if (src.dim(-e) == 0 || prev.dim(-e) == 0) continue;
      d.components[e] = diff_component(c, -k - 1, -e).transpose();
    }
    out.push(std::move(term), std::move(d));
  }
  return out;
}

OppositeAlgebra arrow_opposite(const std::shared_ptr<const PathAlgebra>& target) {
  OppositeAlgebra out;
  out.algebra = target;
  for (int a = 0; a < target->quiver().arrow_count(); ++a) out.generator_images.push_back(Vector::Unit(target->dim(1), a));
  return out;
}

OppositeSide opposite_side(const std::shared_ptr<const PathAlgebra>& lambda) {
  OppositeSide out;
  out.lambda_op = opposite_path_algebra(*lambda);
  out.to_op = arrow_opposite(out.lambda_op);
  out.from_op = arrow_opposite(lambda);
  return out;
}

GradedComplex equivalence_F_dual(const GradedModule& x, const std::shared_ptr<const PathAlgebra>& lambda, const TorsionParams& params) {
  if (!in_Lo(x, params)) throw std::invalid_argument("equivalence_F_dual: the module is not in L^o(S,U)");
  const auto side = opposite_side(lambda);
  const GradedComplex f_op = equivalence_F(graded_dual(x), side.lambda_op, params);
  GradedComplex out = dual_complex(f_op, side.from_op);
  std::string reason;
  if (!projective_conditions(out, params, &reason)) throw std::logic_error("equivalence_F_dual: output fails " + reason);
  return out;
}

bool projective_conditions(const GradedComplex& c, const TorsionParams& params, std::string* reason) {
  const DegreeMap delta{params.m, params.n};
  const PrimeField& f = c.algebra().field();
  for (int k = c.lo(); k <= c.hi(); ++k) {
    const GradedModule t = c.term(k);
    if (!projective_generated_in(t, delta(-k))) {
      if (reason) *reason = "condition (a) at position " + std::to_string(k);
      return false;
    }
    if (params.n > 2 && mod_floor(k, 2) == 1) {
      const auto rad = radical(t);
      for (int d = t.lo(); d <= t.hi(); ++d) {
        if (t.dim(d) == 0) continue;
        if (!subspace_contains(part(rad, t, d), kernel(diff_component(c, k, d), f), f)) {
          if (reason) *reason = "condition (b) at position " + std::to_string(k);
          return false;
        }
      }
    }
  }
  return true;
}

MembershipReport in_Yo(const GradedComplex& c, const std::shared_ptr<const GradedAlgebra>& u, const TorsionParams& params) {
  MembershipReport out;
  const auto lambda = std::dynamic_pointer_cast<const PathAlgebra>(c.algebra_ptr());
  if (!lambda) {
    out.reason = "not a complex over a path algebra";
    return out;
  }
  if (!projective_conditions(c, params, &out.reason)) return out;
  const auto side = opposite_side(lambda);
  const auto u_op = opposite_algebra(u);
  auto r = in_Y(dual_complex(c, side.to_op), u_op.algebra, params);
  out.verdict = r.verdict;
  out.reason = r.reason;
  if (r.witness) out.witness = graded_dual(*r.witness, opposite_algebra(u_op.algebra));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::map<int, GradedMorphism>> hom_complexes(const GradedComplex& c, const GradedComplex& cp) {
  std::vector<std::map<int, GradedMorphism>> out;
  if (c.is_zero() || cp.is_zero()) return out;
  const PrimeField& f = c.algebra().field();
  const int lo = std::min(c.lo(), cp.lo()), hi = std::max(c.hi(), cp.hi());
  std::map<int, std::vector<GradedMorphism>> bases;
  std::map<int, Index> offset;
  Index unknowns = 0;
  for (int k = lo; k <= hi; ++k) {
    bases[k] = hom_space(c.term(k), cp.term(k));
    offset[k] = unknowns;
    unknowns += static_cast<Index>(bases[k].size());
  }
  if (unknowns == 0) return out;
  std::vector<Matrix> blocks;
  for (int k = lo - 1; k <= hi; ++k) {
    const GradedModule src = c.term(k), tgt = cp.term(k + 1);
    if (src.is_zero() || tgt.is_zero()) continue;
    for (int d = src.lo(); d <= src.hi(); ++d) {
      const Index rows = tgt.dim(d), cols = src.dim(d);
      if (rows == 0 || cols == 0) continue;
      Matrix eq = Matrix::Zero(rows * cols, unknowns);
      if (k >= lo) {
        const Matrix dp = diff_component(cp, k, d);
        const auto& hk = bases[k];
        for (std::size_t h = 0; h < hk.size(); ++h) {
          const Matrix v = multiply(dp, hk[h].component(d, cp.term(k).dim(d), cols), f);
          eq.col(offset[k] + static_cast<Index>(h)) = v.reshaped();
        }
      }
      if (k + 1 <= hi) {
        const Matrix dc = diff_component(c, k, d);
        const auto& hk1 = bases[k + 1];
        for (std::size_t h = 0; h < hk1.size(); ++h) {
          const Matrix v = multiply(hk1[h].component(d, rows, c.term(k + 1).dim(d)), dc, f);
          eq.col(offset[k + 1] + static_cast<Index>(h)) = f.reduce(Matrix(eq.col(offset[k + 1] + static_cast<Index>(h)) - v.reshaped()));
        }
      }
      blocks.push_back(std::move(eq));
    }
  }
  Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix sys(rows, unknowns);
  Index r = 0;
  for (const auto& b : blocks) {
    sys.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  const Subspace sol = kernel(sys, f);
  for (Index s = 0; s < sol.dim(); ++s) {
    std::map<int, GradedMorphism> chain;
    for (int k = lo; k <= hi; ++k) {
      GradedMorphism m;
      const auto& hk = bases[k];
      for (std::size_t h = 0; h < hk.size(); ++h) {
        const Scalar coef = sol.basis()(s, offset[k] + static_cast<Index>(h));
        if (coef == 0) continue;
        for (const auto& [d, comp] : hk[h].components) {
          auto it = m.components.find(d);
          if (it == m.components.end()) it = m.components.emplace(d, Matrix::Zero(comp.rows(), comp.cols())).first;
          it->second = f.reduce(Matrix(it->second + coef * comp));
        }
      }
      chain.emplace(k, std::move(m));
    }
    out.push_back(std::move(chain));
  }
  return out;
}

bool iso_complexes(const GradedComplex& c, const GradedComplex& cp, int attempts, std::uint64_t seed) {
  if (c.algebra().signature() != cp.algebra().signature()) return false;
  const bool cz = c.is_zero(), cpz = cp.is_zero();
  if (cz || cpz) return cz && cpz;
  const int lo = std::min(c.lo(), cp.lo()), hi = std::max(c.hi(), cp.hi());
  std::vector<std::pair<int, int>> slots;  // (position, degree) with nonzero dimension
  for (int k = lo; k <= hi; ++k) {
    const GradedModule a = c.term(k), b = cp.term(k);
    const int dlo = std::min(a.lo(), b.lo()), dhi = std::max(a.hi(), b.hi());
    for (int d = dlo; d <= dhi; ++d) {
      if (a.dim(d) != b.dim(d)) return false;
      if (a.dim(d) > 0) slots.emplace_back(k, d);
      if (a.dim(d) > 0 && a.labels(d) != b.labels(d)) {
        std::vector<int> la = a.labels(d), lb = b.labels(d);
        std::sort(la.begin(), la.end());
        std::sort(lb.begin(), lb.end());
        if (la != lb) return false;
      }
    }
  }
  const auto basis = hom_complexes(c, cp);
  if (basis.empty()) return false;
  const PrimeField& f = c.algebra().field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Scalar> coef(0, f.modulus() - 1);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Scalar> w(basis.size());
    for (auto& x : w) x = coef(rng);
    bool ok = true;
    for (const auto& [k, d] : slots) {
      const Index dim = c.term(k).dim(d);
      Matrix m = Matrix::Zero(dim, dim);
      for (std::size_t b = 0; b < basis.size(); ++b) m += w[b] * basis[b].at(k).component(d, dim, dim);
      if (rank(f.reduce(m), f) != dim) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace nkoszul
