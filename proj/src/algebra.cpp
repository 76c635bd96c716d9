#include "nkoszul/algebra.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace nkoszul {

namespace {

const std::vector<int>& empty_labels() {
  static const std::vector<int> empty;
  return empty;
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

int GradedAlgebra::dim(int t) const { return static_cast<int>(sources(t).size()); }

const std::vector<int>& GradedAlgebra::sources(int t) const {
  if (t < 0) return empty_labels();
  if (t > top_) {
    if (bounded_) return empty_labels();
    throw WindowError("graded component " + std::to_string(t) + " lies past the algebra window (top " +
                      std::to_string(top_) + ")");
  }
  return sources_[static_cast<std::size_t>(t)];
}

const std::vector<int>& GradedAlgebra::targets(int t) const {
  if (t < 0) return empty_labels();
  if (t > top_) {
    if (bounded_) return empty_labels();
    throw WindowError("graded component " + std::to_string(t) + " lies past the algebra window (top " +
                      std::to_string(top_) + ")");
  }
  return targets_[static_cast<std::size_t>(t)];
}

int GradedAlgebra::max_generator_degree() const {
  int d = 0;
  for (const auto& g : generators_) d = std::max(d, g.degree);
  return d;
}

int GradedAlgebra::find_generator(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Matrix GradedAlgebra::right_mult(int t, int g) const {
  const int deg = generators_.at(static_cast<std::size_t>(g)).degree;
  const int rows = dim(t + deg), cols = dim(t);
  if (rows == 0 || cols == 0) return Matrix::Zero(rows, cols);
  return right_[static_cast<std::size_t>(t)][static_cast<std::size_t>(g)];
}

Vector product(const GradedAlgebra& alg, int t, const Vector& a, int s, const Vector& b) {
  const PrimeField& f = alg.field();
  Vector out = Vector::Zero(alg.dim(t + s));
  if (out.size() == 0) return out;
  if (s == 0) {
    for (Index i = 0; i < a.size(); ++i) out(i) = f.mul(a(i), b(alg.targets(t)[static_cast<std::size_t>(i)]));
    return out;
  }
  const auto& dec = alg.decomposition(s);
  for (Index j = 0; j < b.size(); ++j) {
    if (b(j) == 0) continue;
    for (const auto& term : dec[static_cast<std::size_t>(j)]) {
      const int deg = alg.generators()[static_cast<std::size_t>(term.generator)].degree;
      const Vector prefix = product(alg, t, a, s - deg, Vector::Unit(alg.dim(s - deg), term.prefix));
      const Vector step = f.reduce(Vector(alg.right_mult(t + s - deg, term.generator) * prefix));
      out = f.reduce(Vector(out + f.mul(b(j), term.coef) * step));
    }
  }
  return out;
}

std::vector<std::pair<int, int>> GradedAlgebra::domain_layout(int t) const {
  std::vector<std::pair<int, int>> layout;
  int offset = 0;
  for (int g = 0; g < generator_count(); ++g) {
    const int deg = generators_[static_cast<std::size_t>(g)].degree;
    if (deg > t) continue;
    layout.emplace_back(g, offset);
    offset += dim(t - deg);
  }
  return layout;
}

Matrix GradedAlgebra::phi(int t) const {
  const auto layout = domain_layout(t);
  int total = 0;
  for (auto [g, off] : layout) total = off + dim(t - generators_[static_cast<std::size_t>(g)].degree);
  Matrix out = Matrix::Zero(dim(t), total);
  for (auto [g, off] : layout) {
    const int s = t - generators_[static_cast<std::size_t>(g)].degree;
    const int w = dim(s);
    if (w > 0) out.middleCols(off, w) = right_mult(s, g);
  }
  return out;
}

Decomposition GradedAlgebra::compute_decomposition(int t) const {
  const Matrix p = phi(t);
  const auto section = solve_matrix(p, Matrix::Identity(p.rows(), p.rows()), field_);
  if (!section) throw std::logic_error("algebra is not generated by its declared generators in degree " + std::to_string(t));
  const auto layout = domain_layout(t);
  std::vector<std::pair<int, int>> owner(static_cast<std::size_t>(p.cols()));
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const auto [g, off] = layout[k];
    const int w = dim(t - generators_[static_cast<std::size_t>(g)].degree);
    for (int y = 0; y < w; ++y) owner[static_cast<std::size_t>(off + y)] = {g, y};
  }
  Decomposition out(static_cast<std::size_t>(p.rows()));
  for (Index b = 0; b < p.rows(); ++b) {
    for (Index c = 0; c < p.cols(); ++c) {
      const Scalar v = (*section)(c, b);
      if (v != 0) out[static_cast<std::size_t>(b)].push_back({owner[static_cast<std::size_t>(c)].first, owner[static_cast<std::size_t>(c)].second, v});
    }
  }
  return out;
}

const Decomposition& GradedAlgebra::decomposition(int t) const {
  if (t < 1) throw std::invalid_argument("decomposition is defined for positive degrees");
  dim(t);  // window check
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = decomposition_cache_.find(t);
  if (it == decomposition_cache_.end()) it = decomposition_cache_.emplace(t, compute_decomposition(t)).first;
  return it->second;
}

const Subspace& GradedAlgebra::syzygies(int t) const {
  dim(t);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = syzygy_cache_.find(t);
  if (it == syzygy_cache_.end()) {
    Subspace s;
    if (kind_ == Kind::kPath) {
      int total = 0;
      for (const auto& g : generators_) total += g.degree <= t ? dim(t - g.degree) : 0;
      s = Subspace(total);
    } else {
      s = kernel(phi(t), field_);
    }
    it = syzygy_cache_.emplace(t, std::move(s)).first;
  }
  return it->second;
}

std::string GradedAlgebra::signature() const {
  std::string s = "v" + std::to_string(vertex_count_) + "n" + std::to_string(n_);
  for (const auto& g : generators_) {
    s += ";" + g.name + ":" + std::to_string(g.degree) + ":" + std::to_string(g.source) + ">" + std::to_string(g.target);
  }
  return s;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const PathAlgebra> PathAlgebra::build(const Presentation& pres, int top) {
  const Quiver& q = pres.quiver;
  const PrimeField& f = pres.field;
  if (pres.n < 2) throw std::invalid_argument("homogeneity degree n must be at least 2");
  if (top < 0) throw std::invalid_argument("negative build window");

  // Relations split into their e_i (-) e_j blocks; each block lies in the ideal.
  std::map<int, std::vector<PathCombination>> seeds;
  for (const auto& rel : pres.relations) {
    if (rel.degree < 2) throw std::invalid_argument("relations must have degree at least 2");
    std::map<std::pair<int, int>, PathCombination> blocks;
    for (const auto& [p, c] : rel.terms) {
      if (p.length() != rel.degree) throw std::invalid_argument("relation is not homogeneous");
      for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (p.arrows[i] < 0 || p.arrows[i] >= q.arrow_count()) throw std::invalid_argument("relation uses an unknown arrow");
        if (i > 0 && q.arrow(p.arrows[i - 1]).target != q.arrow(p.arrows[i]).source) {
          throw std::invalid_argument("relation contains a path that does not compose");
        }
      }
      auto& b = blocks[{p.source(q), p.target(q)}];
      b.degree = rel.degree;
      b.add(p, c, f);
    }
    for (auto& [key, comb] : blocks) {
      if (!comb.is_zero()) seeds[rel.degree].push_back(std::move(comb));
    }
  }

  int last = pres.degree_cap ? std::max(0, *pres.degree_cap + 1) : top;
  if (pres.truncation) last = std::min(last, std::max(0, *pres.truncation + 1));
  last = std::max(last, pres.n);

  auto alg = std::shared_ptr<PathAlgebra>(new PathAlgebra(pres));
  std::vector<std::vector<std::vector<int>>> right_ext, left_ext;  // [k][path][arrow] -> index in Q_{k+1}

  for (int k = 0; k <= last; ++k) {
    alg->paths_.push_back(enumerate_paths(q, k));
    std::map<std::vector<int>, int> lookup;
    const auto& pk = alg->paths_.back();
    for (std::size_t i = 0; i < pk.size(); ++i) lookup.emplace(pk[i].arrows, static_cast<int>(i));
    alg->path_lookup_.push_back(std::move(lookup));
  }
  for (int k = 0; k < last; ++k) {
    const auto& pk = alg->paths_[static_cast<std::size_t>(k)];
    const auto& next = alg->path_lookup_[static_cast<std::size_t>(k + 1)];
    std::vector<std::vector<int>> r(pk.size(), std::vector<int>(static_cast<std::size_t>(q.arrow_count()), -1));
    auto l = r;
    for (std::size_t i = 0; i < pk.size(); ++i) {
      for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& arr = q.arrow(a);
        if (pk[i].target(q) == arr.source) {
          auto w = pk[i].arrows;
          w.push_back(a);
          r[i][static_cast<std::size_t>(a)] = next.at(w);
        }
        if (arr.target == pk[i].source(q)) {
          std::vector<int> w{a};
          w.insert(w.end(), pk[i].arrows.begin(), pk[i].arrows.end());
          l[i][static_cast<std::size_t>(a)] = next.at(w);
        }
      }
    }
    right_ext.push_back(std::move(r));
    left_ext.push_back(std::move(l));
  }

  for (int k = 0; k <= last; ++k) {
    const Index width = static_cast<Index>(alg->paths_[static_cast<std::size_t>(k)].size());
    const bool truncated = pres.truncation && k > *pres.truncation;
    const bool prev_full = k > 0 && alg->ideals_.back().dim() == alg->ideals_.back().ambient_dim() &&
                           alg->ideals_.back().ambient_dim() > 0;
    if (truncated || prev_full) {
      alg->ideals_.push_back(Subspace::full(width));
      continue;
    }
    std::vector<Vector> rows;
    if (k > 0) {
      const Subspace& prev = alg->ideals_.back();
      for (Index r = 0; r < prev.dim(); ++r) {
        for (int a = 0; a < q.arrow_count(); ++a) {
          Vector right = Vector::Zero(width), left = Vector::Zero(width);
          bool any_r = false, any_l = false;
          for (Index c = 0; c < prev.ambient_dim(); ++c) {
            const Scalar v = prev.basis()(r, c);
            if (v == 0) continue;
            const int ri = right_ext[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
            const int li = left_ext[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
            if (ri >= 0) { right(ri) = v; any_r = true; }
            if (li >= 0) { left(li) = v; any_l = true; }
          }
          if (any_r) rows.push_back(std::move(right));
          if (any_l) rows.push_back(std::move(left));
        }
      }
    }
    for (const auto& rel : seeds[k]) {
      Vector v = Vector::Zero(width);
      for (const auto& [p, c] : rel.terms) v(alg->path_lookup_[static_cast<std::size_t>(k)].at(p.arrows)) = c;
      rows.push_back(std::move(v));
    }
    Matrix stacked(static_cast<Index>(rows.size()), width);
    for (std::size_t i = 0; i < rows.size(); ++i) stacked.row(static_cast<Index>(i)) = rows[i].transpose();
    alg->ideals_.push_back(Subspace::from_rows(stacked, f));
  }

  for (int k = 0; k <= last; ++k) {
    const auto& ideal = alg->ideals_[static_cast<std::size_t>(k)];
    std::vector<int> pos(static_cast<std::size_t>(ideal.ambient_dim()), -1);
    std::vector<int> basis;
    for (Index j : ideal.non_pivots()) {
      pos[static_cast<std::size_t>(j)] = static_cast<int>(basis.size());
      basis.push_back(static_cast<int>(j));
    }
    alg->basis_pos_.push_back(std::move(pos));
    alg->basis_paths_.push_back(std::move(basis));
  }

  if (pres.degree_cap && *pres.degree_cap + 1 <= last && !alg->basis_paths_[static_cast<std::size_t>(*pres.degree_cap + 1)].empty()) {
    throw std::invalid_argument("declared degree cap " + std::to_string(*pres.degree_cap) +
                                " is violated: the quotient is nonzero in degree " + std::to_string(*pres.degree_cap + 1));
  }

  alg->top_ = last;
  alg->bounded_ = false;
  for (int k = 1; k <= last; ++k) {
    if (alg->basis_paths_[static_cast<std::size_t>(k)].empty()) {
      alg->top_ = k - 1;
      alg->bounded_ = true;
      break;
    }
  }

  for (int k = 0; k <= alg->top_; ++k) {
    std::vector<int> s, t;
    for (int idx : alg->basis_paths_[static_cast<std::size_t>(k)]) {
      const Path& p = alg->paths_[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
      s.push_back(p.source(q));
      t.push_back(p.target(q));
    }
    alg->sources_.push_back(std::move(s));
    alg->targets_.push_back(std::move(t));
  }
  for (int a = 0; a < q.arrow_count(); ++a) {
    alg->generators_.push_back({q.arrow(a).name, 1, a, q.arrow(a).source, q.arrow(a).target});
  }
  for (int t = 0; t <= alg->top_; ++t) {
    std::vector<Matrix> per_gen;
    if (t + 1 <= alg->top_) {
      const int rows = alg->dim(t + 1), cols = alg->dim(t);
      for (int a = 0; a < q.arrow_count(); ++a) {
        Matrix m = Matrix::Zero(rows, cols);
        for (int b = 0; b < cols; ++b) {
          const int idx = right_ext[static_cast<std::size_t>(t)][static_cast<std::size_t>(alg->basis_path_index(t, b))][static_cast<std::size_t>(a)];
          if (idx >= 0) m.col(b) = alg->coordinates(t + 1, idx);
        }
        per_gen.push_back(std::move(m));
      }
    }
    alg->right_.push_back(std::move(per_gen));
  }
  return alg;
}

const std::vector<Path>& PathAlgebra::paths(int k) const {
  if (k < 0 || k >= static_cast<int>(paths_.size())) {
    throw WindowError("paths of length " + std::to_string(k) + " were not built");
  }
  return paths_[static_cast<std::size_t>(k)];
}

int PathAlgebra::path_index(const Path& p) const {
  const int k = p.length();
  if (k >= static_cast<int>(paths_.size())) return -1;
  if (k == 0) return p.vertex;
  const auto& lookup = path_lookup_[static_cast<std::size_t>(k)];
  auto it = lookup.find(p.arrows);
  return it == lookup.end() ? -1 : it->second;
}

const Subspace& PathAlgebra::ideal(int k) const {
  if (k < 0 || k >= static_cast<int>(ideals_.size())) {
    throw WindowError("ideal slice " + std::to_string(k) + " was not built");
  }
  return ideals_[static_cast<std::size_t>(k)];
}

Vector PathAlgebra::coordinates(int k, int path_idx) const {
  const int d = dim(k);
  Vector v = Vector::Zero(d);
  if (d == 0) return v;
  const int pos = basis_position(k, path_idx);
  if (pos >= 0) {
    v(pos) = 1;
    return v;
  }
  const Subspace& id = ideal(k);
  const auto& piv = id.pivots();
  const auto it = std::lower_bound(piv.begin(), piv.end(), static_cast<Index>(path_idx));
  const Index row = static_cast<Index>(it - piv.begin());
  const auto& basis = basis_paths_[static_cast<std::size_t>(k)];
  for (int b = 0; b < d; ++b) v(b) = field_.neg(id.basis()(row, basis[static_cast<std::size_t>(b)]));
  return v;
}

Vector PathAlgebra::coordinates(const Path& p) const {
  if (p.length() > top_ && bounded_) return Vector::Zero(0);
  const int idx = path_index(p);
  if (idx < 0) throw WindowError("path length " + std::to_string(p.length()) + " is past the built window");
  return coordinates(p.length(), idx);
}

Vector PathAlgebra::coordinates(const PathCombination& c) const {
  Vector v = Vector::Zero(dim(c.degree));
  for (const auto& [p, coef] : c.terms) v = field_.reduce(Vector(v + coef * coordinates(p)));
  return v;
}

Matrix PathAlgebra::left_mult(int t, int arrow) const {
  const int rows = dim(t + 1), cols = dim(t);
  Matrix m = Matrix::Zero(rows, cols);
  if (rows == 0 || cols == 0) return m;
  const auto& lookup = path_lookup_[static_cast<std::size_t>(t + 1)];
  const Arrow& a = quiver().arrow(arrow);
  for (int b = 0; b < cols; ++b) {
    const Path& p = basis_path(t, b);
    if (p.source(quiver()) != a.target) continue;
    std::vector<int> w{arrow};
    w.insert(w.end(), p.arrows.begin(), p.arrows.end());
    m.col(b) = coordinates(t + 1, lookup.at(w));
  }
  return m;
}

Vector PathAlgebra::multiply(int k, const Vector& u, int l, const Vector& v) const {
  Vector out = Vector::Zero(dim(k + l));
  if (out.size() == 0) return out;
  for (Index i = 0; i < u.size(); ++i) {
    if (u(i) == 0) continue;
    const Path& p = basis_path(k, static_cast<int>(i));
    for (Index j = 0; j < v.size(); ++j) {
      if (v(j) == 0) continue;
      const Path& r = basis_path(l, static_cast<int>(j));
      if (!composable(quiver(), p, r)) continue;
      const Path pr = concat(quiver(), p, r);
      out = field_.reduce(Vector(out + field_.mul(u(i), v(j)) * coordinates(k + l, path_index(pr))));
    }
  }
  return out;
}

Decomposition PathAlgebra::compute_decomposition(int t) const {
  Decomposition out(static_cast<std::size_t>(dim(t)));
  for (int b = 0; b < dim(t); ++b) {
    const Path& p = basis_path(t, b);
    Path prefix{p.source(quiver()), std::vector<int>(p.arrows.begin(), p.arrows.end() - 1)};
    const int pos = basis_position(t - 1, path_index(prefix));
    if (pos < 0) throw std::logic_error("normal words are not prefix closed");
    out[static_cast<std::size_t>(b)].push_back({p.arrows.back(), pos, 1});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Index in the lambda path list of each opposite-quiver path of length n.
std::vector<int> opposite_index(const PathAlgebra& lambda, const std::vector<Path>& op_paths) {
  std::vector<int> out;
  out.reserve(op_paths.size());
  for (const auto& p : op_paths) out.push_back(lambda.path_index(opposite(p)));
  return out;
}

}  // namespace

Subspace compute_orthogonal(const PathAlgebra& lambda) {
  const int n = lambda.homogeneity();
  const Quiver& q = lambda.quiver();
  const auto& pn = lambda.paths(n);
  const auto op_paths = enumerate_paths(q.opposite(), n);
  const auto back = opposite_index(lambda, op_paths);
  const Subspace& id = lambda.ideal(n);
  const PrimeField& f = lambda.field();

  // Each ideal vector contributes one functional per endpoint block.
  std::vector<Vector> rows;
  for (Index r = 0; r < id.dim(); ++r) {
    std::map<std::pair<int, int>, Vector> blocks;
    for (std::size_t j = 0; j < op_paths.size(); ++j) {
      const int i = back[j];
      const Scalar v = id.basis()(r, i);
      if (v == 0) continue;
      const Path& p = pn[static_cast<std::size_t>(i)];
      auto [it, fresh] = blocks.try_emplace({p.source(q), p.target(q)}, Vector::Zero(static_cast<Index>(op_paths.size())));
      it->second(static_cast<Index>(j)) = v;
    }
    for (auto& [key, vec] : blocks) rows.push_back(std::move(vec));
  }
  Matrix gram(static_cast<Index>(rows.size()), static_cast<Index>(op_paths.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) gram.row(static_cast<Index>(i)) = rows[i].transpose();
  return kernel(gram, f);
}

DualData compute_orthogonal_via_ordering(const PathAlgebra& lambda) {
  const int n = lambda.homogeneity();
  const Quiver& q = lambda.quiver();
  const Quiver qop = q.opposite();
  const PrimeField& f = lambda.field();
  const auto& pn = lambda.paths(n);
  const int dn = lambda.dim(n);

  DualData out;
  Matrix images(dn, 0);
  Subspace span(dn);
  for (std::size_t i = 0; i < pn.size(); ++i) {
    const Vector img = lambda.coordinates(n, static_cast<int>(i));
    if (img.isZero()) {
      out.t_block.push_back(static_cast<int>(i));
    } else if (!span.contains(img, f)) {
      out.r_block.push_back(static_cast<int>(i));
      images.conservativeResize(dn, images.cols() + 1);
      images.col(images.cols() - 1) = img;
      span = Subspace::from_columns(images, f);
    } else {
      out.s_block.push_back(static_cast<int>(i));
    }
  }
  out.lambda = Matrix::Zero(static_cast<Index>(out.r_block.size()), static_cast<Index>(out.s_block.size()));
  for (std::size_t j = 0; j < out.s_block.size(); ++j) {
    const auto sol = solve(images, lambda.coordinates(n, out.s_block[j]), f);
    if (!sol) throw std::logic_error("s-block path is not spanned by the r block");
    out.lambda.col(static_cast<Index>(j)) = *sol;
  }

  const auto op_paths = enumerate_paths(qop, n);
  std::map<Path, int> op_lookup;
  for (std::size_t j = 0; j < op_paths.size(); ++j) op_lookup.emplace(op_paths[j], static_cast<int>(j));
  Matrix h = Matrix::Zero(static_cast<Index>(out.r_block.size()), static_cast<Index>(op_paths.size()));
  for (std::size_t i = 0; i < out.r_block.size(); ++i) {
    PathCombination c{n, {}};
    const Path pi = opposite(pn[static_cast<std::size_t>(out.r_block[i])]);
    c.add(pi, 1, f);
    h(static_cast<Index>(i), op_lookup.at(pi)) = 1;
    for (std::size_t j = 0; j < out.s_block.size(); ++j) {
      const Scalar l = out.lambda(static_cast<Index>(i), static_cast<Index>(j));
      if (l == 0) continue;
      const Path pj = opposite(pn[static_cast<std::size_t>(out.s_block[j])]);
      c.add(pj, l, f);
      h(static_cast<Index>(i), op_lookup.at(pj)) = l;
    }
    out.h_basis.push_back(std::move(c));
  }
  out.orthogonal = Subspace::from_rows(h, f);
  return out;
}

std::shared_ptr<const PathAlgebra> build_dual(const PathAlgebra& lambda, int top) {
  const int n = lambda.homogeneity();
  const Subspace orth = compute_orthogonal(lambda);
  Presentation dual;
  dual.quiver = lambda.quiver().opposite();
  dual.n = n;
  dual.field = lambda.field();
  const auto op_paths = enumerate_paths(dual.quiver, n);
  for (Index r = 0; r < orth.dim(); ++r) {
    PathCombination c{n, {}};
    for (Index j = 0; j < orth.ambient_dim(); ++j) {
      if (orth.basis()(r, j) != 0) c.add(op_paths[static_cast<std::size_t>(j)], orth.basis()(r, j), dual.field);
    }
    dual.relations.push_back(std::move(c));
  }
  return PathAlgebra::build(dual, top);
}

// ---------------------------------------------------------------------------

int DegreeMap::operator()(int j) const {
  const int k = floor_div(j, 2);
  return m + k * n + (j - 2 * k);
}

bool DegreeMap::in_image(int d) const {
  const int e = d - m;
  const int r = e - floor_div(e, n) * n;
  return r == 0 || r == 1;
}

int DegreeMap::inverse(int d) const {
  const int e = d - m;
  const int k = floor_div(e, n);
  const int r = e - k * n;
  if (r != 0 && r != 1) throw std::domain_error("degree " + std::to_string(d) + " is not in the image of the degree map");
  return 2 * k + r;
}

bool in_support_set(int t, int n) {
  const int r = ((t % n) + n) % n;
  return r == 0 || r == 1;
}

namespace {

// Algebras assembled from tables of another algebra.
class TableAlgebra final : public GradedAlgebra {
 public:
  TableAlgebra(Kind kind, const GradedAlgebra& base, std::shared_ptr<const PathAlgebra> dual)
      : GradedAlgebra(kind, base.field(), base.vertex_count(), base.homogeneity()) {
    dual_base_ = std::move(dual);
  }

  static std::shared_ptr<const GradedAlgebra> support(const std::shared_ptr<const PathAlgebra>& dual) {
    const int n = dual->homogeneity();
    auto alg = std::make_shared<TableAlgebra>(Kind::kSupport, *dual, dual);
    alg->top_ = dual->top();
    alg->bounded_ = dual->bounded();
    for (int t = 0; t <= alg->top_; ++t) {
      const bool keep = in_support_set(t, n);
      alg->sources_.push_back(keep ? dual->sources(t) : std::vector<int>{});
      alg->targets_.push_back(keep ? dual->targets(t) : std::vector<int>{});
    }
    const Quiver& qop = dual->quiver();
    for (int a = 0; a < qop.arrow_count(); ++a) {
      alg->generators_.push_back({qop.arrow(a).name, 1, a, qop.arrow(a).source, qop.arrow(a).target});
    }
    if (n > 2 && dual->in_window(n)) {
      for (int b = 0; b < dual->dim(n); ++b) {
        alg->generators_.push_back({to_string(qop, dual->basis_path(n, b)), n, b, dual->sources(n)[static_cast<std::size_t>(b)],
                                    dual->targets(n)[static_cast<std::size_t>(b)]});
      }
    }
    for (int t = 0; t <= alg->top_; ++t) {
      std::vector<Matrix> per_gen;
      for (const auto& g : alg->generators_) {
        if (t + g.degree > alg->top_) {
          per_gen.emplace_back();
          continue;
        }
        const int rows = alg->dim(t + g.degree), cols = alg->dim(t);
        if (rows == 0 || cols == 0) {
          per_gen.push_back(Matrix::Zero(rows, cols));
        } else if (g.degree == 1) {
          per_gen.push_back(dual->right_mult(t, g.index));
        } else {
          Matrix m(rows, cols);
          Vector unit = Vector::Zero(dual->dim(n));
          unit(g.index) = 1;
          for (int y = 0; y < cols; ++y) {
            Vector e = Vector::Zero(cols);
            e(y) = 1;
            m.col(y) = dual->multiply(t, e, n, unit);
          }
          per_gen.push_back(std::move(m));
        }
      }
      alg->right_.push_back(std::move(per_gen));
    }
    return alg;
  }

  static std::shared_ptr<const GradedAlgebra> yoneda(const std::shared_ptr<const GradedAlgebra>& support) {
    const int n = support->homogeneity();
    const DegreeMap delta{0, n};
    auto alg = std::make_shared<TableAlgebra>(Kind::kYoneda, *support, support->dual_base());
    int last = 0;
    while (delta(last + 1) <= support->top()) ++last;
    alg->top_ = last;
    alg->bounded_ = support->bounded();
    for (int j = 0; j <= last; ++j) {
      alg->sources_.push_back(support->sources(delta(j)));
      alg->targets_.push_back(support->targets(delta(j)));
    }
    for (const auto& g : support->generators()) {
      Generator e = g;
      e.degree = g.degree == 1 ? 1 : 2;
      alg->generators_.push_back(e);
    }
    for (int j = 0; j <= last; ++j) {
      std::vector<Matrix> per_gen;
      for (int g = 0; g < alg->generator_count(); ++g) {
        const int deg = alg->generators_[static_cast<std::size_t>(g)].degree;
        if (j + deg > last) {
          per_gen.emplace_back();
          continue;
        }
        if (deg == 1 && delta(j) + 1 != delta(j + 1)) {
          per_gen.push_back(Matrix::Zero(alg->dim(j + 1), alg->dim(j)));
        } else {
          per_gen.push_back(support->right_mult(delta(j), g));
        }
      }
      alg->right_.push_back(std::move(per_gen));
    }
    return alg;
  }
};

}  // namespace

std::shared_ptr<const GradedAlgebra> restrict_support(const std::shared_ptr<const PathAlgebra>& dual) {
  return TableAlgebra::support(dual);
}

std::shared_ptr<const GradedAlgebra> yoneda_regrade(const std::shared_ptr<const GradedAlgebra>& support) {
  if (support->kind() != GradedAlgebra::Kind::kSupport) throw std::invalid_argument("yoneda_regrade expects a support-restricted algebra");
  return TableAlgebra::yoneda(support);
}

}  // namespace nkoszul
