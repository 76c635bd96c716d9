#include "nkoszul/module.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

namespace nkoszul {

namespace {

const std::vector<int>& no_labels() {
  static const std::vector<int> empty;
  return empty;
}

Matrix rows_of(const Subspace& s) { return s.basis(); }

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) out << (i ? "; " : "") << violations[i];
  return out.str();
}

GradedModule::GradedModule(std::shared_ptr<const GradedAlgebra> alg, int lo, std::vector<std::vector<int>> labels)
    : alg_(std::move(alg)), lo_(lo), labels_(std::move(labels)) {
  for (const auto& ls : labels_) {
    for (int v : ls) {
      if (v < 0 || v >= alg_->vertex_count()) throw std::invalid_argument("module basis vertex out of range");
    }
  }
  actions_.resize(static_cast<std::size_t>(alg_->generator_count()));
  for (int g = 0; g < alg_->generator_count(); ++g) {
    const int deg = alg_->generators()[static_cast<std::size_t>(g)].degree;
    for (int d = lo_; d <= hi(); ++d) actions_[static_cast<std::size_t>(g)].push_back(Matrix::Zero(dim(d + deg), dim(d)));
  }
}

GradedModule GradedModule::zero(std::shared_ptr<const GradedAlgebra> alg) {
  GradedModule m(std::move(alg), 0, {});
  m.validated_ = true;
  return m;
}

int GradedModule::dim(int d) const {
  if (d < lo_ || d > hi()) return 0;
  return static_cast<int>(labels_[static_cast<std::size_t>(d - lo_)].size());
}

int GradedModule::total_dim() const {
  int s = 0;
  for (const auto& l : labels_) s += static_cast<int>(l.size());
  return s;
}

const std::vector<int>& GradedModule::labels(int d) const {
  if (d < lo_ || d > hi()) return no_labels();
  return labels_[static_cast<std::size_t>(d - lo_)];
}

const Matrix& GradedModule::action(int g, int d) const {
  if (d < lo_ || d > hi()) throw std::out_of_range("module action requested outside the module window");
  return actions_.at(static_cast<std::size_t>(g))[static_cast<std::size_t>(d - lo_)];
}

Matrix GradedModule::action_or_zero(int g, int d) const {
  if (d >= lo_ && d <= hi()) return action(g, d);
  return Matrix::Zero(dim(d + alg_->generators().at(static_cast<std::size_t>(g)).degree), dim(d));
}

void GradedModule::set_action(int g, int d, const Matrix& m) {
  const int deg = alg_->generators().at(static_cast<std::size_t>(g)).degree;
  if (d < lo_ || d > hi()) throw std::out_of_range("set_action outside the module window");
  if (m.rows() != dim(d + deg) || m.cols() != dim(d)) {
    throw std::invalid_argument("action matrix for generator '" + alg_->generators()[static_cast<std::size_t>(g)].name +
                                "' in degree " + std::to_string(d) + " has the wrong shape");
  }
  actions_[static_cast<std::size_t>(g)][static_cast<std::size_t>(d - lo_)] = field().reduce(m);
  validated_ = false;
}

void GradedModule::require_validated(const char* where) const {
  if (!validated_) throw std::logic_error(std::string(where) + ": module has not been validated");
}

ValidationReport GradedModule::validate() {
  ValidationReport report;
  const auto& gens = alg_->generators();
  for (int g = 0; g < alg_->generator_count(); ++g) {
    const auto& gen = gens[static_cast<std::size_t>(g)];
    for (int d = lo_; d <= hi(); ++d) {
      const Matrix& a = action(g, d);
      for (Index c = 0; c < a.cols(); ++c) {
        for (Index r = 0; r < a.rows(); ++r) {
          if (a(r, c) == 0) continue;
          if (labels(d)[static_cast<std::size_t>(c)] != gen.source || labels(d + gen.degree)[static_cast<std::size_t>(r)] != gen.target) {
            report.violations.push_back("generator '" + gen.name + "' in degree " + std::to_string(d) +
                                        " does not respect vertex idempotents");
            c = a.cols();
            break;
          }
        }
      }
    }
  }
  if (!report.ok()) return report;

  const PrimeField& f = field();
  if (alg_->kind() == GradedAlgebra::Kind::kPath) {
    const auto& path_alg = static_cast<const PathAlgebra&>(*alg_);
    const auto& pres = path_alg.presentation();
    auto path_action = [&](const Path& p, int d) {
      Matrix cur = Matrix::Identity(dim(d), dim(d));
      int at = d;
      for (int a : p.arrows) {
        cur = multiply(action_or_zero(a, at), cur, f);
        ++at;
      }
      return cur;
    };
    for (const auto& rel : pres.relations) {
      for (int d = lo_; d + rel.degree <= hi(); ++d) {
        Matrix sum = Matrix::Zero(dim(d + rel.degree), dim(d));
        for (const auto& [p, c] : rel.terms) sum = f.reduce(Matrix(sum + c * path_action(p, d)));
        if (!sum.isZero()) {
          report.violations.push_back("relation of degree " + std::to_string(rel.degree) + " acts nontrivially from degree " +
                                      std::to_string(d));
        }
      }
    }
    if (pres.truncation) {
      const int t = *pres.truncation;
      for (int d = lo_; d + t + 1 <= hi(); ++d) {
        Matrix span = Matrix::Identity(dim(d), dim(d));
        for (int step = 0; step <= t && span.cols() > 0; ++step) {
          std::vector<Matrix> imgs;
          Index cols = 0;
          for (int a = 0; a < alg_->generator_count(); ++a) {
            imgs.push_back(multiply(action_or_zero(a, d + step), span, f));
            cols += imgs.back().cols();
          }
          Matrix stacked(dim(d + step + 1), cols);
          Index off = 0;
          for (const auto& m : imgs) {
            stacked.middleCols(off, m.cols()) = m;
            off += m.cols();
          }
          span = Subspace::from_columns(stacked, f).basis().transpose();
        }
        if (span.cols() > 0) {
          report.violations.push_back("paths longer than the truncation act nontrivially from degree " + std::to_string(d));
        }
      }
    }
  } else {
    ActionTable table(*this);
    for (int t = 1; t <= hi() - lo_; ++t) {
      const Subspace& syz = alg_->syzygies(t);
      if (syz.is_zero()) continue;
      const auto layout = alg_->domain_layout(t);
      for (int d = lo_; d + t <= hi(); ++d) {
        if (dim(d) == 0 || dim(d + t) == 0) continue;
        std::vector<Matrix> blocks;
        for (auto [g, off] : layout) {
          const int s = t - gens[static_cast<std::size_t>(g)].degree;
          blocks.push_back(multiply(action_or_zero(g, d + s), table.element(d, s), f));
        }
        for (int i = 0; i < dim(d); ++i) {
          Matrix c = Matrix::Zero(dim(d + t), syz.ambient_dim());
          for (std::size_t k = 0; k < layout.size(); ++k) {
            const auto [g, off] = layout[k];
            const int w = alg_->dim(t - gens[static_cast<std::size_t>(g)].degree);
            if (w > 0) c.middleCols(off, w) = blocks[k].middleCols(static_cast<Index>(i) * w, w);
          }
          if (!multiply(c, syz.basis().transpose(), f).isZero()) {
            report.violations.push_back("algebra relations of degree " + std::to_string(t) + " act nontrivially from degree " +
                                        std::to_string(d));
            break;
          }
        }
      }
    }
  }
  validated_ = report.ok();
  return report;
}

GradedModule GradedModule::trimmed() const {
  int first = lo_, last = hi();
  while (first <= last && dim(first) == 0) ++first;
  while (last >= first && dim(last) == 0) --last;
  if (first > last) return zero(alg_);
  std::vector<std::vector<int>> labels;
  for (int d = first; d <= last; ++d) labels.push_back(this->labels(d));
  GradedModule out(alg_, first, std::move(labels));
  for (int g = 0; g < alg_->generator_count(); ++g) {
    for (int d = first; d <= last; ++d) out.actions_[static_cast<std::size_t>(g)][static_cast<std::size_t>(d - first)] = action_or_zero(g, d);
  }
  out.validated_ = validated_;
  return out;
}

GradedModule GradedModule::widened(int lo, int hi) const {
  const int a = labels_.empty() ? lo : std::min(lo, lo_);
  const int b = labels_.empty() ? hi : std::max(hi, this->hi());
  std::vector<std::vector<int>> labels;
  for (int d = a; d <= b; ++d) labels.push_back(this->labels(d));
  GradedModule out(alg_, a, std::move(labels));
  for (int g = 0; g < alg_->generator_count(); ++g) {
    for (int d = a; d <= b; ++d) out.actions_[static_cast<std::size_t>(g)][static_cast<std::size_t>(d - a)] = action_or_zero(g, d);
  }
  out.validated_ = validated_;
  return out;
}

// ---------------------------------------------------------------------------

const Matrix& ActionTable::element(int d, int t) {
  const auto key = std::make_pair(d, t);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const GradedModule& m = *m_;
  const GradedAlgebra& alg = m.algebra();
  const PrimeField& f = m.field();
  const int src = m.dim(d), dst = m.dim(d + t);
  const int dv = alg.dim(t);
  Matrix out = Matrix::Zero(dst, static_cast<Index>(src) * dv);
  if (t == 0) {
    for (int i = 0; i < src; ++i) out(i, static_cast<Index>(i) * dv + m.labels(d)[static_cast<std::size_t>(i)]) = 1;
  } else if (src > 0 && dst > 0 && dv > 0) {
    const auto& dec = alg.decomposition(t);
    std::map<int, Matrix> through;  // generator -> G_g * A(d, t - deg g)
    for (int b = 0; b < dv; ++b) {
      for (const auto& term : dec[static_cast<std::size_t>(b)]) {
        const int s = t - alg.generators()[static_cast<std::size_t>(term.generator)].degree;
        auto it = through.find(term.generator);
        if (it == through.end()) {
          const Matrix prev = element(d, s);
          it = through.emplace(term.generator, multiply(m.action_or_zero(term.generator, d + s), prev, f)).first;
        }
        const int ws = alg.dim(s);
        for (int i = 0; i < src; ++i) {
          out.col(static_cast<Index>(i) * dv + b) += term.coef * it->second.col(static_cast<Index>(i) * ws + term.prefix);
        }
      }
      if ((b & 63) == 63) out = f.reduce(out);
    }
    out = f.reduce(out);
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

Matrix ActionTable::by(int d, int t, const Vector& a) {
  const Matrix& e = element(d, t);
  const int src = m_->dim(d);
  const Index dv = a.size();
  Matrix out = Matrix::Zero(e.rows(), src);
  for (int i = 0; i < src; ++i) {
    for (Index b = 0; b < dv; ++b) {
      if (a(b) != 0) out.col(i) += a(b) * e.col(static_cast<Index>(i) * dv + b);
    }
  }
  return m_->field().reduce(out);
}

Matrix ActionTable::by_basis(int d, int t, int b) {
  Vector a = Vector::Zero(m_->algebra().dim(t));
  a(b) = 1;
  return by(d, t, a);
}

Matrix GradedMorphism::component(int d, Index rows, Index cols) const {
  auto it = components.find(d);
  if (it == components.end()) return Matrix::Zero(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols) throw std::invalid_argument("morphism component has the wrong shape");
  return it->second;
}

bool is_morphism(const GradedMorphism& f, const GradedModule& from, const GradedModule& to) {
  const PrimeField& fld = from.field();
  for (const auto& [d, c] : f.components) {
    if (c.rows() != to.dim(d) || c.cols() != from.dim(d)) return false;
  }
  for (int g = 0; g < from.algebra().generator_count(); ++g) {
    const int deg = from.algebra().generators()[static_cast<std::size_t>(g)].degree;
    for (int d = from.lo(); d <= from.hi(); ++d) {
      const Matrix lhs = multiply(f.component(d + deg, to.dim(d + deg), from.dim(d + deg)), from.action(g, d), fld);
      const Matrix rhs = multiply(to.action_or_zero(g, d), f.component(d, to.dim(d), from.dim(d)), fld);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

GradedMorphism compose(const GradedMorphism& g, const GradedMorphism& f, const GradedModule& from,
                       const GradedModule& mid, const GradedModule& to) {
  GradedMorphism out;
  for (int d = from.lo(); d <= from.hi(); ++d) {
    if (from.dim(d) == 0 || to.dim(d) == 0) continue;
    out.components[d] = multiply(g.component(d, to.dim(d), mid.dim(d)), f.component(d, mid.dim(d), from.dim(d)), from.field());
  }
  return out;
}

// ---------------------------------------------------------------------------

Subspace part(const DegreewiseSubspaces& s, const GradedModule& m, int d) {
  auto it = s.find(d);
  if (it == s.end()) return Subspace(m.dim(d));
  return it->second;
}

namespace {

// Rows of `base` plus the rows of (action * span-of-rows)^T.
Matrix append_images(const Matrix& base, const Matrix& action, const Matrix& rows, const PrimeField& f) {
  const Matrix img = multiply(action, rows.transpose(), f).transpose();
  Matrix out(base.rows() + img.rows(), action.rows());
  if (base.rows() > 0) out.topRows(base.rows()) = base;
  if (img.rows() > 0) out.bottomRows(img.rows()) = img;
  return out;
}

}  // namespace

DegreewiseSubspaces generated_submodule(const GradedModule& m, const DegreewiseSubspaces& seeds) {
  const auto& gens = m.algebra().generators();
  DegreewiseSubspaces out;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix rows = rows_of(part(seeds, m, d));
    for (int g = 0; g < m.algebra().generator_count(); ++g) {
      const int s = d - gens[static_cast<std::size_t>(g)].degree;
      if (s < m.lo() || m.dim(s) == 0) continue;
      rows = append_images(rows, m.action(g, s), rows_of(out.at(s)), m.field());
    }
    out[d] = Subspace::from_rows(rows, m.field());
  }
  return out;
}

DegreewiseSubspaces radical(const GradedModule& m) {
  const auto& gens = m.algebra().generators();
  DegreewiseSubspaces out;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix rows(0, m.dim(d));
    for (int g = 0; g < m.algebra().generator_count(); ++g) {
      const int s = d - gens[static_cast<std::size_t>(g)].degree;
      if (s < m.lo() || m.dim(s) == 0) continue;
      rows = append_images(rows, m.action(g, s), Matrix::Identity(m.dim(s), m.dim(s)), m.field());
    }
    out[d] = Subspace::from_rows(rows, m.field());
  }
  return out;
}

DegreewiseSubspaces socle_parts(const GradedModule& m) {
  DegreewiseSubspaces out;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Index rows = 0;
    for (int g = 0; g < m.algebra().generator_count(); ++g) rows += m.action(g, d).rows();
    Matrix stacked(rows, m.dim(d));
    Index off = 0;
    for (int g = 0; g < m.algebra().generator_count(); ++g) {
      const Matrix& a = m.action(g, d);
      stacked.middleRows(off, a.rows()) = a;
      off += a.rows();
    }
    out[d] = kernel(stacked, m.field());
  }
  return out;
}

GradedModule submodule(const GradedModule& m, const DegreewiseSubspaces& s, GradedMorphism* inclusion) {
  const PrimeField& f = m.field();
  std::vector<std::vector<int>> labels;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    const Subspace sd = part(s, m, d);
    std::vector<int> ls;
    for (Index r = 0; r < sd.dim(); ++r) {
      const int v = m.labels(d)[static_cast<std::size_t>(sd.pivots()[static_cast<std::size_t>(r)])];
      for (Index c = 0; c < sd.ambient_dim(); ++c) {
        if (sd.basis()(r, c) != 0 && m.labels(d)[static_cast<std::size_t>(c)] != v) {
          throw std::invalid_argument("submodule: degree " + std::to_string(d) + " subspace is not vertex-homogeneous");
        }
      }
      ls.push_back(v);
    }
    labels.push_back(std::move(ls));
  }
  GradedModule out(m.algebra_ptr(), m.lo(), std::move(labels));
  const auto& gens = m.algebra().generators();
  for (int g = 0; g < m.algebra().generator_count(); ++g) {
    const int deg = gens[static_cast<std::size_t>(g)].degree;
    for (int d = m.lo(); d <= m.hi(); ++d) {
      const Subspace src = part(s, m, d), dst = part(s, m, d + deg);
      const Matrix img = src.dim() == src.ambient_dim() ? m.action(g, d) : multiply(m.action(g, d), src.basis().transpose(), f);
      if (dst.dim() == dst.ambient_dim()) {
        out.set_action(g, d, img);
        continue;
      }
      Matrix a(dst.dim(), src.dim());
      for (Index c = 0; c < img.cols(); ++c) {
        const Vector v = img.col(c);
        if (!dst.contains(v, f)) throw std::invalid_argument("submodule: subspaces are not closed under the action");
        a.col(c) = dst.coordinates(v);
      }
      out.set_action(g, d, a);
    }
  }
  if (m.validated()) out.assume_valid();
  if (inclusion) {
    inclusion->components.clear();
    for (int d = m.lo(); d <= m.hi(); ++d) inclusion->components[d] = part(s, m, d).basis().transpose();
  }
  return out;
}

GradedModule quotient(const GradedModule& m, const DegreewiseSubspaces& s, GradedMorphism* projection) {
  const PrimeField& f = m.field();
  std::vector<std::vector<int>> labels;
  std::map<int, std::vector<Index>> keep;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    keep[d] = part(s, m, d).non_pivots();
    std::vector<int> ls;
    for (Index j : keep[d]) ls.push_back(m.labels(d)[static_cast<std::size_t>(j)]);
    labels.push_back(std::move(ls));
  }
  auto project = [&](int d, const Vector& v) {
    const auto it = keep.find(d);
    if (it == keep.end()) return Vector(Vector::Zero(0));
    const Vector r = part(s, m, d).residual(v, f);
    Vector out(static_cast<Index>(it->second.size()));
    for (std::size_t k = 0; k < it->second.size(); ++k) out(static_cast<Index>(k)) = r(it->second[k]);
    return out;
  };
  GradedModule out(m.algebra_ptr(), m.lo(), std::move(labels));
  const auto& gens = m.algebra().generators();
  for (int g = 0; g < m.algebra().generator_count(); ++g) {
    const int deg = gens[static_cast<std::size_t>(g)].degree;
    for (int d = m.lo(); d <= m.hi(); ++d) {
      const auto& kd = keep[d];
      Matrix a(out.dim(d + deg), static_cast<Index>(kd.size()));
      for (std::size_t c = 0; c < kd.size(); ++c) {
        if (d + deg > m.hi()) break;
        a.col(static_cast<Index>(c)) = project(d + deg, m.action(g, d).col(kd[c]));
      }
      out.set_action(g, d, a);
    }
  }
  if (m.validated()) out.assume_valid();
  if (projection) {
    projection->components.clear();
    for (int d = m.lo(); d <= m.hi(); ++d) {
      Matrix p(out.dim(d), m.dim(d));
      for (int i = 0; i < m.dim(d); ++i) p.col(i) = project(d, Vector::Unit(m.dim(d), i));
      projection->components[d] = p;
    }
  }
  return out;
}

GradedModule with_algebra(const GradedModule& m, const std::shared_ptr<const GradedAlgebra>& alg) {
  if (alg->signature() != m.algebra().signature()) throw std::invalid_argument("with_algebra: generator signatures differ");
  std::vector<std::vector<int>> labels;
  for (int d = m.lo(); d <= m.hi(); ++d) labels.push_back(m.labels(d));
  GradedModule out(alg, m.lo(), std::move(labels));
  for (int g = 0; g < alg->generator_count(); ++g)
    for (int d = m.lo(); d <= m.hi(); ++d) out.set_action(g, d, m.action(g, d));
  return out;
}

GradedModule shift(const GradedModule& m, int k) {
  std::vector<std::vector<int>> labels;
  for (int d = m.lo(); d <= m.hi(); ++d) labels.push_back(m.labels(d));
  GradedModule out(m.algebra_ptr(), m.lo() - k, std::move(labels));
  for (int g = 0; g < m.algebra().generator_count(); ++g) {
    for (int d = m.lo(); d <= m.hi(); ++d) out.set_action(g, d - k, m.action(g, d));
  }
  if (m.validated()) out.assume_valid();
  return out;
}

GradedModule direct_sum(const std::vector<GradedModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of no modules");
  const auto alg = parts.front().algebra_ptr();
  int lo = 0, hi = -1;
  bool any = false, valid = true;
  for (const auto& p : parts) {
    if (p.algebra().signature() != alg->signature()) throw std::invalid_argument("direct_sum over different algebras");
    valid = valid && p.validated();
    if (p.hi() < p.lo()) continue;
    lo = any ? std::min(lo, p.lo()) : p.lo();
    hi = any ? std::max(hi, p.hi()) : p.hi();
    any = true;
  }
  if (!any) return GradedModule::zero(alg);
  std::vector<std::vector<int>> labels;
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> ls;
    for (const auto& p : parts) ls.insert(ls.end(), p.labels(d).begin(), p.labels(d).end());
    labels.push_back(std::move(ls));
  }
  GradedModule out(alg, lo, std::move(labels));
  for (int g = 0; g < alg->generator_count(); ++g) {
    const int deg = alg->generators()[static_cast<std::size_t>(g)].degree;
    for (int d = lo; d <= hi; ++d) {
      Matrix a = Matrix::Zero(out.dim(d + deg), out.dim(d));
      Index r = 0, c = 0;
      for (const auto& p : parts) {
        const Matrix pa = p.action_or_zero(g, d);
        a.block(r, c, pa.rows(), pa.cols()) = pa;
        r += p.dim(d + deg);
        c += p.dim(d);
      }
      out.set_action(g, d, a);
    }
  }
  if (valid) out.assume_valid();
  return out;
}

GradedModule free_module(const std::shared_ptr<const GradedAlgebra>& alg, int vertex, int degree, int hi) {
  std::vector<std::vector<int>> labels;
  std::vector<std::vector<int>> picks;
  for (int d = degree; d <= hi; ++d) {
    const int t = d - degree;
    std::vector<int> pick, ls;
    for (int b = 0; b < alg->dim(t); ++b) {
      if (alg->sources(t)[static_cast<std::size_t>(b)] == vertex) {
        pick.push_back(b);
        ls.push_back(alg->targets(t)[static_cast<std::size_t>(b)]);
      }
    }
    picks.push_back(std::move(pick));
    labels.push_back(std::move(ls));
  }
  GradedModule out(alg, degree, std::move(labels));
  for (int g = 0; g < alg->generator_count(); ++g) {
    const int deg = alg->generators()[static_cast<std::size_t>(g)].degree;
    for (int d = degree; d + deg <= hi; ++d) {
      const int t = d - degree;
      const Matrix full = alg->right_mult(t, g);
      const auto& rows = picks[static_cast<std::size_t>(t + deg)];
      const auto& cols = picks[static_cast<std::size_t>(t)];
      Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) a(static_cast<Index>(i), static_cast<Index>(j)) = full(rows[i], cols[j]);
      out.set_action(g, d, a);
    }
  }
  out.assume_valid();
  return out;
}

GradedModule simple_module(const std::shared_ptr<const GradedAlgebra>& alg, int vertex, int degree) {
  GradedModule out(alg, degree, {{vertex}});
  out.assume_valid();
  return out;
}

std::vector<GradedMorphism> hom_space(const GradedModule& from, const GradedModule& to) {
  const PrimeField& f = from.field();
  // Unknowns: entries (r, c) of f_d with matching vertex labels.
  std::map<std::tuple<int, int, int>, Index> var;
  std::vector<std::tuple<int, int, int>> names;
  for (int d = from.lo(); d <= from.hi(); ++d) {
    for (int c = 0; c < from.dim(d); ++c)
      for (int r = 0; r < to.dim(d); ++r)
        if (to.labels(d)[static_cast<std::size_t>(r)] == from.labels(d)[static_cast<std::size_t>(c)]) {
          var.emplace(std::make_tuple(d, r, c), static_cast<Index>(names.size()));
          names.emplace_back(d, r, c);
        }
  }
  const Index nv = static_cast<Index>(names.size());
  if (nv == 0) return {};
  std::vector<SparseRow> eqs;
  std::map<Index, Scalar> e;
  for (int g = 0; g < from.algebra().generator_count(); ++g) {
    const int deg = from.algebra().generators()[static_cast<std::size_t>(g)].degree;
    for (int d = from.lo(); d <= from.hi(); ++d) {
      const Matrix& a = from.action(g, d);
      const Matrix b = to.action_or_zero(g, d);
      // (f_{d+deg} a - b f_d)(r, c) = 0
      for (int r = 0; r < to.dim(d + deg); ++r) {
        for (int c = 0; c < from.dim(d); ++c) {
          e.clear();
          for (int k = 0; k < from.dim(d + deg); ++k) {
            if (a(k, c) == 0) continue;
            auto it = var.find({d + deg, r, k});
            if (it != var.end()) e[it->second] = f.add(e[it->second], a(k, c));
          }
          for (int k = 0; k < to.dim(d); ++k) {
            if (b(r, k) == 0) continue;
            auto it = var.find({d, k, c});
            if (it != var.end()) e[it->second] = f.sub(e[it->second], b(r, k));
          }
          SparseRow row;
          for (const auto& [v, x] : e)
            if (x != 0) row.emplace_back(v, x);
          if (!row.empty()) eqs.push_back(std::move(row));
        }
      }
    }
  }
  const RowMajorMatrix sol = sparse_kernel_basis(eqs, nv, f);
  // Unknowns are numbered degree by degree, so each component is one run of them.
  std::vector<GradedMorphism> out;
  for (Index s = 0; s < sol.rows(); ++s) {
    GradedMorphism h;
    Index v = 0;
    for (int d = from.lo(); d <= from.hi(); ++d) {
      if (!from.dim(d) || !to.dim(d)) continue;
      Matrix comp = Matrix::Zero(to.dim(d), from.dim(d));
      for (; v < nv && std::get<0>(names[static_cast<std::size_t>(v)]) == d; ++v) {
        const auto& [dd, r, c] = names[static_cast<std::size_t>(v)];
        comp(r, c) = sol(s, v);
      }
      h.components.emplace(d, std::move(comp));
    }
    out.push_back(std::move(h));
  }
  return out;
}

bool isomorphic(const GradedModule& a, const GradedModule& b, int attempts, std::uint64_t seed) {
  if (a.algebra().signature() != b.algebra().signature()) return false;
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int d = lo; d <= hi; ++d) {
    auto la = a.labels(d), lb = b.labels(d);
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb) return false;
  }
  if (a.is_zero()) return true;
  const auto basis = hom_space(a, b);
  if (basis.empty()) return false;
  const PrimeField& f = a.field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Scalar> coef(0, f.modulus() - 1);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    bool ok = true;
    std::vector<Scalar> cs;
    for (std::size_t i = 0; i < basis.size(); ++i) cs.push_back(coef(rng));
    for (int d = a.lo(); d <= a.hi() && ok; ++d) {
      if (a.dim(d) == 0) continue;
      Matrix m = Matrix::Zero(b.dim(d), a.dim(d));
      for (std::size_t i = 0; i < basis.size(); ++i) m += cs[i] * basis[i].component(d, b.dim(d), a.dim(d));
      ok = rank(f.reduce(m), f) == a.dim(d);
    }
    if (ok) return true;
  }
  return false;
}

bool identical(const GradedModule& a, const GradedModule& b) {
  const GradedModule x = a.trimmed(), y = b.trimmed();
  if (x.algebra().signature() != y.algebra().signature()) return false;
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  if (x.lo() != y.lo() || x.hi() != y.hi()) return false;
  for (int d = x.lo(); d <= x.hi(); ++d) {
    if (x.labels(d) != y.labels(d)) return false;
    for (int g = 0; g < x.algebra().generator_count(); ++g) {
      if (x.action(g, d) != y.action(g, d)) return false;
    }
  }
  return true;
}

}  // namespace nkoszul
