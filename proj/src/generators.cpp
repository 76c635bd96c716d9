#include "nkoszul/generators.hpp"

#include <algorithm>
#include <map>

namespace nkoszul {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Scalar random_nonzero(Rng& rng, const PrimeField& f) {
  return std::uniform_int_distribution<Scalar>(1, f.modulus() - 1)(rng);
}

Quiver random_quiver(Rng& rng, int max_vertices, int max_arrows) {
  const int v = uniform_int(rng, 1, max_vertices);
  const int a = uniform_int(rng, 1, max_arrows);
  std::vector<Arrow> arrows;
  for (int i = 0; i < a; ++i) {
    arrows.push_back({std::string(1, static_cast<char>('a' + i)), uniform_int(rng, 0, v - 1), uniform_int(rng, 0, v - 1)});
  }
  return Quiver(v, std::move(arrows));
}

Presentation random_presentation(Rng& rng, const PrimeField& f, const RandomPresentationOptions& opts) {
  Presentation pres;
  pres.field = f;
  pres.quiver = random_quiver(rng, opts.max_vertices, opts.max_arrows);
  pres.n = opts.n_choices[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(opts.n_choices.size()) - 1))];
  std::map<std::pair<int, int>, std::vector<Path>> blocks;
  for (const auto& p : enumerate_paths(pres.quiver, pres.n)) blocks[{p.source(pres.quiver), p.target(pres.quiver)}].push_back(p);
  if (!blocks.empty()) {
    const int count = uniform_int(rng, 0, opts.max_relations);
    for (int r = 0; r < count; ++r) {
      auto it = blocks.begin();
      std::advance(it, uniform_int(rng, 0, static_cast<int>(blocks.size()) - 1));
      const auto& parallel = it->second;
      PathCombination rel{pres.n, {}};
      const int terms = uniform_int(rng, 1, std::min<int>(3, static_cast<int>(parallel.size())));
      for (int t = 0; t < terms; ++t) {
        rel.add(parallel[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(parallel.size()) - 1))], random_nonzero(rng, f), f);
      }
      if (!rel.is_zero()) pres.relations.push_back(std::move(rel));
    }
  }
  if (opts.truncate) pres.truncation = pres.n + uniform_int(rng, 0, 3);
  return pres;
}

GradedModule random_graded_data(Rng& rng, const std::shared_ptr<const GradedAlgebra>& alg, int lo, int hi, int max_dim,
                                double density) {
  const PrimeField& f = alg->field();
  std::vector<std::vector<int>> labels;
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> ls(static_cast<std::size_t>(uniform_int(rng, 0, max_dim)));
    for (auto& v : ls) v = uniform_int(rng, 0, alg->vertex_count() - 1);
    std::sort(ls.begin(), ls.end());
    labels.push_back(std::move(ls));
  }
  GradedModule m(alg, lo, std::move(labels));
  std::bernoulli_distribution nz(density);
  for (int g = 0; g < alg->generator_count(); ++g) {
    const auto& gen = alg->generators()[static_cast<std::size_t>(g)];
    for (int d = lo; d <= hi; ++d) {
      Matrix a = Matrix::Zero(m.dim(d + gen.degree), m.dim(d));
      for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c)
          if (m.labels(d + gen.degree)[static_cast<std::size_t>(r)] == gen.target &&
              m.labels(d)[static_cast<std::size_t>(c)] == gen.source && nz(rng)) {
            a(r, c) = random_nonzero(rng, f);
          }
      m.set_action(g, d, a);
    }
  }
  return m;
}

GradedModule random_quotient_module(Rng& rng, const std::shared_ptr<const GradedAlgebra>& alg, const std::vector<int>& gen_degrees,
                                    int top, int max_generators, int max_relations) {
  const PrimeField& f = alg->field();
  const int count = uniform_int(rng, 1, max_generators);
  std::vector<GradedModule> parts;
  for (int i = 0; i < count; ++i) {
    const int d = gen_degrees[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(gen_degrees.size()) - 1))];
    parts.push_back(free_module(alg, uniform_int(rng, 0, alg->vertex_count() - 1), d, top));
  }
  const GradedModule sum = direct_sum(parts);
  DegreewiseSubspaces seeds;
  const int rels = uniform_int(rng, 0, max_relations);
  for (int r = 0; r < rels; ++r) {
    const int d = uniform_int(rng, sum.lo(), sum.hi());
    if (sum.dim(d) == 0) continue;
    const int v = sum.labels(d)[static_cast<std::size_t>(uniform_int(rng, 0, sum.dim(d) - 1))];
    Vector x = Vector::Zero(sum.dim(d));
    for (int i = 0; i < sum.dim(d); ++i)
      if (sum.labels(d)[static_cast<std::size_t>(i)] == v) x(i) = std::uniform_int_distribution<Scalar>(0, f.modulus() - 1)(rng);
    Matrix rows(1, sum.dim(d));
    rows.row(0) = x.transpose();
    const Subspace prev = part(seeds, sum, d);
    Matrix stacked(prev.dim() + 1, sum.dim(d));
    stacked << prev.basis(), rows;
    seeds[d] = Subspace::from_rows(stacked, f);
  }
  return quotient(sum, generated_submodule(sum, seeds)).trimmed();
}

Presentation truncated_presentation(const Quiver& q, int n, const PrimeField& f) {
  Presentation pres;
  pres.quiver = q;
  pres.n = n;
  pres.field = f;
  for (const auto& p : enumerate_paths(q, n)) {
    PathCombination rel{n, {}};
    rel.add(p, 1, f);
    pres.relations.push_back(std::move(rel));
  }
  return pres;
}

Quiver loop_quiver(int loops) {
  std::vector<Arrow> arrows;
  for (int i = 0; i < loops; ++i) arrows.push_back({std::string(1, static_cast<char>('x' + i)), 0, 0});
  return Quiver(1, std::move(arrows));
}

Presentation commutative_plane(const PrimeField& f) {
  Presentation pres;
  pres.quiver = loop_quiver(2);
  pres.field = f;
  PathCombination rel{2, {}};
  rel.add(parse_path(pres.quiver, "x.y"), 1, f);
  rel.add(parse_path(pres.quiver, "y.x"), f.neg(1), f);
  pres.relations.push_back(std::move(rel));
  return pres;
}

namespace {

Matrix random_labelled(Rng& rng, const PrimeField& f, const std::vector<int>& rows, const std::vector<int>& cols, int row_label,
                       int col_label) {
  Matrix out = Matrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (rows[r] == row_label && cols[c] == col_label) {
        out(static_cast<Index>(r), static_cast<Index>(c)) = std::uniform_int_distribution<Scalar>(0, f.modulus() - 1)(rng);
      }
  return out;
}

}  // namespace

GradedModule random_l_module(Rng& rng, const std::shared_ptr<const GradedAlgebra>& u, int m, int levels, int max_dim) {
  const PathAlgebra& dual = *u->dual_base();
  const PrimeField& f = u->field();
  const int n = u->homogeneity();
  const Quiver& qop = dual.quiver();
  const Quiver q = qop.opposite();
  const int verts = u->vertex_count();
  const int lo = m, hi = m + (levels - 1) * n + 1;
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<std::vector<int>> labels(static_cast<std::size_t>(hi - lo + 1));
    auto lab = [&](int d) -> std::vector<int>& { return labels[static_cast<std::size_t>(d - lo)]; };
    for (int j = 0; j < levels; ++j) {
      const int s = m + j * n;
      const int a = uniform_int(rng, j == 0 ? 1 : 0, max_dim);
      for (int i = 0; i < a; ++i) lab(s).push_back(uniform_int(rng, 0, verts - 1));
      const int b = a == 0 ? 0 : uniform_int(rng, 0, max_dim);
      for (int i = 0; i < b; ++i) lab(s + 1).push_back(uniform_int(rng, 0, verts - 1));
    }
    GradedModule x(u, lo, labels);
    bool ok = true;
    std::vector<std::map<Path, Matrix>> xi(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels && ok; ++j) {
      const int s = m + j * n;
      for (int a = 0; a < q.arrow_count(); ++a)
        x.set_action(a, s, random_labelled(rng, f, lab(s + 1), lab(s), qop.arrow(a).target, qop.arrow(a).source));
      Matrix mu = Matrix::Zero(static_cast<Index>(lab(s + 1).size()), 0);
      for (int a = 0; a < q.arrow_count(); ++a) {
        Matrix wide(mu.rows(), mu.cols() + x.action(a, s).cols());
        wide << mu, x.action(a, s);
        mu = wide;
      }
      if (rank(mu, f) != mu.rows()) ok = false;
      if (j + 1 < levels) {
        for (const auto& p : enumerate_paths(q, n - 1)) {
          xi[static_cast<std::size_t>(j)].emplace(p, random_labelled(rng, f, lab(s + n), lab(s + 1), p.source(q), p.target(q)));
        }
      }
    }
    if (!ok) continue;
    for (int g = 0; g < u->generator_count(); ++g) {
      const auto& gen = u->generators()[static_cast<std::size_t>(g)];
      if (gen.degree != n) continue;
      const Path& word = dual.basis_path(n, gen.index);
      for (int j = 0; j + 1 < levels; ++j) {
        const int s = m + j * n;
        const auto& xij = xi[static_cast<std::size_t>(j)];
        const Path rest{qop.arrow(word.arrows.front()).target, std::vector<int>(word.arrows.begin() + 1, word.arrows.end())};
        x.set_action(g, s, multiply(xij.at(opposite(rest)), x.action(word.arrows.front(), s), f));
        const Path head{word.source(qop), std::vector<int>(word.arrows.begin(), word.arrows.end() - 1)};
        x.set_action(g, s + 1, multiply(x.action(word.arrows.back(), s + n), xij.at(opposite(head)), f));
      }
    }
    if (x.validate().ok()) return x;
  }
  throw std::runtime_error("random_l_module: no attempt produced a module");
}

GradedModule random_conjugate(Rng& rng, const GradedModule& m) {
  const PrimeField& f = m.field();
  std::map<int, Matrix> change, inverse;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    const int k = m.dim(d);
    Matrix c;
    while (true) {
      c = Matrix::Zero(k, k);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s)
          if (m.labels(d)[static_cast<std::size_t>(r)] == m.labels(d)[static_cast<std::size_t>(s)]) {
            c(r, s) = std::uniform_int_distribution<Scalar>(0, f.modulus() - 1)(rng);
          }
      if (rank(c, f) == k) break;
    }
    change[d] = c;
    inverse[d] = *solve_matrix(c, Matrix::Identity(k, k), f);
  }
  GradedModule out = m;
  for (int g = 0; g < m.algebra().generator_count(); ++g) {
    const int deg = m.algebra().generators()[static_cast<std::size_t>(g)].degree;
    for (int d = m.lo(); d <= m.hi(); ++d) {
      if (d + deg > m.hi()) continue;
      out.set_action(g, d, multiply(multiply(change[d + deg], m.action(g, d), f), inverse[d], f));
    }
  }
  if (m.validated()) out.assume_valid();
  return out;
}

}  // namespace nkoszul
