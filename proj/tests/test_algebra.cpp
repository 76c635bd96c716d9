#include <doctest.h>

#include "nkoszul/algebra.hpp"
#include "nkoszul/generators.hpp"

using namespace nkoszul;

namespace {

Presentation one_loop(int n, std::optional<int> trunc) {
  Presentation p;
  p.quiver = Quiver(1, {{"x", 0, 0}});
  p.n = n;
  PathCombination r{n, {}};
  r.add(Path{0, std::vector<int>(static_cast<std::size_t>(n), 0)}, 1, p.field);
  p.relations.push_back(r);
  p.truncation = trunc;
  return p;
}

// I_k straight from the definition: span of u * rho * v over all paths u, v.
Subspace ideal_from_definition(const PathAlgebra& alg, int k) {
  const auto& pres = alg.presentation();
  const Quiver& q = pres.quiver;
  const auto& pk = alg.paths(k);
  std::vector<Vector> rows;
  if (pres.truncation && k > *pres.truncation) return Subspace::full(static_cast<Index>(pk.size()));
  for (const auto& rel : pres.relations) {
    if (rel.degree > k) continue;
    for (int i = 0; i <= k - rel.degree; ++i) {
      for (const auto& u : enumerate_paths(q, i)) {
        for (const auto& v : enumerate_paths(q, k - rel.degree - i)) {
          Vector row = Vector::Zero(static_cast<Index>(pk.size()));
          for (const auto& [p, c] : rel.terms) {
            if (!composable(q, u, p)) continue;
            const Path up = concat(q, u, p);
            if (!composable(q, up, v)) continue;
            row(alg.path_index(concat(q, up, v))) = c;
          }
          if (!row.isZero()) rows.push_back(row);
        }
      }
    }
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(pk.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return Subspace::from_rows(m, alg.field());
}

}  // namespace

TEST_CASE("path enumeration is lexicographic and counts match adjacency powers") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Quiver q = random_quiver(rng, 3, 4);
    for (int k = 0; k <= 4; ++k) {
      const auto paths = enumerate_paths(q, k);
      CHECK(static_cast<Scalar>(paths.size()) == count_paths(q, k));
      for (std::size_t i = 1; i < paths.size(); ++i) CHECK(paths[i - 1] < paths[i]);
      for (const auto& p : paths) CHECK(parse_path(q, to_string(q, p)) == p);
    }
  }
}

TEST_CASE("truncated loop has dimensions 1,1,1 then zero") {
  const auto alg = PathAlgebra::build(one_loop(3, std::nullopt), 6);
  CHECK(alg->bounded());
  CHECK(alg->top() == 2);
  for (int t = 0; t <= 2; ++t) CHECK(alg->dim(t) == 1);
  CHECK(alg->dim(3) == 0);
  CHECK(alg->dim(10) == 0);
}

TEST_CASE("commutative plane: polynomial dimensions and exterior dual") {
  const auto alg = PathAlgebra::build(commutative_plane(), 6);
  CHECK_FALSE(alg->bounded());
  for (int t = 0; t <= 6; ++t) CHECK(alg->dim(t) == t + 1);
  CHECK_THROWS_AS(alg->dim(7), WindowError);
  const auto dual = build_dual(*alg, 6);
  CHECK(dual->bounded());
  CHECK(dual->top() == 2);
  CHECK(dual->dim(0) == 1);
  CHECK(dual->dim(1) == 2);
  CHECK(dual->dim(2) == 1);
  // x^o x^o = 0 and x^o y^o = -y^o x^o in the exterior algebra.
  const Vector xx = dual->coordinates(parse_path(dual->quiver(), "x.x"));
  const Vector xy = dual->coordinates(parse_path(dual->quiver(), "x.y"));
  const Vector yx = dual->coordinates(parse_path(dual->quiver(), "y.x"));
  CHECK(xx.isZero());
  CHECK(dual->field().reduce(Vector(xy + yx)).isZero());
}

TEST_CASE("loop with x^3: dual is a polynomial ring in one variable") {
  const auto alg = PathAlgebra::build(one_loop(3, std::nullopt), 6);
  const auto dual = build_dual(*alg, 8);
  for (int t = 0; t <= 8; ++t) CHECK(dual->dim(t) == 1);
}

TEST_CASE("ideal slices agree with the definition on random presentations") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pres = random_presentation(rng, PrimeField(101));
    const auto alg = PathAlgebra::build(pres, pres.n + 2);
    for (int k = 0; k <= std::min(alg->top(), pres.n + 2); ++k) {
      CHECK(alg->ideal(k) == ideal_from_definition(*alg, k));
      CHECK(alg->dim(k) == static_cast<int>(alg->paths(k).size() - static_cast<std::size_t>(alg->ideal(k).dim())));
    }
  }
}

TEST_CASE("both orthogonal computations agree and have the complementary dimension") {
  Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pres = random_presentation(rng, PrimeField(101));
    const auto alg = PathAlgebra::build(pres, pres.n);
    const Subspace gram = compute_orthogonal(*alg);
    const DualData data = compute_orthogonal_via_ordering(*alg);
    CHECK(gram == data.orthogonal);
    CHECK(gram.dim() == alg->dim(pres.n));
    CHECK(data.r_block.size() + data.s_block.size() + data.t_block.size() == alg->paths(pres.n).size());
    // Every h is orthogonal to every ideal vector, block by block.
    const Quiver& q = alg->quiver();
    for (const auto& h : data.h_basis) {
      for (Index r = 0; r < alg->ideal(pres.n).dim(); ++r) {
        PathCombination v{pres.n, {}};
        for (Index j = 0; j < alg->ideal(pres.n).ambient_dim(); ++j) {
          v.add(alg->paths(pres.n)[static_cast<std::size_t>(j)], alg->ideal(pres.n).basis()(r, j), alg->field());
        }
        for (Scalar s : pairing(q, h, v, alg->field())) CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("the dual of the dual recovers the degree-n ideal slice") {
  Rng rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    auto pres = random_presentation(rng, PrimeField(101));
    pres.truncation.reset();
    const auto alg = PathAlgebra::build(pres, pres.n);
    const auto dual = build_dual(*alg, pres.n);
    const auto back = build_dual(*dual, pres.n);
    CHECK(back->quiver() == alg->quiver());
    CHECK(back->ideal(pres.n) == alg->ideal(pres.n));
  }
}

TEST_CASE("degree map and support set") {
  const DegreeMap d{1, 3};
  CHECK(d(0) == 1);
  CHECK(d(1) == 2);
  CHECK(d(2) == 4);
  CHECK(d(-1) == -1);
  CHECK(d(-2) == -2);
  for (int j = -10; j <= 10; ++j) {
    CHECK(d.in_image(d(j)));
    CHECK(d.inverse(d(j)) == j);
    CHECK(d(j) < d(j + 1));
  }
  CHECK_FALSE(d.in_image(3));
  CHECK_THROWS_AS(d.inverse(3), std::domain_error);
  CHECK(in_support_set(-3, 3));
  CHECK(in_support_set(-2, 3));
  CHECK_FALSE(in_support_set(-1, 3));
}

TEST_CASE("support restriction and Yoneda regrading") {
  const auto alg = PathAlgebra::build(one_loop(3, std::nullopt), 6);
  const auto dual = build_dual(*alg, 9);
  const auto u = restrict_support(dual);
  CHECK(u->dim(2) == 0);
  CHECK(u->dim(3) == 1);
  CHECK(u->dim(4) == 1);
  CHECK(u->generator_count() == 2);
  CHECK(u->generators()[1].degree == 3);
  // x^o * x^o leaves U from degree 1 and vanishes.
  CHECK(u->right_mult(1, 0).rows() == 0);
  const auto e = yoneda_regrade(u);
  CHECK(e->dim(2) == 1);
  CHECK(e->generators()[1].degree == 2);
  CHECK(e->right_mult(1, 0).isZero());
  CHECK(e->right_mult(0, 0)(0, 0) == 1);
  CHECK(e->right_mult(1, 1)(0, 0) == 1);
  // Generic decompositions reconstruct every basis element.
  for (int t = 1; t <= 6; ++t) CHECK(e->decomposition(t).size() == static_cast<std::size_t>(e->dim(t)));
}

TEST_CASE("declared degree caps are verified") {
  auto pres = one_loop(3, std::nullopt);
  pres.degree_cap = 2;
  CHECK_NOTHROW(PathAlgebra::build(pres, 4));
  pres.degree_cap = 1;
  CHECK_THROWS_AS(PathAlgebra::build(pres, 4), std::invalid_argument);
}

TEST_CASE("ordering blocks for the commutative plane") {
  const auto alg = PathAlgebra::build(commutative_plane(), 2);
  const auto data = compute_orthogonal_via_ordering(*alg);
  CHECK(data.r_block == std::vector<int>{0, 1, 3});
  CHECK(data.s_block == std::vector<int>{2});
  CHECK(data.t_block.empty());
  CHECK(data.h_basis.size() == 3);
}

TEST_CASE("two-loop truncated algebra: Yoneda components double") {
  const auto alg = PathAlgebra::build(truncated_presentation(loop_quiver(2), 3), 4);
  CHECK(alg->top() == 2);
  const auto dual = build_dual(*alg, 10);
  for (int k = 0; k <= 10; ++k) CHECK(dual->dim(k) == (1 << k));
  const auto e = yoneda_regrade(restrict_support(dual));
  const DegreeMap delta{0, 3};
  for (int j = 0; j <= 6; ++j) CHECK(e->dim(j) == (1 << delta(j)));
}

TEST_CASE("generic products are associative and match path multiplication") {
  Rng rng(21);
  auto random_element = [&](const GradedAlgebra& a, int t) {
    Vector v(a.dim(t));
    for (Index i = 0; i < v.size(); ++i) v(i) = uniform_int(rng, 0, 100);
    return v;
  };
  auto check_assoc = [&](const GradedAlgebra& a, int top) {
    for (int trial = 0; trial < 20; ++trial) {
      const int t = uniform_int(rng, 0, top), s = uniform_int(rng, 0, top - t), u = uniform_int(rng, 0, top - t - s);
      const Vector x = random_element(a, t), y = random_element(a, s), z = random_element(a, u);
      const Vector left = product(a, t + s, product(a, t, x, s, y), u, z);
      const Vector right = product(a, t, x, s + u, product(a, s, y, u, z));
      CHECK(left == right);
    }
  };
  for (int k = 0; k < 6; ++k) {
    RandomPresentationOptions opts;
    opts.n_choices = {3};
    opts.max_arrows = 3;
    const auto lambda = PathAlgebra::build(random_presentation(rng, PrimeField(), opts), 5);
    check_assoc(*lambda, 5);
    for (int trial = 0; trial < 10; ++trial) {
      const int t = uniform_int(rng, 0, 3), s = uniform_int(rng, 0, 5 - t);
      const Vector x = random_element(*lambda, t), y = random_element(*lambda, s);
      CHECK(product(*lambda, t, x, s, y) == lambda->multiply(t, x, s, y));
    }
    const auto dual = build_dual(*PathAlgebra::build(lambda->presentation(), 3), 7);
    check_assoc(*dual, 7);
    const auto u = restrict_support(dual);
    check_assoc(*u, 7);
    check_assoc(*yoneda_regrade(u), 4);
  }
}
