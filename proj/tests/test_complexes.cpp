#include <doctest.h>

#include "nkoszul/complexes.hpp"
#include "nkoszul/generators.hpp"

using namespace nkoszul;

namespace {

std::shared_ptr<const PathAlgebra> free_opposite(const PathAlgebra& lambda) {
  Presentation pres;
  pres.quiver = lambda.quiver().opposite();
  pres.n = lambda.homogeneity();
  pres.field = lambda.field();
  return PathAlgebra::build(pres, pres.n + 1);
}

Presentation bounded_random(Rng& rng, std::vector<int> n_choices) {
  RandomPresentationOptions opts;
  opts.max_vertices = 2;
  opts.max_arrows = 3;
  opts.n_choices = std::move(n_choices);
  opts.truncate = true;
  return random_presentation(rng, PrimeField(), opts);
}

std::shared_ptr<const PathAlgebra> bounded(const Presentation& p) { return PathAlgebra::build(p, *p.truncation + 1); }

bool outside_S(const GradedModule& m, const TorsionParams& params) {
  for (int d : support(m))
    if (params.in_S(d)) return false;
  return true;
}

}  // namespace

TEST_CASE("psi and nu are n-complexes exactly when M kills the orthogonal relations") {
  Rng rng(21);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto pres = bounded_random(rng, {2, 3});
    const auto lambda = bounded(pres);
    const auto free = free_opposite(*lambda);
    const int n = pres.n;
    GradedModule m = random_graded_data(rng, free, 0, 3 * n, 2, 0.6);
    if (!m.validate().ok()) continue;
    if (trial % 3 == 0) m = kill_orthogonal(m, *lambda);
    if (m.is_zero()) continue;
    const bool expected = annihilates_orthogonal(m, *lambda);
    CHECK(is_n_complex(psi(m, lambda), n) == expected);
    CHECK(is_n_complex(nu(m, lambda), n) == expected);
    CHECK(differentials_are_morphisms(nu(m, lambda)));
    CHECK(differentials_are_morphisms(psi(m, lambda)));
    (expected ? yes : no)++;
  }
  CHECK(yes >= 10);
  CHECK(no >= 10);
}

TEST_CASE("nu and psi of simples are stalks and certify as linear") {
  const auto lambda = PathAlgebra::build(truncated_presentation(loop_quiver(2), 3), 3);
  const auto dual = build_dual(*lambda, 6);
  const auto s = simple_module(dual, 0, 2);
  const auto c = nu(s, lambda);
  CHECK(c.lo() == 2);
  CHECK(c.hi() == 2);
  CHECK(certify_linear(c, Flavor::kAlmostInjective).has_value());
  CHECK_FALSE(certify_linear(c, Flavor::kProjective).has_value());
  const auto p = psi(s, lambda);
  CHECK(certify_linear(p, Flavor::kProjective).has_value());
  // Λ = K<x,y>/(paths of length 3) has dims 1, 2, 4.
  CHECK(c.term(2).total_dim() == 7);
  CHECK(c.term(2).dim(-2) == 1);
  CHECK(c.term(2).dim(-4) == 4);
  CHECK(p.term(2).dim(-2) == 1);
  CHECK(p.term(2).dim(0) == 4);
}

TEST_CASE("nu of a free module over the dual is linear and an n-complex") {
  Rng rng(22);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pres = bounded_random(rng, {2, 3});
    const auto lambda = bounded(pres);
    const auto dual = build_dual(*lambda, 2 * pres.n + 1);
    const auto m = random_quotient_module(rng, dual, {0, 1}, 2 * pres.n + 1, 2, 2);
    if (m.is_zero()) continue;
    const auto c = nu(m, lambda);
    CHECK(is_n_complex(c, pres.n));
    CHECK(certify_linear(c, Flavor::kAlmostInjective).has_value());
    CHECK(certify_linear(psi(m, lambda), Flavor::kProjective).has_value());
  }
}

TEST_CASE("torsion classes are detected through nu") {
  Rng rng(23);
  int g_yes = 0, g_no = 0, t_yes = 0, t_no = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const auto pres = bounded_random(rng, {2, 3, 4});
    const auto lambda = bounded(pres);
    const int n = pres.n;
    const auto dual = build_dual(*lambda, 2 * n + 2);
    for (int r = 0; 2 * r < n || (n == 2 && r == 1); ++r) {
      for (int m0 = 0; m0 < 2; ++m0) {
        const TorsionParams params{n, r, m0};
        std::vector<int> gens{0, 1, 2, n, n + 1};
        GradedModule m = uniform_int(rng, 0, 2) == 0
                             ? simple_module(dual, uniform_int(rng, 0, dual->vertex_count() - 1), uniform_int(rng, 0, 2 * n))
                             : random_quotient_module(rng, dual, gens, 2 * n + 2, 2, 3);
        if (m.is_zero() || m.total_dim() > 14) continue;
        const auto c = nu(m, lambda);
        const bool g = in_G(m, params);
        CHECK(g == in_G_star(c, params));
        const bool t = outside_S(m, params);
        CHECK(t == in_T_star(c, params));
        (g ? g_yes : g_no)++;
        (t ? t_yes : t_no)++;
      }
    }
  }
  CHECK(g_yes >= 5);
  CHECK(g_no >= 5);
  CHECK(t_yes >= 5);
  CHECK(t_no >= 5);
}

TEST_CASE("contractions produce 2-complexes") {
  Rng rng(24);
  for (int trial = 0; trial < 12; ++trial) {
    const auto pres = bounded_random(rng, {3});
    const auto lambda = bounded(pres);
    const int n = pres.n;
    const auto dual = build_dual(*lambda, 2 * n + 1);
    const auto m = random_quotient_module(rng, dual, {0, 1, n}, 2 * n + 1, 2, 3);
    if (m.total_dim() > 20) continue;
    if (m.is_zero()) continue;
    for (int m0 = 0; m0 < 2; ++m0) {
      const TorsionParams params{n, 1, m0};
      const auto h = contract_H(nu(m, lambda), n, m0);
      CHECK(is_n_complex(h, 2));
      CHECK(differentials_are_morphisms(h));
      CHECK(h.is_zero() == in_T_star(nu(m, lambda), params));
      const auto g = contract_G(psi(m, lambda), n, m0);
      CHECK(is_n_complex(g, 2));
      CHECK(differentials_are_morphisms(g));
    }
  }
}

TEST_CASE("the equivalence F and its inverse") {
  Rng rng(25);
  std::vector<Presentation> pres{truncated_presentation(loop_quiver(1), 3), truncated_presentation(loop_quiver(2), 3)};
  int checked = 0;
  for (const auto& p : pres) {
    const auto lambda = PathAlgebra::build(p, p.n);
    for (int m0 = 0; m0 < 2; ++m0) {
      const TorsionParams params{p.n, 1, m0};
      const auto u = restrict_support(build_dual(*lambda, m0 + 2 * p.n + 2));
      for (int trial = 0; trial < 4; ++trial) {
        const auto x = random_l_module(rng, u, m0, 3, 2);
        REQUIRE(in_L(x, params));
        const auto c = equivalence_F(x, lambda, params);
        CHECK(is_n_complex(c, 2));
        CHECK(differentials_are_morphisms(c));
        const DegreeMap delta{m0, p.n};
        for (int k = c.lo(); k <= c.hi(); ++k)
          CHECK(almost_injective_cogenerated_in(c.term(k), *lambda, -delta(k)).has_value());
        CHECK(isomorphic(extract_module(c, u, params), x));
        const auto report = in_Y(c, u, params);
        CHECK(report.verdict);
        REQUIRE(report.witness.has_value());
        CHECK(isomorphic(*report.witness, x));
        ++checked;
      }
      // Ĩ^0 -> Ĩ^1 with zero differential: X_{m+1} is not generated by X_m.
      GradedComplex bad(lambda, 2, 0);
      bad.push(coinduced(lambda, {0}, m0, lambda->top()), {});
      bad.push(coinduced(lambda, {0}, m0 + 1, lambda->top()), {});
      CHECK_FALSE(in_Y(bad, u, params).verdict);
      // A cogenerator in the wrong degree.
      CHECK_FALSE(in_Y(stalk(coinduced(lambda, {0}, m0 + 2, lambda->top()), 0, 2), u, params).verdict);
    }
  }
  CHECK(checked == 16);
}

TEST_CASE("F is fully faithful on small modules") {
  Rng rng(26);
  const auto lambda = PathAlgebra::build(truncated_presentation(loop_quiver(2), 3), 3);
  const TorsionParams params{3, 1, 0};
  const auto u = restrict_support(build_dual(*lambda, 9));
  for (int trial = 0; trial < 6; ++trial) {
    const auto x = random_l_module(rng, u, 0, 2, 2);
    const auto y = uniform_int(rng, 0, 1) == 0 ? x : random_l_module(rng, u, 0, 2, 2);
    const auto homs = hom_space(x, y);
    CHECK(hom_complexes(equivalence_F(x, lambda, params), equivalence_F(y, lambda, params)).size() == homs.size());
  }
}

TEST_CASE("the graded dual exchanges nu and psi") {
  Rng rng(27);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pres = bounded_random(rng, {2, 3});
    const auto lambda = bounded(pres);
    const auto dual = build_dual(*lambda, 2 * pres.n + 1);
    const auto m = random_quotient_module(rng, dual, {0, 1}, pres.n + 1, 2, 2);
    if (m.is_zero()) continue;
    const auto side = opposite_side(lambda);
    const auto lhs = dual_complex(nu(m, lambda), side.to_op);
    const auto rhs = psi(graded_dual(m), side.lambda_op);
    CHECK(iso_complexes(lhs, rhs));
  }
}

TEST_CASE("F on the opposite side meets the projective conditions") {
  Rng rng(28);
  const auto lambda = PathAlgebra::build(truncated_presentation(loop_quiver(2), 3), 3);
  for (int m0 = 0; m0 < 2; ++m0) {
    const TorsionParams params{3, 1, m0};
    const auto u = restrict_support(build_dual(*lambda, m0 + 8));
    for (int trial = 0; trial < 3; ++trial) {
      const auto x = graded_dual(random_l_module(rng, u, m0, 2, 2));
      REQUIRE(in_Lo(x, params));
      const auto c = equivalence_F_dual(x, lambda, params);
      CHECK(is_n_complex(c, 2));
      CHECK(projective_conditions(c, params));
    }
  }
}

TEST_CASE("xi depends on the decomposition outside L") {
  const auto lambda = PathAlgebra::build(truncated_presentation(loop_quiver(2), 3), 3);
  const auto u = restrict_support(build_dual(*lambda, 8));
  GradedModule x(u, 0, {{0}, {0}, {}, {0}});
  x.set_action(u->find_generator("x"), 0, Matrix::Constant(1, 1, 1));
  x.set_action(u->find_generator("y"), 0, Matrix::Zero(1, 1));
  for (const auto& g : u->generators())
    if (g.degree == 3) x.set_action(u->find_generator(g.name), 0, Matrix::Constant(1, 1, g.name == "y.x.x" ? 1 : 0));
  REQUIRE(x.validate().ok());
  CHECK_THROWS_AS(xi_maps(x, *lambda, 0), std::logic_error);
  CHECK_THROWS_AS(equivalence_F(x, lambda, TorsionParams{3, 1, 0}), std::invalid_argument);
}

TEST_CASE("dropping an arrow from nu breaks the oracle") {
  Rng rng(29);
  int caught = 0;
  for (int trial = 0; trial < 50 && caught == 0; ++trial) {
    const auto pres = bounded_random(rng, {2, 3});
    const auto lambda = bounded(pres);
    const auto dual = build_dual(*lambda, 2 * pres.n + 1);
    const auto m = random_quotient_module(rng, dual, {0, 1}, 2 * pres.n + 1, 2, 1);
    if (m.is_zero()) continue;
    const auto mutated = nu(m, lambda, false, NuVariant{true});
    if (!iso_complexes(dual_complex(mutated, opposite_side(lambda).to_op), psi(graded_dual(m), opposite_side(lambda).lambda_op)))
      ++caught;
  }
  CHECK(caught > 0);
}
