#include <doctest.h>

#include "nkoszul/generators.hpp"
#include "nkoszul/module.hpp"

using namespace nkoszul;

namespace {

std::shared_ptr<const PathAlgebra> free_algebra(const Quiver& q, int top) {
  Presentation p;
  p.quiver = q;
  return PathAlgebra::build(p, top);
}

Presentation loop_power(int n) {
  Presentation p;
  p.quiver = Quiver(1, {{"x", 0, 0}});
  p.n = n;
  PathCombination r{n, {}};
  r.add(Path{0, std::vector<int>(static_cast<std::size_t>(n), 0)}, 1, p.field);
  p.relations.push_back(r);
  return p;
}

}  // namespace

TEST_CASE("random data over a free path algebra is always a module") {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto alg = free_algebra(random_quiver(rng, 3, 3), 6);
    auto m = random_graded_data(rng, alg, -1, 3, 3);
    CHECK(m.validate().ok());
  }
}

TEST_CASE("relations and truncation are enforced") {
  const auto alg = PathAlgebra::build(loop_power(2), 4);
  GradedModule m(alg, 0, {{0}, {0}, {0}});
  m.set_action(0, 0, Matrix::Constant(1, 1, 1));
  m.set_action(0, 1, Matrix::Constant(1, 1, 1));
  CHECK_FALSE(m.validate().ok());
  m.set_action(0, 1, Matrix::Zero(1, 1));
  CHECK(m.validate().ok());

  Presentation trunc;
  trunc.quiver = Quiver(1, {{"x", 0, 0}, {"y", 0, 0}});
  trunc.truncation = 1;
  const auto t = PathAlgebra::build(trunc, 4);
  GradedModule chain(t, 0, {{0}, {0}, {0}});
  chain.set_action(0, 0, Matrix::Constant(1, 1, 1));
  chain.set_action(1, 1, Matrix::Constant(1, 1, 1));
  CHECK_FALSE(chain.validate().ok());
}

TEST_CASE("vertex idempotents are enforced") {
  const auto alg = free_algebra(Quiver(2, {{"a", 0, 1}}), 3);
  GradedModule m(alg, 0, {{0}, {0}});
  m.set_action(0, 0, Matrix::Constant(1, 1, 1));
  CHECK_FALSE(m.validate().ok());
}

TEST_CASE("element actions equal products of arrow actions") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alg = free_algebra(random_quiver(rng, 2, 3), 5);
    auto m = random_graded_data(rng, alg, 0, 4, 3);
    REQUIRE(m.validate().ok());
    ActionTable table(m);
    for (int t = 0; t <= 3; ++t) {
      for (int d = 0; d + t <= 4; ++d) {
        const Matrix& e = table.element(d, t);
        for (int b = 0; b < alg->dim(t); ++b) {
          const Path& p = alg->basis_path(t, b);
          Matrix prod = Matrix::Identity(m.dim(d), m.dim(d));
          if (t == 0) {
            for (int i = 0; i < m.dim(d); ++i) prod(i, i) = m.labels(d)[static_cast<std::size_t>(i)] == p.vertex;
          }
          for (int k = 0; k < t; ++k) prod = multiply(m.action(p.arrows[static_cast<std::size_t>(k)], d + k), prod, m.field());
          for (int i = 0; i < m.dim(d); ++i) CHECK(e.col(static_cast<Index>(i) * alg->dim(t) + b) == prod.col(i));
        }
      }
    }
  }
}

TEST_CASE("free modules satisfy the Yoneda count and sub/quotient bookkeeping") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alg = free_algebra(random_quiver(rng, 2, 3), 5);
    auto m = random_graded_data(rng, alg, 0, 3, 3);
    REQUIRE(m.validate().ok());
    const int v = uniform_int(rng, 0, alg->vertex_count() - 1);
    const auto f = free_module(alg, v, 0, 3);
    CHECK(f.validated());
    int expect = 0;
    for (int l : m.labels(0)) expect += l == v;
    CHECK(static_cast<int>(hom_space(f, m).size()) == expect);

    const auto rad = radical(m);
    GradedMorphism inc, proj;
    const auto sub = submodule(m, rad, &inc);
    const auto quo = quotient(m, rad, &proj);
    CHECK(is_morphism(inc, sub, m));
    CHECK(is_morphism(proj, m, quo));
    for (int d = m.lo(); d <= m.hi(); ++d) {
      CHECK(sub.dim(d) + quo.dim(d) == m.dim(d));
      if (m.dim(d) > 0) CHECK(multiply(proj.components.at(d), inc.components.at(d), m.field()).isZero());
    }
    // The quotient by the radical is semisimple.
    for (const auto& [d, s] : radical(quo)) CHECK(s.is_zero());
  }
}

TEST_CASE("conjugated modules are isomorphic and differently sized ones are not") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alg = free_algebra(random_quiver(rng, 2, 2), 4);
    auto m = random_graded_data(rng, alg, 0, 2, 2);
    REQUIRE(m.validate().ok());
    const auto c = random_conjugate(rng, m);
    CHECK(isomorphic(m, c));
    CHECK(isomorphic(direct_sum({m, c}), direct_sum({c, m})));
    if (!m.is_zero()) CHECK_FALSE(isomorphic(m, direct_sum({m, m})));
  }
}

TEST_CASE("support-restricted algebra relations are enforced through generic syzygies") {
  const auto lambda = PathAlgebra::build(loop_power(3), 6);
  const auto u = restrict_support(build_dual(*lambda, 8));
  // Degree 0 through 4 with x (degree 1) and X (degree 3): need (m X) x = (m x) X.
  GradedModule m(u, 0, {{0}, {0}, {}, {0}, {0}});
  m.set_action(0, 0, Matrix::Constant(1, 1, 1));
  m.set_action(1, 0, Matrix::Constant(1, 1, 1));
  m.set_action(1, 1, Matrix::Constant(1, 1, 1));
  m.set_action(0, 3, Matrix::Constant(1, 1, 2));
  CHECK_FALSE(m.validate().ok());
  m.set_action(0, 3, Matrix::Constant(1, 1, 1));
  CHECK(m.validate().ok());
  const auto f = free_module(u, 0, 0, 7);
  auto copy = f;
  CHECK(copy.validate().ok());
}
