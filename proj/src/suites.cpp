#include "nkoszul/suites.hpp"

#include <functional>
#include <stdexcept>

#include "nkoszul/generators.hpp"
#include "nkoszul/koszul.hpp"

namespace nkoszul {

namespace {

constexpr std::size_t kPathBudget = 4096;

struct Outcome {
  enum class Kind { kPass, kFail, kSkip } kind = Kind::kPass;
  std::string failure;
  std::vector<std::string> tags;
};

Outcome fail(std::string why) { return {Outcome::Kind::kFail, std::move(why), {}}; }
Outcome skip() { return {Outcome::Kind::kSkip, {}, {}}; }

using Setup = std::function<InputDocument(Rng&, int, const SuiteOptions&)>;
// Adds the modules under test; false means the draw is unusable.
using Populate = std::function<bool(Rng&, AlgebraContext&, InputDocument&, int)>;
using Check = std::function<Outcome(AlgebraContext&, const InputDocument&, const SuiteOptions&)>;

struct Suite {
  std::string name;
  Setup setup;
  Populate populate;
  Check check;
};

InputDocument document(Presentation pres, int hi, TorsionParams params) {
  InputDocument d;
  d.pres = std::move(pres);
  d.window_lo = 0;
  d.window_hi = hi;
  d.params = params;
  return d;
}

Presentation pick(const SuiteOptions& o, Presentation fallback) { return o.input ? o.input->pres : fallback; }

TorsionParams pick(const SuiteOptions& o, const Presentation& pres, TorsionParams fallback) {
  if (o.input) return TorsionParams{pres.n, o.input->params.r, o.input->params.m};
  fallback.n = pres.n;
  return fallback;
}

Presentation bounded_random(Rng& rng, const PrimeField& f, std::vector<int> n_choices) {
  RandomPresentationOptions opts;
  opts.max_vertices = 2;
  opts.max_arrows = 3;
  opts.n_choices = std::move(n_choices);
  opts.truncate = true;
  return random_presentation(rng, f, opts);
}

GradedModule load(AlgebraContext& ctx, const InputDocument& d, const std::string& name) {
  if (!d.modules.contains(name)) throw InputError("/modules", "missing module \"" + name + "\"");
  return module_from_json(d.modules.at(name), ctx, "/modules/" + name);
}

bool outside_S(const GradedModule& m, const TorsionParams& params) {
  for (int d : support(m))
    if (params.in_S(d)) return false;
  return true;
}

bool inside_S(const GradedModule& m, const TorsionParams& params) {
  for (int d : support(m))
    if (!params.in_S(d)) return false;
  return true;
}

int valid_r(Rng& rng, int n) {
  std::vector<int> rs;
  for (int r = 0; 2 * r < n || (n == 2 && r == 1); ++r) rs.push_back(r);
  return rs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(rs.size()) - 1))];
}

std::shared_ptr<const PathAlgebra> bounded_lambda(AlgebraContext& ctx) {
  const auto lambda = ctx.lambda();
  if (!lambda->bounded()) throw WindowError("Λ is not finite dimensional within the window");
  return lambda;
}

// Hom(D(Λ)[j], -) inside in_G_star grows with dim Λ times the term, so the
// random ν/Ψ suites stay on small algebras.
constexpr int kSmallAlgebra = 64;

bool small(AlgebraContext& ctx) {
  const auto lambda = ctx.lambda();
  if (!lambda->bounded()) return false;
  int total = 0;
  for (int t = 0; t <= lambda->top(); ++t) total += lambda->dim(t);
  return total <= kSmallAlgebra;
}

// ---------------------------------------------------------------------------

Suite prop21() {
  Suite s;
  s.name = "prop21";
  s.setup = [](Rng& rng, int, const SuiteOptions& o) {
    RandomPresentationOptions opts;
    opts.truncate = false;
    const auto pres = pick(o, random_presentation(rng, o.field, opts));
    return document(pres, pres.n, TorsionParams{pres.n, 1, 0});
  };
  s.populate = [](Rng&, AlgebraContext&, InputDocument&, int) { return true; };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions&) {
    const auto lambda = ctx.lambda();
    const PrimeField& f = lambda->field();
    const int n = d.pres.n;
    const Subspace gram = compute_orthogonal(*lambda);
    const DualData data = compute_orthogonal_via_ordering(*lambda);
    const auto words = enumerate_paths(lambda->quiver().opposite(), n);
    std::map<Path, Index> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<Index>(i);
    Matrix rows = Matrix::Zero(static_cast<Index>(data.h_basis.size()), static_cast<Index>(words.size()));
    for (std::size_t i = 0; i < data.h_basis.size(); ++i)
      for (const auto& [p, c] : data.h_basis[i].terms) rows(static_cast<Index>(i), index.at(p)) = c;
    if (!(Subspace::from_rows(rows, f) == gram)) return fail("span of h_i differs from the pairing orthogonal");
    if (gram.dim() != lambda->dim(n)) return fail("dim I_n^⊥ differs from dim Λ_n");
    return Outcome{};
  };
  return s;
}

Suite prop22() {
  Suite s;
  s.name = "prop22";
  s.setup = [](Rng& rng, int, const SuiteOptions& o) {
    const auto pres = pick(o, bounded_random(rng, o.field, {2, 3}));
    return document(pres, 3 * pres.n, TorsionParams{pres.n, 1, 0});
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int trial) {
    if (!small(ctx)) return false;
    const int n = d.pres.n;
    GradedModule m = random_graded_data(rng, ctx.free_op(), 0, 3 * n, 2, 0.6);
    if (!m.validate().ok()) return false;
    if (trial % 3 == 0) m = kill_orthogonal(m, *bounded_lambda(ctx));
    if (m.is_zero()) return false;
    d.modules["M"] = module_to_json(m, "free_op");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions& o) {
    const auto lambda = bounded_lambda(ctx);
    const int n = d.pres.n;
    const auto m = load(ctx, d, "M");
    const bool expected = annihilates_orthogonal(m, *lambda);
    const auto p = psi(m, lambda);
    const auto v = nu(m, lambda, false, o.nu_variant);
    if (is_n_complex(p, n) != expected) return fail("Ψ(M) n-complex verdict disagrees with M·I_n^⊥ = 0");
    if (is_n_complex(v, n) != expected) return fail("ν(M) n-complex verdict disagrees with M·I_n^⊥ = 0");
    if (!differentials_are_morphisms(p) || !differentials_are_morphisms(v)) return fail("a differential is not Λ-linear");
    Outcome out;
    out.tags.push_back(expected ? "annihilated" : "not_annihilated");
    return out;
  };
  return s;
}

Suite lemma31() {
  Suite s;
  s.name = "lemma31";
  s.setup = [](Rng& rng, int trial, const SuiteOptions& o) {
    static const std::vector<TorsionParams> cycle{{3, 1, 0}, {3, 1, 2}, {4, 1, 0}, {4, 1, 1}, {2, 1, 0}};
    const auto& p = cycle[static_cast<std::size_t>(trial) % cycle.size()];
    RandomPresentationOptions opts;
    opts.n_choices = {p.n};
    const auto pres = pick(o, random_presentation(rng, o.field, opts));
    return document(pres, 5, pick(o, pres, p));
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int) {
    const auto m = random_quotient_module(rng, ctx.dual(), {0, 1, 2}, 5, 3, 3);
    if (m.is_zero()) return false;
    d.modules["M"] = module_to_json(m, "dual");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions&) {
    const auto m = load(ctx, d, "M");
    const auto t = torsion_submodule(m, d.params);
    bool zero = true;
    for (int k = m.lo(); k <= m.hi(); ++k) zero = zero && part(t, m, k).is_zero();
    if (is_torsionfree(m, d.params) != zero) return fail("is_torsionfree disagrees with the torsion submodule");
    Outcome out;
    out.tags.push_back(zero ? "torsionfree" : "torsion");
    return out;
  };
  return s;
}

Suite lemma32() {
  Suite s;
  s.name = "lemma32";
  s.setup = [](Rng& rng, int, const SuiteOptions& o) {
    const auto pres = pick(o, bounded_random(rng, o.field, {2, 3, 4}));
    const int r = valid_r(rng, pres.n);
    return document(pres, 2 * pres.n + 2, pick(o, pres, TorsionParams{pres.n, r, uniform_int(rng, 0, 1)}));
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int) {
    if (!small(ctx)) return false;
    const int n = d.pres.n;
    const auto dual = ctx.dual();
    const auto m = uniform_int(rng, 0, 2) == 0
                       ? simple_module(dual, uniform_int(rng, 0, dual->vertex_count() - 1), uniform_int(rng, 0, 2 * n))
                       : random_quotient_module(rng, dual, {0, 1, 2, n, n + 1}, 2 * n + 2, 2, 3);
    if (m.is_zero() || m.total_dim() > 14) return false;
    d.modules["M"] = module_to_json(m, "dual");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions& o) {
    const auto lambda = bounded_lambda(ctx);
    const auto m = load(ctx, d, "M");
    const auto c = nu(m, lambda, false, o.nu_variant);
    const bool g = in_G(m, d.params);
    if (g != in_G_star(c, d.params)) return fail("in_G(M) disagrees with in_G_star(ν(M))");
    const bool t = outside_S(m, d.params);
    if (t != in_T_star(c, d.params)) return fail("M in T_S disagrees with in_T_star(ν(M))");
    Outcome out;
    out.tags.push_back(g ? "in_G" : "not_in_G");
    out.tags.push_back(t ? "in_T" : "not_in_T");
    return out;
  };
  return s;
}

Suite prop42() {
  Suite s;
  s.name = "prop42";
  s.setup = [](Rng& rng, int, const SuiteOptions& o) {
    const auto pres = pick(o, bounded_random(rng, o.field, {3}));
    return document(pres, 2 * pres.n + 1, pick(o, pres, TorsionParams{pres.n, 1, uniform_int(rng, 0, 1)}));
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int) {
    if (!small(ctx)) return false;
    const int n = d.pres.n;
    const auto m = random_quotient_module(rng, ctx.dual(), {0, 1, n}, 2 * n + 1, 2, 3);
    if (m.is_zero() || m.total_dim() > 20) return false;
    d.modules["M"] = module_to_json(m, "dual");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions& o) {
    const auto lambda = bounded_lambda(ctx);
    const int n = d.pres.n;
    const auto m = load(ctx, d, "M");
    const auto v = nu(m, lambda, false, o.nu_variant);
    const auto h = contract_H(v, n, d.params.m);
    if (!is_n_complex(h, 2) || !differentials_are_morphisms(h)) return fail("H_m(ν(M)) is not a complex of Λ-modules");
    if (h.is_zero() != in_T_star(v, d.params)) return fail("H_m(ν(M)) = 0 disagrees with in_T_star(ν(M))");
    const auto g = contract_G(psi(m, lambda), n, d.params.m);
    if (!is_n_complex(g, 2) || !differentials_are_morphisms(g)) return fail("G_m(Ψ(M)) is not a complex of Λ-modules");
    Outcome out;
    out.tags.push_back(h.is_zero() ? "H_zero" : "H_nonzero");
    return out;
  };
  return s;
}

Presentation corpus_loops(int trial, const PrimeField& f) {
  return truncated_presentation(loop_quiver(trial % 3 == 2 ? 1 : 2), 3, f);
}

Suite thm43() {
  Suite s;
  s.name = "thm43";
  s.setup = [](Rng&, int trial, const SuiteOptions& o) {
    const auto pres = pick(o, corpus_loops(trial, o.field));
    const auto params = pick(o, pres, TorsionParams{pres.n, 1, (trial / 3) % 2});
    return document(pres, params.m + 3 * pres.n + 2, params);
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int) {
    const int m0 = d.params.m;
    const auto x = random_l_module(rng, ctx.support(), m0, 3, 2);
    const auto y = uniform_int(rng, 0, 1) == 0 ? x : random_l_module(rng, ctx.support(), m0, 3, 2);
    d.modules["X"] = module_to_json(x, "support");
    d.modules["Y"] = module_to_json(y, "support");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions&) {
    const auto lambda = bounded_lambda(ctx);
    const auto u = ctx.support();
    const auto& params = d.params;
    const auto x = load(ctx, d, "X");
    const auto y = load(ctx, d, "Y");
    if (!in_L(x, params) || !in_L(y, params)) return skip();
    const auto cx = equivalence_F(x, lambda, params);
    const auto cy = equivalence_F(y, lambda, params);
    if (hom_space(x, y).size() != hom_complexes(cx, cy).size()) return fail("dim Hom(X, X') differs from dim Hom(F X, F X')");
    if (!isomorphic(extract_module(cx, u, params), x)) return fail("extract_module(F(X)) is not isomorphic to X");
    const auto report = in_Y(cx, u, params);
    if (!report.verdict || !report.witness) return fail("in_Y rejects F(X): " + report.reason);
    if (!isomorphic(*report.witness, x)) return fail("the in_Y witness is not isomorphic to X");
    if (!iso_complexes(equivalence_F(*report.witness, lambda, params), cx)) return fail("F(extract_module(c)) is not isomorphic to c");
    Outcome out;
    if (d.pres.quiver.arrow_count() == 2) out.tags.push_back("two_loop");
    // Condition (a): the only term is cogenerated in the wrong degree.
    if (in_Y(stalk(coinduced(lambda, {0}, params.m + 2, lambda->top()), 0, 2), u, params).verdict)
      return fail("in_Y accepts a stalk cogenerated off degree -m");
    out.tags.push_back("control_a");
    // Condition (b): with d^0 = 0 the socle of the first odd term is missed.
    if (!cx.term(1).is_zero()) {
      GradedComplex bad = cx;
      bad.set_diff(0, GradedMorphism{});
      if (in_Y(bad, u, params).verdict) return fail("in_Y accepts F(X) with the differential d^0 zeroed");
      out.tags.push_back("control_b");
    }
    return out;
  };
  return s;
}

Suite remark44() {
  Suite s;
  s.name = "remark44";
  s.setup = [](Rng& rng, int, const SuiteOptions& o) {
    const auto pres = pick(o, bounded_random(rng, o.field, {2, 3}));
    return document(pres, 2 * pres.n + 1, TorsionParams{pres.n, 1, 0});
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int) {
    if (!small(ctx)) return false;
    const auto m = random_quotient_module(rng, ctx.dual(), {0, 1}, d.pres.n + 1, 2, 2);
    if (m.is_zero()) return false;
    d.modules["M"] = module_to_json(m, "dual");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions& o) {
    const auto lambda = bounded_lambda(ctx);
    const auto m = load(ctx, d, "M");
    const auto side = opposite_side(lambda);
    const auto lhs = dual_complex(nu(m, lambda, false, o.nu_variant), side.to_op);
    const auto rhs = psi(graded_dual(m), side.lambda_op);
    if (!iso_complexes(lhs, rhs)) return fail("D(ν(M)) is not isomorphic to Ψ(D(M))");
    return Outcome{};
  };
  return s;
}

Suite thm46() {
  Suite s;
  s.name = "thm46";
  s.setup = [](Rng&, int trial, const SuiteOptions& o) {
    const auto pres = pick(o, corpus_loops(trial, o.field));
    const auto params = pick(o, pres, TorsionParams{pres.n, 1, (trial / 2) % 2});
    return document(pres, params.m + 2 * pres.n + 2, params);
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int trial) {
    const int m0 = d.params.m, n = d.pres.n;
    const auto u = ctx.support();
    const auto x = trial % 2 == 0 ? random_l_module(rng, u, m0, 2, 2)
                                  : random_quotient_module(rng, u, {m0, m0, m0 + 1, m0 + n}, m0 + 2 * n + 1, 3, 3);
    if (x.is_zero() || !inside_S(x, d.params)) return false;
    d.modules["X"] = module_to_json(x, "support");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions&) {
    const auto lambda = bounded_lambda(ctx);
    const auto x = load(ctx, d, "X");
    bool l = false;
    try {
      l = in_L(x, d.params);
    } catch (const std::invalid_argument&) {
      return skip();
    }
    const auto dx = graded_dual(x);
    if (l != in_Lo(dx, d.params)) return fail("in_Lo(D X) disagrees with in_L(X)");
    Outcome out;
    out.tags.push_back(l ? "in_L" : "not_in_L");
    if (!l) return out;
    const auto c = equivalence_F_dual(dx, lambda, d.params);
    std::string why;
    if (!is_n_complex(c, 2)) return fail("F°(D X) is not a complex");
    if (!projective_conditions(c, d.params, &why)) return fail("F°(D X) violates the projective conditions: " + why);
    return out;
  };
  return s;
}

// Free modules on even generators modulo even-degree relations; a whole even
// degree is sometimes killed so that the cut at `top` adds nothing.
GradedModule even_quotient(Rng& rng, const std::shared_ptr<const GradedAlgebra>& e, int top) {
  const PrimeField& f = e->field();
  std::vector<GradedModule> parts;
  const int count = uniform_int(rng, 1, 2);
  for (int i = 0; i < count; ++i) parts.push_back(free_module(e, uniform_int(rng, 0, e->vertex_count() - 1), 2 * uniform_int(rng, 0, 1), top));
  const GradedModule sum = direct_sum(parts);
  DegreewiseSubspaces seeds;
  for (int d = sum.lo(); d <= sum.hi(); ++d) {
    if (d % 2 != 0 || sum.dim(d) == 0 || uniform_int(rng, 0, 1) == 0) continue;
    if (d > 0 && uniform_int(rng, 0, 1) == 0) {
      seeds[d] = Subspace::full(sum.dim(d));
      continue;
    }
    const auto& labels = sum.labels(d);
    const int v = labels[static_cast<std::size_t>(uniform_int(rng, 0, sum.dim(d) - 1))];
    Matrix row = Matrix::Zero(1, sum.dim(d));
    for (int i = 0; i < sum.dim(d); ++i)
      if (labels[static_cast<std::size_t>(i)] == v) row(0, i) = uniform_int(rng, 0, static_cast<int>(f.modulus()) - 1);
    seeds[d] = Subspace::from_rows(row, f);
  }
  return quotient(sum, generated_submodule(sum, seeds)).trimmed();
}

Suite cor47() {
  Suite s;
  s.name = "cor47";
  s.setup = [](Rng& rng, int trial, const SuiteOptions& o) {
    if (trial % 4 < 2) {
      const auto pres = pick(o, truncated_presentation(loop_quiver(trial % 4 + 1), 3, o.field));
      return document(pres, 10, TorsionParams{pres.n, 1, 0});
    }
    RandomPresentationOptions opts;
    opts.n_choices = {3, 4};
    opts.max_arrows = 3;
    const auto pres = pick(o, random_presentation(rng, o.field, opts));
    return document(pres, 2 * pres.n + 1, TorsionParams{pres.n, 1, 0});
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int trial) {
    const auto e = ctx.yoneda();
    const int top = std::min(4, e->top() - 2);
    if (top < 0) return false;
    const auto v = (trial / 4) % 2 == 0 ? even_quotient(rng, e, top) : random_quotient_module(rng, e, {0, 1, 1, 2}, top, 3, 3);
    if (v.is_zero()) return false;
    d.modules["V"] = module_to_json(v, "yoneda");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions&) {
    const auto lambda = ctx.lambda();
    const auto dual = ctx.dual();
    const auto e = ctx.yoneda();
    const int n = d.pres.n;
    Outcome out;
    // With I_n = KQ_n nothing is killed in Λ^!.
    if (compute_orthogonal(*lambda).is_zero()) {
      for (int k = 0; k <= std::min(8, dual->top()); ++k)
        if (dual->dim(k) != count_paths(dual->quiver(), k)) return fail("dim Λ^!_k differs from the path count");
      out.tags.push_back("free_dual");
    }
    const DegreeMap delta{0, n};
    for (int j = 0; j <= 5 && delta(j) <= dual->top() && j <= e->top(); ++j)
      if (e->dim(j) != dual->dim(delta(j))) return fail("dim E_j differs from dim Λ^!_δ(j)");
    const auto v = load(ctx, d, "V");
    const DegreeSet even = [](int j) { return j % 2 == 0; };
    const bool pe = presented_in_degrees(v, even);
    const bool le = in_L_E(v);
    if (pe && !le) return fail("an E-module presented in even degrees is not in L_E");
    if (pe) out.tags.push_back("presented_even");
    if (!le) out.tags.push_back("not_in_L_E");
    return out;
  };
  return s;
}

// The window sets the bound: 2 per multiple of n, at most 6.
struct KoszulCase {
  Presentation pres;
  int hi;
};

KoszulCase koszul_case(int trial, const PrimeField& f) {
  switch (trial % 5) {
    case 0: return {truncated_presentation(loop_quiver(1), 3, f), 9};
    case 1: return {truncated_presentation(loop_quiver(2), 3, f), 9};
    case 2: return {truncated_presentation(Quiver(2, {{"a", 0, 1}, {"b", 1, 0}, {"c", 0, 0}}), 3, f), 9};
    case 3: return {commutative_plane(f), 8};
    default: return {truncated_presentation(loop_quiver(2), 4, f), 8};
  }
}

Suite koszul() {
  Suite s;
  s.name = "koszul";
  s.setup = [](Rng&, int trial, const SuiteOptions& o) {
    if (o.input) return document(o.input->pres, std::max(o.input->window_hi, o.input->pres.n), TorsionParams{o.input->pres.n, 1, 0});
    const auto c = koszul_case(trial, o.field);
    return document(c.pres, c.hi, TorsionParams{c.pres.n, 1, 0});
  };
  s.populate = [](Rng& rng, AlgebraContext& ctx, InputDocument& d, int) {
    const auto lambda = ctx.lambda();
    if (!lambda->bounded()) return true;
    const auto m = random_quotient_module(rng, lambda, {0, 1}, lambda->top() + 1, 1, 2);
    if (!m.is_zero() && m.total_dim() <= 12) d.modules["M"] = module_to_json(m, "lambda");
    return true;
  };
  s.check = [](AlgebraContext& ctx, const InputDocument& d, const SuiteOptions& o) {
    const auto lambda = ctx.lambda();
    const int n = d.pres.n;
    const int bound = std::min(6, 2 * (d.window_hi / n));
    Outcome out;
    const auto report = n_koszul_report(lambda, bound);
    out.tags.push_back(report.verdict ? "koszul" : "not_koszul");
    if (!o.input && !report.verdict) return fail("a corpus algebra is not n-Koszul up to the bound");
    if (report.verdict) {
      const auto dual = build_dual(*lambda, DegreeMap{0, n}(bound));
      const auto ext = ext_dims(lambda, bound);
      const auto expected = dual_dims(*dual, bound);
      for (int j = 0; j <= bound; ++j)
        if (ext[static_cast<std::size_t>(j)] != expected[static_cast<std::size_t>(j)]) return fail("Ext dimensions differ from dim Λ^!_δ(j)");
    }
    if (!check_resolution(minimal_projective_resolution(degree_zero_part(lambda), std::min(bound, 3))))
      return fail("the resolution of Λ_0 is not exact and minimal");
    if (d.modules.contains("M")) {
      const auto m = load(ctx, d, "M");
      if (!check_resolution(minimal_projective_resolution(m, 2))) return fail("the resolution of M is not exact and minimal");
    }
    // The baseline builds Λ^! through δ(4) + n + 1, affordable only for n <= 3.
    if (lambda->bounded() && n <= 3) {
      const auto simple = simple_module(lambda, 0, 0);
      if (is_n_cokoszul(simple, 3)) out.tags.push_back(is_H0_liftable_resolution(simple, 3) ? "simple_liftable" : "simple_not_liftable");
    }
    return out;
  };
  return s;
}

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites{prop21(), prop22(), lemma31(), lemma32(), prop42(),
                                         thm43(),  remark44(), thm46(), cor47(),  koszul()};
  return suites;
}

Outcome run_check(const Suite& s, const InputDocument& d, const SuiteOptions& o) {
  AlgebraContext ctx(d.pres, d.window_hi, kPathBudget);
  try {
    return s.check(ctx, d, o);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

GradedModule drop_top(const GradedModule& m) {
  DegreewiseSubspaces s{{m.hi(), Subspace::full(m.dim(m.hi()))}};
  return quotient(m, s).trimmed();
}

GradedModule drop_bottom(const GradedModule& m) {
  DegreewiseSubspaces s;
  for (int d = m.lo() + 1; d <= m.hi(); ++d) s[d] = Subspace::full(m.dim(d));
  return submodule(m, s).trimmed();
}

// Greedy: keep any one-degree cut that still fails the same way.
InputDocument shrink(const Suite& s, InputDocument doc, const SuiteOptions& o, const std::string& failure) {
  for (int round = 0; round < 64; ++round) {
    bool progress = false;
    std::vector<std::string> names;
    for (const auto& [name, j] : doc.modules.items()) names.push_back(name);
    for (const auto& name : names) {
      AlgebraContext ctx(doc.pres, doc.window_hi, kPathBudget);
      const std::string over = doc.modules[name].value("over", "dual");
      const GradedModule m = module_from_json(doc.modules[name], ctx, "/modules/" + name);
      if (m.is_zero()) continue;
      for (const auto& cut : {drop_top(m), drop_bottom(m)}) {
        if (cut.is_zero() || cut.total_dim() >= m.total_dim()) continue;
        InputDocument candidate = doc;
        candidate.modules[name] = module_to_json(cut, over);
        const Outcome r = run_check(s, candidate, o);
        if (r.kind == Outcome::Kind::kFail && r.failure == failure) {
          doc = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
    if (!progress) break;
  }
  return doc;
}

void record(SuiteResult& out, const Outcome& r) {
  if (r.kind == Outcome::Kind::kSkip) {
    ++out.skipped;
    return;
  }
  ++out.checked;
  for (const auto& t : r.tags) out.stats[t] = out.stats.value(t, 0) + 1;
}

Json counterexample(const std::string& suite, const InputDocument& doc, const std::string& failure) {
  Json j = document_to_json(doc);
  j["suite"] = suite;
  j["failure"] = failure;
  return j;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  const Suite* suite = nullptr;
  for (const auto& s : registry())
    if (s.name == name) suite = &s;
  if (!suite) throw std::invalid_argument("unknown suite \"" + name + "\"");
  SuiteResult out;
  out.suite = name;

  if (opts.input && !opts.input->modules.empty()) {
    out.trials = 1;
    const Outcome r = run_check(*suite, *opts.input, opts);
    record(out, r);
    if (r.kind == Outcome::Kind::kFail) {
      out.failure = r.failure;
      out.counterexample = counterexample(name, *opts.input, r.failure);
    }
    return out;
  }

  Rng rng(opts.seed);
  for (int trial = 0; trial < opts.trials; ++trial) {
    ++out.trials;
    InputDocument doc = suite->setup(rng, trial, opts);
    bool usable = false;
    {
      AlgebraContext ctx(doc.pres, doc.window_hi, kPathBudget);
      try {
        usable = suite->populate(rng, ctx, doc, trial);
      } catch (const std::runtime_error&) {
        usable = false;
      }
    }
    if (!usable) {
      ++out.skipped;
      continue;
    }
    const Outcome r = run_check(*suite, doc, opts);
    record(out, r);
    if (r.kind == Outcome::Kind::kFail) {
      out.failure = "trial " + std::to_string(trial) + ": " + r.failure;
      out.counterexample = counterexample(name, shrink(*suite, doc, opts, r.failure), r.failure);
      break;
    }
  }
  return out;
}

}  // namespace nkoszul
