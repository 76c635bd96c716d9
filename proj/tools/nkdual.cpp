// nkdual: duals, functors, contractions, predicates and property suites from JSON input.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nkoszul/generators.hpp"
#include "nkoszul/io.hpp"
#include "nkoszul/koszul.hpp"
#include "nkoszul/suites.hpp"

using namespace nkoszul;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

struct Common {
  std::string input;
  std::optional<Scalar> modulus;
  std::vector<int> window;
  std::optional<int> m;
  std::optional<int> r;
  std::string report;
  bool allow_windowed = false;
};

struct Loaded {
  InputDocument doc;
  std::unique_ptr<AlgebraContext> ctx;
};

Loaded load(const Common& c) {
  Loaded out;
  out.doc = load_document(c.input, c.modulus);
  if (!c.window.empty()) {
    if (c.window[0] > c.window[1]) throw InputError("--window", "lo exceeds hi");
    out.doc.window_lo = c.window[0];
    out.doc.window_hi = c.window[1];
  }
  if (c.m) out.doc.params.m = *c.m;
  if (c.r) out.doc.params.r = *c.r;
  out.ctx = std::make_unique<AlgebraContext>(out.doc.pres, out.doc.window_hi);
  return out;
}

void require_r1(const InputDocument& d) {
  if (d.params.r != 1) throw InputError("/r", "r != 1 is accepted only by the torsion predicates");
}

std::shared_ptr<const PathAlgebra> finite_lambda(Loaded& l, bool allow_windowed) {
  const auto lambda = l.ctx->lambda();
  if (!lambda->bounded() && !allow_windowed)
    throw WindowError("Λ is not finite dimensional within the window; pass --allow-windowed-dual to use the truncated D(Λ)");
  return lambda;
}

Json named_module(Loaded& l, const std::string& name) {
  if (!l.doc.modules.contains(name)) throw InputError("/modules", "no module named \"" + name + "\"");
  return l.doc.modules.at(name);
}

GradedModule module_named(Loaded& l, const std::string& name) {
  return module_from_json(named_module(l, name), *l.ctx, "/modules/" + name);
}

GradedComplex complex_named(Loaded& l, const std::string& name) {
  if (!l.doc.complexes.contains(name)) throw InputError("/complexes", "no complex named \"" + name + "\"");
  return complex_from_json(l.doc.complexes.at(name), *l.ctx, "/complexes/" + name);
}

Json params_json(const TorsionParams& p) { return Json{{"n", p.n}, {"r", p.r}, {"m", p.m}}; }

Json dims_table(const GradedAlgebra& a, int hi) {
  Json rows = Json::array();
  const int last = std::min(hi, a.top());
  for (int t = 0; t <= last; ++t) {
    std::vector<std::vector<int>> by(static_cast<std::size_t>(a.vertex_count()), std::vector<int>(static_cast<std::size_t>(a.vertex_count()), 0));
    for (int b = 0; b < a.dim(t); ++b) ++by[static_cast<std::size_t>(a.sources(t)[static_cast<std::size_t>(b)])][static_cast<std::size_t>(a.targets(t)[static_cast<std::size_t>(b)])];
    rows.push_back(Json{{"degree", t}, {"dim", a.dim(t)}, {"by_vertex", by}});
  }
  return Json{{"top", a.top()}, {"bounded", a.bounded()}, {"slices", rows}};
}

Json combination_json(const Quiver& q, const PathCombination& c) {
  Json out = Json::object();
  for (const auto& [p, s] : c.terms) out[to_string(q, p)] = s;
  return out;
}

// ---------------------------------------------------------------------------

int cmd_dual(const Common& c, Json& report) {
  Loaded l = load(c);
  const auto lambda = l.ctx->lambda();
  const int n = l.doc.pres.n;
  const Quiver qop = lambda->quiver().opposite();
  const Subspace gram = compute_orthogonal(*lambda);
  const DualData data = compute_orthogonal_via_ordering(*lambda);
  const auto words = enumerate_paths(qop, n);
  Json gram_basis = Json::array();
  for (Index i = 0; i < gram.dim(); ++i) {
    PathCombination h{n, {}};
    for (std::size_t p = 0; p < words.size(); ++p) h.add(words[p], gram.basis()(i, static_cast<Index>(p)), lambda->field());
    gram_basis.push_back(combination_json(qop, h));
  }
  Json ordering_basis = Json::array();
  for (const auto& h : data.h_basis) ordering_basis.push_back(combination_json(qop, h));
  const bool agree = gram == data.orthogonal;
  report["orthogonal"] = Json{{"pairing_kernel", gram_basis}, {"ordering", ordering_basis}, {"agree", agree}};
  const int hi = l.doc.window_hi;
  report["lambda"] = dims_table(*lambda, hi);
  report["dual"] = dims_table(*l.ctx->dual(), hi);
  report["support"] = dims_table(*l.ctx->support(), hi);
  report["yoneda"] = dims_table(*l.ctx->yoneda(), hi);
  return agree ? kOk : kVerificationFailure;
}

int cmd_functor(const Common& c, const std::string& which, const std::string& name, Json& report) {
  Loaded l = load(c);
  require_r1(l.doc);
  if (which != "psi" && which != "nu") throw InputError("--which", "expected psi or nu");
  const auto lambda = finite_lambda(l, c.allow_windowed);
  const auto m = module_named(l, name);
  const int n = l.doc.pres.n;
  const GradedComplex out = which == "psi" ? psi(m, lambda, c.allow_windowed) : nu(m, lambda, c.allow_windowed);
  const bool complex = is_n_complex(out, n);
  const bool oracle = annihilates_orthogonal(m, *lambda);
  report["which"] = which;
  report["module"] = name;
  report["is_n_complex"] = complex;
  report["annihilates_orthogonal"] = oracle;
  report["agree"] = complex == oracle;
  report["complex"] = complex_to_json(out);
  return complex == oracle ? kOk : kVerificationFailure;
}

int cmd_contract(const Common& c, const std::string& cname, const std::string& mname, const std::string& direction, Json& report) {
  Loaded l = load(c);
  require_r1(l.doc);
  if (direction != "H" && direction != "G") throw InputError("--direction", "expected H or G");
  if (cname.empty() == mname.empty()) throw InputError("--complex", "give exactly one of --complex and --module");
  const int n = l.doc.pres.n;
  GradedComplex source;
  if (!cname.empty()) {
    source = complex_named(l, cname);
  } else {
    const auto lambda = finite_lambda(l, c.allow_windowed);
    const auto m = module_named(l, mname);
    source = direction == "H" ? nu(m, lambda, c.allow_windowed) : psi(m, lambda, c.allow_windowed);
  }
  if (!is_n_complex(source, n)) throw InputError(cname.empty() ? "/modules/" + mname : "/complexes/" + cname, "not an n-complex");
  const GradedComplex out = direction == "H" ? contract_H(source, n, l.doc.params.m) : contract_G(source, n, l.doc.params.m);
  const bool d2 = is_n_complex(out, 2) && differentials_are_morphisms(out);
  report["direction"] = direction;
  report["m"] = l.doc.params.m;
  report["d_squared_zero"] = d2;
  bool consistent = true;
  if (direction == "H") {
    const bool t = in_T_star(source, l.doc.params);
    report["source_in_T_star"] = t;
    report["contracted_zero"] = out.is_zero();
    consistent = t == out.is_zero();
  }
  report["complex"] = complex_to_json(out);
  return d2 && consistent ? kOk : kVerificationFailure;
}

const std::set<std::string> kTorsionPredicates{"is_torsionfree", "in_G", "in_G_star", "in_T_star"};

int cmd_check(const Common& c, const std::string& predicate, const std::string& object, Json& report) {
  Loaded l = load(c);
  if (!kTorsionPredicates.count(predicate)) require_r1(l.doc);
  const TorsionParams& p = l.doc.params;
  report["predicate"] = predicate;
  report["object"] = object;
  report["params"] = params_json(p);
  const auto module_verdict = [&](const std::function<bool(const GradedModule&)>& f) { report["verdict"] = f(module_named(l, object)); };
  const auto complex_verdict = [&](const std::function<bool(const GradedComplex&)>& f) { report["verdict"] = f(complex_named(l, object)); };
  if (predicate == "is_torsionfree") {
    module_verdict([&](const GradedModule& m) { return is_torsionfree(m, p); });
  } else if (predicate == "in_G") {
    module_verdict([&](const GradedModule& m) { return in_G(m, p); });
  } else if (predicate == "in_L") {
    module_verdict([&](const GradedModule& m) { return in_L(m, p); });
  } else if (predicate == "in_Lo") {
    module_verdict([&](const GradedModule& m) { return in_Lo(graded_dual(m), p); });
    report["note"] = "evaluated on the graded dual of the named module";
  } else if (predicate == "in_L_E") {
    module_verdict([&](const GradedModule& m) { return in_L_E(m); });
  } else if (predicate == "presented_even") {
    module_verdict([&](const GradedModule& m) { return presented_in_degrees(m, [](int j) { return j % 2 == 0; }); });
  } else if (predicate == "is_n_cokoszul") {
    module_verdict([&](const GradedModule& m) { return is_n_cokoszul(m, std::min(6, 2 * (l.doc.window_hi / p.n))); });
  } else if (predicate == "is_n_complex") {
    complex_verdict([&](const GradedComplex& x) { return is_n_complex(x, x.period()); });
  } else if (predicate == "in_T_star") {
    complex_verdict([&](const GradedComplex& x) { return in_T_star(x, p); });
  } else if (predicate == "in_G_star") {
    complex_verdict([&](const GradedComplex& x) { return in_G_star(x, p); });
  } else if (predicate == "projective_conditions") {
    const auto x = complex_named(l, object);
    std::string why;
    report["verdict"] = projective_conditions(x, p, &why);
    if (!why.empty()) report["reason"] = why;
  } else if (predicate == "in_Y" || predicate == "in_Yo") {
    const auto x = complex_named(l, object);
    const auto r = predicate == "in_Y" ? in_Y(x, l.ctx->support(), p) : in_Yo(x, l.ctx->support(), p);
    report["verdict"] = r.verdict;
    if (!r.reason.empty()) report["reason"] = r.reason;
    if (r.witness && predicate == "in_Y") report["witness"] = module_to_json(*r.witness, "support");
  } else if (predicate == "is_n_koszul") {
    const int bound = std::min(6, 2 * (l.doc.window_hi / p.n));
    const auto k = n_koszul_report(l.ctx->lambda(), bound);
    report["verdict"] = k.verdict;
    report["bound"] = k.bound;
    if (k.exact_through != std::numeric_limits<int>::max()) report["exact_through"] = k.exact_through;
    report["generation_degrees"] = k.degrees;
    if (k.first_failure >= 0) report["first_failure"] = k.first_failure;
  } else {
    throw InputError("--predicate", "unknown predicate \"" + predicate + "\"");
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite, int trials, std::uint64_t seed, bool mutate, const std::string& cx_path,
               Json& report) {
  SuiteOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  opts.nu_variant.drop_last_arrow = mutate;
  if (c.modulus) opts.field = PrimeField(*c.modulus);
  std::optional<Loaded> l;
  if (!c.input.empty()) {
    l = load(c);
    opts.input = &l->doc;
  }
  const SuiteResult r = run_suite(suite, opts);
  report["suite"] = r.suite;
  report["seed"] = seed;
  report["mutation"] = mutate ? "drop_last_arrow" : "none";
  report["trials"] = r.trials;
  report["checked"] = r.checked;
  report["skipped"] = r.skipped;
  report["stats"] = r.stats;
  report["passed"] = r.ok();
  if (!r.ok()) report["failure"] = r.failure;
  if (r.counterexample) {
    report["counterexample"] = *r.counterexample;
    if (!cx_path.empty()) std::ofstream(cx_path) << r.counterexample->dump(2) << "\n";
  }
  return r.ok() ? kOk : kVerificationFailure;
}

void add_common(CLI::App* sub, Common& c, bool input_required) {
  auto* in = sub->add_option("input", c.input, "input document (JSON)");
  if (input_required) in->required();
  in->check(CLI::ExistingFile);
  sub->add_option("--modulus", c.modulus, "prime modulus; overrides the document");
  sub->add_option("--window", c.window, "internal degree window LO HI")->expected(2);
  sub->add_option("--m", c.m, "torsion parameter m");
  sub->add_option("--r", c.r, "torsion parameter r");
  sub->add_option("--report", c.report, "also write the report here");
  sub->add_flag("--allow-windowed-dual", c.allow_windowed, "accept D(Λ) truncated to the window when Λ is not finite dimensional");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nkdual: n-homogeneous duals and linear complexes over quiver algebras"};
  app.require_subcommand(1);
  Common common;

  auto* dual = app.add_subcommand("dual", "orthogonal relations and dimension tables");
  add_common(dual, common, true);

  std::string which = "nu", module_name, complex_name, direction = "H", predicate, object;
  auto* functor = app.add_subcommand("functor", "apply Ψ or ν to a module");
  add_common(functor, common, true);
  functor->add_option("--which", which, "psi or nu")->check(CLI::IsMember({"psi", "nu"}));
  functor->add_option("--module", module_name, "module name")->required();

  auto* contract = app.add_subcommand("contract", "contract an n-complex to a 2-complex");
  add_common(contract, common, true);
  contract->add_option("--complex", complex_name, "complex name");
  contract->add_option("--module", module_name, "module name; ν(M) for H, Ψ(M) for G");
  contract->add_option("--direction", direction, "H or G")->check(CLI::IsMember({"H", "G"}));

  auto* check = app.add_subcommand("check", "evaluate a membership predicate");
  add_common(check, common, true);
  check->add_option("--predicate", predicate, "predicate name")->required();
  check->add_option("--object", object, "module or complex name");

  std::string suite, cx_path;
  int trials = 50;
  std::uint64_t seed = 42;
  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  add_common(verify, common, false);
  verify->add_option("--suite", suite, "suite name")->required();
  verify->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "generator seed");
  verify->add_flag("--mutate-nu", mutate, "drop the last arrow from the differential of ν (negative control)");
  verify->add_option("--counterexample", cx_path, "write a failing instance here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Json report;
  std::vector<std::string> echo;
  for (int i = 1; i < argc; ++i) echo.emplace_back(argv[i]);
  report["command"] = echo;
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (*dual) code = cmd_dual(common, report);
    else if (*functor) code = cmd_functor(common, which, module_name, report);
    else if (*contract) code = cmd_contract(common, complex_name, module_name, direction, report);
    else if (*check) code = cmd_check(common, predicate, object, report);
    else code = cmd_verify(common, suite, trials, seed, mutate, cx_path, report);
  } catch (const InputError& e) {
    report["error"] = Json{{"kind", "input"}, {"where", e.where()}, {"message", e.what()}};
    code = kInputError;
  } catch (const WindowError& e) {
    report["error"] = Json{{"kind", "window"}, {"message", e.what()}};
    code = kInputError;
  } catch (const std::invalid_argument& e) {
    report["error"] = Json{{"kind", "invalid"}, {"message", e.what()}};
    code = kInputError;
  }
  report["exit_code"] = code;
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!common.report.empty()) std::ofstream(common.report) << text;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "elapsed " << seconds << " s\n";
  return code;
}
