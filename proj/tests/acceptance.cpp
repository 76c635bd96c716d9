// One PASS/FAIL line per acceptance criterion. Every comparison is exact over F_101;
// the only tolerances are the wall-clock limits printed next to each line.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nkoszul/generators.hpp"
#include "nkoszul/koszul.hpp"
#include "nkoszul/suites.hpp"

using namespace nkoszul;

namespace {

struct Line {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Line()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Line l;
  try {
    l = body();
  } catch (const std::exception& e) {
    l = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0 || s < limit_s;
  const bool pass = l.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s [%2d] %s: %s; %.2f s", pass ? "PASS" : "FAIL", id, title, l.detail.c_str(), s);
  if (limit_s > 0) std::printf(" (limit %.0f s)", limit_s);
  std::printf("\n");
  std::fflush(stdout);
}

SuiteResult suite(const std::string& name, int trials, std::uint64_t seed, bool mutate = false, const InputDocument* input = nullptr) {
  SuiteOptions o;
  o.trials = trials;
  o.seed = seed;
  o.nu_variant.drop_last_arrow = mutate;
  o.input = input;
  return run_suite(name, o);
}

int stat(const SuiteResult& r, const char* key) { return r.stats.value(key, 0); }

std::string summary(const SuiteResult& r) {
  std::string s = std::to_string(r.checked) + " checked, " + std::to_string(r.skipped) + " skipped";
  if (!r.stats.empty()) s += ", " + r.stats.dump();
  if (!r.ok()) s += ", failure: " + r.failure;
  return s;
}

std::shared_ptr<const PathAlgebra> truncated(int loops) { return PathAlgebra::build(truncated_presentation(loop_quiver(loops), 3), 3); }

}  // namespace

int main() {
  report(1, "dual-basis agreement", 10, [] {
    const auto r = suite("prop21", 50, 42);
    return Line{r.ok() && r.checked >= 20, summary(r)};
  });

  report(2, "Ψ/ν n-complex iff M·I_n^⊥ = 0", 60, [] {
    const auto r = suite("prop22", 150, 42);
    return Line{r.ok() && r.checked >= 50 && stat(r, "annihilated") >= 10 && stat(r, "not_annihilated") >= 10, summary(r)};
  });

  report(3, "truncated algebras: dim Λ^!_k and dim E_j", 0, [] {
    const DegreeMap delta{0, 3};
    const std::vector<int> expected_delta{0, 1, 3, 4, 6, 7};
    bool ok = true;
    for (int j = 0; j <= 5; ++j) ok = ok && delta(j) == expected_delta[static_cast<std::size_t>(j)];
    std::string detail;
    for (int loops : {1, 2}) {
      const auto lambda = truncated(loops);
      const auto dual = build_dual(*lambda, 8);
      const auto e = yoneda_regrade(restrict_support(dual));
      for (int k = 0; k <= 8; ++k) ok = ok && dual->dim(k) == count_paths(lambda->quiver().opposite(), k);
      for (int j = 0; j <= 5; ++j) ok = ok && e->dim(j) == dual->dim(delta(j));
      detail += std::to_string(loops) + " loop(s): dim Λ^!_8 = " + std::to_string(dual->dim(8)) + ", dim E_5 = " + std::to_string(e->dim(5)) + "; ";
    }
    return Line{ok, detail + "k <= 8, j <= 5"};
  });

  report(4, "n-Koszul to bound 6 and Ext = Λ^!_δ(j)", 60, [] {
    bool ok = true;
    std::string detail;
    for (int loops : {1, 2}) {
      const auto lambda = truncated(loops);
      const bool k = is_n_koszul(lambda, 6);
      const auto ext = ext_dims(lambda, 6);
      const auto expected = dual_dims(*build_dual(*lambda, DegreeMap{0, 3}(6)), 6);
      bool same = true;
      for (int j = 0; j <= 6; ++j) same = same && ext[static_cast<std::size_t>(j)] == expected[static_cast<std::size_t>(j)];
      ok = ok && k && same;
      detail += std::to_string(loops) + " loop(s): koszul " + (k ? "yes" : "no") + ", ext_6 = " + std::to_string(ext[6](0, 0)) + (loops == 1 ? "; " : "");
    }
    return Line{ok, detail};
  });

  report(5, "is_torsionfree iff torsion_submodule = 0", 0, [] {
    const auto r = suite("lemma31", 70, 42);
    return Line{r.ok() && r.checked >= 50, summary(r)};
  });

  report(6, "G and T_S transported by ν", 0, [] {
    const auto r = suite("lemma32", 60, 42);
    return Line{r.ok() && r.checked >= 30, summary(r)};
  });

  // Criteria 7 and 8 share one run over the thm43 corpus.
  SuiteResult thm43;
  report(7, "F fully faithful on the two-loop algebra", 120, [&] {
    thm43 = suite("thm43", 24, 42);
    return Line{thm43.ok() && stat(thm43, "two_loop") >= 15, summary(thm43)};
  });

  report(8, "round trip and in_Y on F-images with negative controls", 0, [&] {
    const int controls = stat(thm43, "control_a") + stat(thm43, "control_b");
    return Line{thm43.ok() && thm43.checked >= 15 && controls >= 5, std::to_string(controls) + " negative controls rejected"};
  });

  report(9, "D(ν(M)) ≅ Ψ(D(M))", 0, [] {
    const auto r = suite("remark44", 40, 42);
    return Line{r.ok() && r.checked >= 20, summary(r)};
  });

  report(10, "even-presented E-modules lie in L_E", 0, [] {
    const auto r = suite("cor47", 80, 42);
    return Line{r.ok() && stat(r, "presented_even") >= 10 && stat(r, "not_in_L_E") >= 3, summary(r)};
  });

  report(11, "F° conditions and in_Lo(D X) iff in_L(X)", 0, [] {
    const auto r = suite("thm46", 30, 42);
    return Line{r.ok() && r.checked >= 15, summary(r)};
  });

  report(12, "mutated ν fails suite prop22", 0, [] {
    const auto r = suite("prop22", 50, 42, true);
    if (r.ok() || !r.counterexample) return Line{false, "mutation not caught: " + summary(r)};
    const InputDocument doc = parse_document(*r.counterexample);
    const auto replay = suite("prop22", 1, 42, true, &doc);
    const auto clean = suite("prop22", 1, 42, false, &doc);
    const bool same = !replay.ok() && r.failure.find(replay.failure) != std::string::npos;
    return Line{same && clean.ok(), "caught at " + r.failure.substr(0, r.failure.find(':')) + ", counterexample replays" +
                                        (same ? "" : " NOT") + ", unmutated replay " + (clean.ok() ? "passes" : "fails")};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
