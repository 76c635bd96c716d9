#include <doctest.h>

#include "nkoszul/suites.hpp"

using namespace nkoszul;

namespace {

SuiteResult run(const std::string& name, int trials, bool mutate = false, const InputDocument* input = nullptr) {
  SuiteOptions o;
  o.trials = trials;
  o.seed = 5;
  o.nu_variant.drop_last_arrow = mutate;
  o.input = input;
  return run_suite(name, o);
}

}  // namespace

TEST_CASE("every suite passes a short run") {
  for (const auto& name : suite_names()) {
    const auto r = run(name, name == "koszul" ? 5 : 8);
    INFO(name << ": " << r.failure);
    CHECK(r.ok());
    CHECK(r.trials == (name == "koszul" ? 5 : 8));
    CHECK(r.checked + r.skipped == r.trials);
  }
  CHECK(suite_names().size() == 10);
  CHECK_THROWS_AS(run("prop99", 1), std::invalid_argument);
}

TEST_CASE("suite results are reproducible") {
  const auto a = run("lemma31", 12);
  const auto b = run("lemma31", 12);
  CHECK(a.stats == b.stats);
  CHECK(a.checked == b.checked);
}

TEST_CASE("a counterexample is shrunk and replays to the same failure") {
  const auto r = run("remark44", 50, true);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.counterexample.has_value());
  const InputDocument doc = parse_document(*r.counterexample);
  REQUIRE(doc.modules.contains("M"));
  const auto replay = run("remark44", 1, true, &doc);
  CHECK_FALSE(replay.ok());
  CHECK(r.failure.find(replay.failure) != std::string::npos);
  CHECK(run("remark44", 1, false, &doc).ok());
  // No single-degree cut of the shrunk module still fails.
  CHECK(r.counterexample->at("modules").at("M").at("labels").size() <= 3);
}

TEST_CASE("an input presentation replaces the corpus") {
  const Json j = Json::parse(R"({"quiver": {"vertices": 1, "arrows": [{"name": "x", "source": 0, "target": 0}]},
                                 "n": 3, "relations": [{"x.x.x": 1}], "window": [0, 9]})");
  const InputDocument doc = parse_document(j);
  const auto r = run("koszul", 2, false, &doc);
  CHECK(r.ok());
  CHECK(r.stats.value("koszul", 0) == 2);
}
