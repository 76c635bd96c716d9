#ifndef NKOSZUL_SUITES_HPP
#define NKOSZUL_SUITES_HPP

// Seeded property suites. Every instance is an input document: a presentation,
// torsion parameters, a window and the modules under test. A failing instance
// is shrunk and returned as a document that replays to the same failure.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nkoszul/complexes.hpp"
#include "nkoszul/io.hpp"

namespace nkoszul {

struct SuiteOptions {
  int trials = 50;
  std::uint64_t seed = 42;
  PrimeField field;
  /// Mutation hook: the ν used by the checks.
  NuVariant nu_variant;
  /// A document with modules replays one instance; without modules its
  /// presentation replaces the built-in corpus.
  const InputDocument* input = nullptr;
};

struct SuiteResult {
  std::string suite;
  int trials = 0;
  int checked = 0;
  int skipped = 0;
  /// Per-suite counters, e.g. how many instances fell in each verdict class.
  Json stats = Json::object();
  std::optional<Json> counterexample;
  std::string failure;
  bool ok() const { return failure.empty(); }
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace nkoszul

#endif  // NKOSZUL_SUITES_HPP
