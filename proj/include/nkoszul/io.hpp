#ifndef NKOSZUL_IO_HPP
#define NKOSZUL_IO_HPP

#include <json.hpp>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "nkoszul/complexes.hpp"

namespace nkoszul {

using Json = nlohmann::ordered_json;

/// Malformed input; `where` is a JSON pointer into the document.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& where, const std::string& what) : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct InputDocument {
  Presentation pres;
  int window_lo = 0;
  int window_hi = 0;
  TorsionParams params;
  Json modules = Json::object();
  Json complexes = Json::object();
};

/// Defaults: modulus 101, window [-8n, 8n], m = 0, r = 1. `modulus` overrides the document.
InputDocument parse_document(const Json& doc, std::optional<Scalar> modulus = std::nullopt);
InputDocument load_document(const std::string& path, std::optional<Scalar> modulus = std::nullopt);

Json presentation_to_json(const Presentation& pres);
Json document_to_json(const InputDocument& doc);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Index rows, Index cols, const PrimeField& f, const std::string& where);

/// The algebras a document can refer to, built on demand.
class AlgebraContext {
 public:
  /// Slices are built through `hi` at most, and never past `path_budget` paths in one degree.
  AlgebraContext(Presentation pres, int hi, std::size_t path_budget = 20000);

  const Presentation& presentation() const { return pres_; }
  std::shared_ptr<const PathAlgebra> lambda();
  std::shared_ptr<const PathAlgebra> dual();
  std::shared_ptr<const GradedAlgebra> support();
  std::shared_ptr<const GradedAlgebra> yoneda();
  /// KQ^op without relations, for modules that need not kill I_n^⊥.
  std::shared_ptr<const PathAlgebra> free_op();
  std::shared_ptr<const GradedAlgebra> by_name(const std::string& name);
  /// Highest degree whose paths fit the budget.
  int slice_limit(const Quiver& q) const;

 private:
  Presentation pres_;
  int hi_;
  std::size_t budget_;
  std::shared_ptr<const PathAlgebra> lambda_, dual_, free_op_;
  std::shared_ptr<const GradedAlgebra> support_, yoneda_;
};

/// {"over", "lo", "labels", "actions": {generator: {degree: rows}}}; absent actions are zero.
/// `over` names the algebra as AlgebraContext::by_name does.
Json module_to_json(const GradedModule& m, const std::string& over);
GradedModule module_from_json(const Json& j, AlgebraContext& ctx, const std::string& where);

/// {"over", "period", "lo", "terms": [module], "differentials": [{degree: rows}]}.
Json complex_to_json(const GradedComplex& c, const std::string& over = "lambda");
GradedComplex complex_from_json(const Json& j, AlgebraContext& ctx, const std::string& where);

}  // namespace nkoszul

#endif  // NKOSZUL_IO_HPP
