#include "nkoszul/io.hpp"

#include <fstream>

namespace nkoszul {

namespace {

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw InputError(where + "/" + key, e.what());
  }
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where, "expected an integer");
  return j.get<int>();
}

Quiver quiver_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  const int v = get<int>(j, "vertices", where);
  if (v < 1) throw InputError(where + "/vertices", "a quiver needs at least one vertex");
  std::vector<Arrow> arrows;
  const Json& list = j.contains("arrows") ? j.at("arrows") : Json::array();
  if (!list.is_array()) throw InputError(where + "/arrows", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + "/arrows/" + std::to_string(i);
    Arrow a{get<std::string>(list[i], "name", at), get<int>(list[i], "source", at), get<int>(list[i], "target", at)};
    if (a.source < 0 || a.source >= v || a.target < 0 || a.target >= v) throw InputError(at, "endpoint outside the vertex range");
    if (a.name.empty() || a.name.find('.') != std::string::npos) throw InputError(at + "/name", "arrow names must be nonempty and contain no '.'");
    for (const auto& b : arrows)
      if (b.name == a.name) throw InputError(at + "/name", "duplicate arrow name " + a.name);
    arrows.push_back(std::move(a));
  }
  return Quiver(v, std::move(arrows));
}

Path path_from_text(const Quiver& q, const std::string& text, const std::string& where) {
  try {
    return parse_path(q, text);
  } catch (const std::exception& e) {
    throw InputError(where, e.what());
  }
}

}  // namespace

InputDocument parse_document(const Json& doc, std::optional<Scalar> modulus) {
  if (!doc.is_object()) throw InputError("", "the document must be a JSON object");
  InputDocument out;
  const Scalar p = modulus ? *modulus : (doc.contains("modulus") ? doc.at("modulus").get<Scalar>() : PrimeField::kDefaultModulus);
  try {
    out.pres.field = PrimeField(p);
  } catch (const std::invalid_argument& e) {
    throw InputError("/modulus", e.what());
  }
  const PrimeField& f = out.pres.field;
  out.pres.quiver = quiver_from_json(doc.contains("quiver") ? doc.at("quiver") : Json(), "/quiver");
  out.pres.n = get<int>(doc, "n", "");
  if (out.pres.n < 2) throw InputError("/n", "n must be at least 2");
  const Json& rels = doc.contains("relations") ? doc.at("relations") : Json::array();
  if (!rels.is_array()) throw InputError("/relations", "expected an array");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const std::string at = "/relations/" + std::to_string(i);
    if (!rels[i].is_object()) throw InputError(at, "a relation is an object mapping paths to coefficients");
    PathCombination rel{out.pres.n, {}};
    for (const auto& [text, coef] : rels[i].items()) {
      const Path path = path_from_text(out.pres.quiver, text, at + "/" + text);
      if (path.length() != out.pres.n) throw InputError(at + "/" + text, "relations must have length n = " + std::to_string(out.pres.n));
      rel.add(path, f.reduce(get_int(coef, at + "/" + text)), f);
    }
    if (!rel.is_zero()) out.pres.relations.push_back(std::move(rel));
  }
  if (doc.contains("truncation")) out.pres.truncation = get_int(doc.at("truncation"), "/truncation");
  if (doc.contains("degree_cap")) out.pres.degree_cap = get_int(doc.at("degree_cap"), "/degree_cap");
  out.window_lo = -8 * out.pres.n;
  out.window_hi = 8 * out.pres.n;
  if (doc.contains("window")) {
    const Json& w = doc.at("window");
    if (!w.is_array() || w.size() != 2) throw InputError("/window", "expected [lo, hi]");
    out.window_lo = get_int(w[0], "/window/0");
    out.window_hi = get_int(w[1], "/window/1");
    if (out.window_lo > out.window_hi) throw InputError("/window", "lo exceeds hi");
  }
  out.params = TorsionParams{out.pres.n, doc.contains("r") ? get_int(doc.at("r"), "/r") : 1, doc.contains("m") ? get_int(doc.at("m"), "/m") : 0};
  try {
    out.params.check();
  } catch (const std::exception& e) {
    throw InputError("/r", e.what());
  }
  if (doc.contains("modules")) {
    if (!doc.at("modules").is_object()) throw InputError("/modules", "expected an object of named modules");
    out.modules = doc.at("modules");
  }
  if (doc.contains("complexes")) {
    if (!doc.at("complexes").is_object()) throw InputError("/complexes", "expected an object of named complexes");
    out.complexes = doc.at("complexes");
  }
  return out;
}

InputDocument load_document(const std::string& path, std::optional<Scalar> modulus) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("", std::string("parse error: ") + e.what());
  }
  return parse_document(doc, modulus);
}

Json presentation_to_json(const Presentation& pres) {
  Json out;
  out["modulus"] = pres.field.modulus();
  Json arrows = Json::array();
  for (const auto& a : pres.quiver.arrows()) arrows.push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
  out["quiver"] = {{"vertices", pres.quiver.vertex_count()}, {"arrows", arrows}};
  out["n"] = pres.n;
  Json rels = Json::array();
  for (const auto& rel : pres.relations) {
    Json r = Json::object();
    for (const auto& [p, c] : rel.terms) r[to_string(pres.quiver, p)] = c;
    rels.push_back(std::move(r));
  }
  out["relations"] = rels;
  if (pres.truncation) out["truncation"] = *pres.truncation;
  if (pres.degree_cap) out["degree_cap"] = *pres.degree_cap;
  return out;
}

Json document_to_json(const InputDocument& doc) {
  Json out = presentation_to_json(doc.pres);
  out["window"] = {doc.window_lo, doc.window_hi};
  out["m"] = doc.params.m;
  out["r"] = doc.params.r;
  if (!doc.modules.empty()) out["modules"] = doc.modules;
  if (!doc.complexes.empty()) out["complexes"] = doc.complexes;
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, Index rows, Index cols, const PrimeField& f, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) throw InputError(where, "expected " + std::to_string(rows) + " rows");
  Matrix out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string at = where + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw InputError(at, "expected " + std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c) out(r, c) = f.reduce(get_int(row[static_cast<std::size_t>(c)], at + "/" + std::to_string(c)));
  }
  return out;
}

// ---------------------------------------------------------------------------

AlgebraContext::AlgebraContext(Presentation pres, int hi, std::size_t path_budget)
    : pres_(std::move(pres)), hi_(std::max(hi, pres_.n)), budget_(path_budget) {}

int AlgebraContext::slice_limit(const Quiver& q) const {
  int t = 0;
  while (t < hi_ && count_paths(q, t + 1) <= static_cast<Scalar>(budget_)) ++t;
  return t;
}

std::shared_ptr<const PathAlgebra> AlgebraContext::lambda() {
  if (lambda_) return lambda_;
  const int limit = std::max(slice_limit(pres_.quiver), pres_.n);
  int t = pres_.n;
  while (true) {
    lambda_ = PathAlgebra::build(pres_, t);
    if (lambda_->bounded() || t >= limit) break;
    t = std::min(limit, 2 * t);
  }
  return lambda_;
}

std::shared_ptr<const PathAlgebra> AlgebraContext::dual() {
  if (!dual_) dual_ = build_dual(*lambda(), std::max(slice_limit(pres_.quiver.opposite()), pres_.n + 1));
  return dual_;
}

std::shared_ptr<const GradedAlgebra> AlgebraContext::support() {
  if (!support_) support_ = restrict_support(dual());
  return support_;
}

std::shared_ptr<const GradedAlgebra> AlgebraContext::yoneda() {
  if (!yoneda_) yoneda_ = yoneda_regrade(support());
  return yoneda_;
}

std::shared_ptr<const PathAlgebra> AlgebraContext::free_op() {
  if (!free_op_) {
    Presentation p;
    p.quiver = pres_.quiver.opposite();
    p.n = pres_.n;
    p.field = pres_.field;
    free_op_ = PathAlgebra::build(p, pres_.n + 1);
  }
  return free_op_;
}

std::shared_ptr<const GradedAlgebra> AlgebraContext::by_name(const std::string& name) {
  if (name == "lambda") return lambda();
  if (name == "dual") return dual();
  if (name == "support") return support();
  if (name == "yoneda") return yoneda();
  if (name == "free_op") return free_op();
  throw std::invalid_argument("unknown algebra \"" + name + "\" (expected lambda, dual, support, yoneda or free_op)");
}

// ---------------------------------------------------------------------------

Json module_to_json(const GradedModule& m, const std::string& over) {
  Json out;
  out["over"] = over;
  out["lo"] = m.lo();
  Json labels = Json::array();
  for (int d = m.lo(); d <= m.hi(); ++d) labels.push_back(m.labels(d));
  out["labels"] = labels;
  Json actions = Json::object();
  const auto& gens = m.algebra().generators();
  for (int g = 0; g < m.algebra().generator_count(); ++g) {
    Json per = Json::object();
    for (int d = m.lo(); d <= m.hi(); ++d) {
      const Matrix a = m.action_or_zero(g, d);
      if (a.size() == 0 || a.isZero()) continue;
      per[std::to_string(d)] = matrix_to_json(a);
    }
    if (!per.empty()) actions[gens[static_cast<std::size_t>(g)].name] = per;
  }
  out["actions"] = actions;
  return out;
}

GradedModule module_from_json(const Json& j, AlgebraContext& ctx, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected a module object");
  std::shared_ptr<const GradedAlgebra> alg;
  try {
    alg = ctx.by_name(j.contains("over") ? get<std::string>(j, "over", where) : "dual");
  } catch (const std::invalid_argument& e) {
    throw InputError(where + "/over", e.what());
  }
  const PrimeField& f = alg->field();
  const int lo = j.contains("lo") ? get_int(j.at("lo"), where + "/lo") : 0;
  if (!j.contains("labels") || !j.at("labels").is_array()) throw InputError(where + "/labels", "expected an array of label lists");
  std::vector<std::vector<int>> labels;
  for (std::size_t d = 0; d < j.at("labels").size(); ++d) {
    const Json& ls = j.at("labels")[d];
    const std::string at = where + "/labels/" + std::to_string(d);
    if (!ls.is_array()) throw InputError(at, "expected an array of vertices");
    std::vector<int> row;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const int v = get_int(ls[i], at + "/" + std::to_string(i));
      if (v < 0 || v >= alg->vertex_count()) throw InputError(at + "/" + std::to_string(i), "vertex out of range");
      row.push_back(v);
    }
    labels.push_back(std::move(row));
  }
  GradedModule m(alg, lo, std::move(labels));
  if (j.contains("actions")) {
    const Json& acts = j.at("actions");
    if (!acts.is_object()) throw InputError(where + "/actions", "expected an object keyed by generator name");
    for (const auto& [name, per] : acts.items()) {
      const int g = alg->find_generator(name);
      const std::string at = where + "/actions/" + name;
      if (g < 0) throw InputError(at, "unknown generator");
      if (!per.is_object()) throw InputError(at, "expected an object keyed by degree");
      const int deg = alg->generators()[static_cast<std::size_t>(g)].degree;
      for (const auto& [key, rows] : per.items()) {
        int d = 0;
        try {
          d = std::stoi(key);
        } catch (const std::exception&) {
          throw InputError(at + "/" + key, "degree keys must be integers");
        }
        if (d < m.lo() || d > m.hi()) throw InputError(at + "/" + key, "degree outside the module");
        m.set_action(g, d, matrix_from_json(rows, m.dim(d + deg), m.dim(d), f, at + "/" + key));
      }
    }
  }
  try {
    const auto report = m.validate();
    if (!report.ok()) throw InputError(where, "not a module: " + report.summary());
  } catch (const WindowError& e) {
    throw InputError(where, e.what());
  }
  return m;
}

Json complex_to_json(const GradedComplex& c, const std::string& over) {
  Json out;
  out["over"] = over;
  out["period"] = c.period();
  out["lo"] = c.lo();
  Json terms = Json::array(), diffs = Json::array();
  if (!c.is_zero()) {
    for (int k = c.lo(); k <= c.hi(); ++k) {
      const GradedModule t = c.term(k);
      Json mj = module_to_json(t, over);
      mj.erase("over");
      terms.push_back(std::move(mj));
      Json dj = Json::object();
      for (int d = t.lo(); d <= t.hi(); ++d) {
        const Matrix a = diff_component(c, k, d);
        if (a.size() == 0 || a.isZero()) continue;
        dj[std::to_string(d)] = matrix_to_json(a);
      }
      diffs.push_back(std::move(dj));
    }
  }
  out["terms"] = terms;
  out["differentials"] = diffs;
  return out;
}

GradedComplex complex_from_json(const Json& j, AlgebraContext& ctx, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected a complex object");
  const std::string over = j.contains("over") ? get<std::string>(j, "over", where) : "lambda";
  if (over != "lambda") throw InputError(where + "/over", "complexes live over lambda");
  const auto lambda = ctx.lambda();
  const PrimeField& f = lambda->field();
  const int period = j.contains("period") ? get_int(j.at("period"), where + "/period") : lambda->homogeneity();
  const int lo = j.contains("lo") ? get_int(j.at("lo"), where + "/lo") : 0;
  if (!j.contains("terms") || !j.at("terms").is_array()) throw InputError(where + "/terms", "expected an array of terms");
  const Json& terms = j.at("terms");
  const Json diffs = j.contains("differentials") ? j.at("differentials") : Json::array();
  if (!diffs.is_array()) throw InputError(where + "/differentials", "expected an array");
  std::vector<GradedModule> mods;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    Json t = terms[k];
    if (t.is_object() && !t.contains("over")) t["over"] = "lambda";
    if (t.is_object() && !t.contains("actions")) {
      // Terms without explicit actions are read as Hom_{Λ0}(Λ, V) or free modules by the "kind" field.
      const std::string kind = t.value("kind", "");
      if (kind == "coinduced" || kind == "free") {
        const int shift = get<int>(t, "shift", where + "/terms/" + std::to_string(k));
        const auto vs = get<std::vector<int>>(t, "vertices", where + "/terms/" + std::to_string(k));
        if (kind == "coinduced") {
          mods.push_back(coinduced(lambda, vs, shift, lambda->top()));
        } else {
          std::vector<GradedModule> parts;
          for (int v : vs) parts.push_back(free_module(lambda, v, shift, shift + lambda->top()));
          mods.push_back(parts.empty() ? GradedModule::zero(lambda) : direct_sum(parts));
        }
        continue;
      }
    }
    mods.push_back(module_from_json(t, ctx, where + "/terms/" + std::to_string(k)));
  }
  GradedComplex out(lambda, period, lo);
  for (std::size_t k = 0; k < mods.size(); ++k) {
    GradedMorphism d;
    if (k < diffs.size()) {
      const std::string at = where + "/differentials/" + std::to_string(k);
      if (!diffs[k].is_object()) throw InputError(at, "expected an object keyed by degree");
      const GradedModule& src = mods[k];
      const GradedModule tgt = k + 1 < mods.size() ? mods[k + 1] : GradedModule::zero(lambda);
      for (const auto& [key, rows] : diffs[k].items()) {
        int e = 0;
        try {
          e = std::stoi(key);
        } catch (const std::exception&) {
          throw InputError(at + "/" + key, "degree keys must be integers");
        }
        d.components[e] = matrix_from_json(rows, tgt.dim(e), src.dim(e), f, at + "/" + key);
      }
    }
    out.push(mods[k], std::move(d));
  }
  if (!differentials_are_morphisms(out)) throw InputError(where, "a differential is not a morphism of graded modules");
  return out;
}

}  // namespace nkoszul
