#include <doctest.h>

#include "nkoszul/generators.hpp"
#include "nkoszul/io.hpp"

using namespace nkoszul;

namespace {

Json two_loop_doc() {
  return Json::parse(R"({"quiver": {"vertices": 1, "arrows": [{"name": "x", "source": 0, "target": 0},
                                                              {"name": "y", "source": 0, "target": 0}]},
                         "n": 2, "relations": [{"x.y": 1, "y.x": -1}]})");
}

std::string where_of(const Json& doc) {
  try {
    parse_document(doc);
  } catch (const InputError& e) {
    return e.where();
  }
  return "no error";
}

}  // namespace

TEST_CASE("document defaults") {
  const auto d = parse_document(two_loop_doc());
  CHECK(d.pres.field.modulus() == 101);
  CHECK(d.window_lo == -16);
  CHECK(d.window_hi == 16);
  CHECK(d.params.m == 0);
  CHECK(d.params.r == 1);
  CHECK(parse_document(two_loop_doc(), 7).pres.field.modulus() == 7);
  // The presentation survives a round trip.
  const auto again = parse_document(document_to_json(d));
  CHECK(presentation_to_json(again.pres) == presentation_to_json(d.pres));
}

TEST_CASE("diagnostics point into the document") {
  Json bad = two_loop_doc();
  bad["relations"][0]["x.y.x"] = 1;
  CHECK(where_of(bad) == "/relations/0/x.y.x");
  bad = two_loop_doc();
  bad["quiver"]["arrows"][1]["target"] = 3;
  CHECK(where_of(bad) == "/quiver/arrows/1");
  bad = two_loop_doc();
  bad["window"] = {4, 1};
  CHECK(where_of(bad) == "/window");
  bad = two_loop_doc();
  bad["modulus"] = 12;
  CHECK(where_of(bad) == "/modulus");
  bad = two_loop_doc();
  bad["relations"][0]["z.y"] = 1;
  CHECK(where_of(bad).rfind("/relations/0", 0) == 0);
}

TEST_CASE("modules round trip through JSON") {
  const auto d = parse_document(two_loop_doc());
  AlgebraContext ctx(d.pres, 6);
  Rng rng(41);
  for (const char* over : {"dual", "support", "yoneda", "free_op"}) {
    const auto alg = ctx.by_name(over);
    for (int trial = 0; trial < 4; ++trial) {
      const auto m = random_quotient_module(rng, alg, {0, 1}, 3, 2, 2);
      const auto back = module_from_json(module_to_json(m, over), ctx, "/m");
      CHECK(identical(back, m));
    }
  }
  CHECK_THROWS_AS(ctx.by_name("nothing"), std::invalid_argument);
}

TEST_CASE("module parsing rejects non-modules") {
  const auto d = parse_document(two_loop_doc());
  AlgebraContext ctx(d.pres, 6);
  // Λ^! is the exterior algebra: x·x must vanish.
  const Json square = Json::parse(R"({"over": "dual", "labels": [[0], [0], [0]], "actions": {"x": {"0": [[1]], "1": [[1]]}}})");
  CHECK_THROWS_AS(module_from_json(square, ctx, "/modules/M"), InputError);
  const Json shape = Json::parse(R"({"over": "dual", "labels": [[0], [0]], "actions": {"x": {"0": [[1, 0]]}}})");
  try {
    module_from_json(shape, ctx, "/modules/M");
    FAIL("accepted a matrix of the wrong shape");
  } catch (const InputError& e) {
    CHECK(e.where().rfind("/modules/M/actions/x/0", 0) == 0);
  }
}

TEST_CASE("complexes round trip through JSON") {
  Json doc = two_loop_doc();
  doc["relations"] = Json::array();
  for (const auto* w : {"x.x.x", "x.x.y", "x.y.x", "x.y.y", "y.x.x", "y.x.y", "y.y.x", "y.y.y"}) doc["relations"].push_back({{w, 1}});
  doc["n"] = 3;
  const auto d = parse_document(doc);
  AlgebraContext ctx(d.pres, 9);
  Rng rng(42);
  const auto x = random_l_module(rng, ctx.support(), 0, 2, 2);
  const auto c = equivalence_F(x, ctx.lambda(), d.params);
  const auto back = complex_from_json(complex_to_json(c), ctx, "/complexes/F");
  CHECK(back.lo() == c.lo());
  CHECK(back.hi() == c.hi());
  for (int k = c.lo(); k <= c.hi(); ++k) CHECK(identical(back.term(k), c.term(k)));
  CHECK(iso_complexes(back, c));
}
