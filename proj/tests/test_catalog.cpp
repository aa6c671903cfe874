#include "banachlab/catalog.hpp"

#include <doctest.h>

#include <string>

using namespace banach;

TEST_CASE("default catalog loads cleanly") {
  Config cfg = default_config();
  Catalog c = parse_catalog_text(default_catalog_json(), cfg);
  CHECK(c.spaces.size() == 8);
  CHECK(c.operators.size() == 3);
  CHECK(c.tensors.size() == 2);
  CHECK(c.warnings.empty());
  CHECK(c.has_space("hex2"));
  CHECK(c.find_space("l2-2c")->field == Field::cplx);
  CHECK(c.find_operator("rot2") != nullptr);
  CHECK(c.find_tensor("third2") != nullptr);
  CHECK_THROWS_WITH(c.find_space("nosuch"), "unknown label: nosuch");
}

TEST_CASE("serialization round trips exactly") {
  Config cfg = default_config();
  Catalog c = parse_catalog_text(default_catalog_json(), cfg);
  std::string once = dump_catalog(c);
  Catalog back = parse_catalog_text(once, cfg);
  CHECK(dump_catalog(back) == once);
  // the 1/3 tensor coefficient survives exactly
  const TensorElement* t = back.find_tensor("third2");
  REQUIRE(t != nullptr);
  CHECK(t->c(0, 0).real() == 1.0 / 3.0);
}

TEST_CASE("rational vertex strings parse exactly") {
  Config cfg = default_config();
  std::string text = R"({"spaces":[{"label":"hexthird","kind":"polyhedral",
    "vertices":[["1","0"],["-1","0"],["1/3","1"],["1/3","-1"],["-1/3","1"],["-1/3","-1"]]}]})";
  Catalog c = parse_catalog_text(text, cfg);
  auto ep = extreme_points(*c.find_space("hexthird"), cfg);
  REQUIRE(ep.size() == 6);
  bool found = false;
  for (const QVec& v : ep)
    if (v[0] == Rat(1, 3) && v[1] == Rat(1)) found = true;
  CHECK(found);
}

TEST_CASE("vertex off the sphere is rejected with the entry named") {
  Config cfg = default_config();
  std::string text = R"({"spaces":[{"label":"sq","kind":"polyhedral",
    "vertices":[["3/2","0"],["-1","0"],["0","1"],["0","-1"]],
    "facets":[["1","0"],["-1","0"],["0","1"],["0","-1"]]}]})";
  try {
    parse_catalog_text(text, cfg);
    FAIL("expected a load error");
  } catch (const std::exception& e) {
    std::string msg = e.what();
    CHECK(msg.find("sq") != std::string::npos);
    CHECK(msg.find("3/2") != std::string::npos);
  }
}

TEST_CASE("interior vertex is rejected") {
  Config cfg = default_config();
  std::string text = R"({"spaces":[{"label":"sq","kind":"polyhedral",
    "vertices":[["1","1"],["-1","1"],["1","-1"],["-1","-1"],["1/2","0"]]}]})";
  CHECK_THROWS(parse_catalog_text(text, cfg));
}

TEST_CASE("facets must be the polar of the vertices") {
  Config cfg = default_config();
  // diamond vertices with cube facets: every vertex has facet-norm 1, but the
  // facet list is not the polar (it misses the diagonal facets)
  std::string text = R"({"spaces":[{"label":"d","kind":"polyhedral",
    "vertices":[["1","0"],["-1","0"],["0","1"],["0","-1"]],
    "facets":[["1","0"],["-1","0"],["0","1"],["0","-1"]]}]})";
  CHECK_THROWS(parse_catalog_text(text, cfg));
}

TEST_CASE("duplicate and dangling labels are rejected") {
  Config cfg = default_config();
  std::string dup = R"({"spaces":[
    {"label":"a","kind":"lp","p":1,"dim":2},
    {"label":"a","kind":"lp","p":2,"dim":2}]})";
  CHECK_THROWS(parse_catalog_text(dup, cfg));
  std::string dangling = R"({"spaces":[{"label":"a","kind":"lp","p":1,"dim":2}],
    "operators":[{"label":"t","space":"missing","matrix":[[1,0],[0,1]]}]})";
  CHECK_THROWS(parse_catalog_text(dangling, cfg));
}

TEST_CASE("operator matrices validate their shape") {
  Config cfg = default_config();
  std::string bad = R"({"spaces":[{"label":"a","kind":"lp","p":1,"dim":2}],
    "operators":[{"label":"t","space":"a","matrix":[[1,0]]}]})";
  CHECK_THROWS(parse_catalog_text(bad, cfg));
}

TEST_CASE("file loading errors name the path") {
  Config cfg = default_config();
  try {
    load_catalog("/nonexistent/path.json", cfg);
    FAIL("expected a load error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("/nonexistent/path.json") != std::string::npos);
  }
}
