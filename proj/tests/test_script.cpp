#include <doctest.h>

#include "fourfold/script.hpp"

#ifndef FOURFOLD_SCRIPTS_DIR
#define FOURFOLD_SCRIPTS_DIR "scripts"
#endif

using namespace fourfold;
using nlohmann::json;

TEST_CASE("a small inline script runs and binds results") {
  json script = json::parse(R"({
    "name": "inline",
    "source": "test",
    "steps": [
      {"op": "product_block", "bind": "T4", "args": {"g": 1, "h": 1},
       "expect": {"e": 0, "sigma": 0, "b1": 4}},
      {"op": "resolve_union", "bind": "T42",
       "args": {"m": "T4", "components": ["axb", "cxd"], "double_points": 1,
                "label": "Sigma"},
       "expect": {"genus": 2, "square": 2}},
      {"op": "blow_up", "bind": "Y", "args": {"m": "T42", "meets": ["Sigma"], "times": 2},
       "expect": {"e": 2, "sigma": -2, "squares": {"Sigma": 0}}},
      {"op": "abelianization", "args": {"m": "Y"}, "expect": {"abelian": "Z^4"}}
    ]
  })");
  Report r = run_script(script);
  CHECK(r.all_expectations_met());
  CHECK(r.steps.size() == 4);
  CHECK(r.steps[2].summary.at("e") == 2);
  CHECK(r.to_json({}).at("status") == "AllExpectationsMet");
}

TEST_CASE("failed expectations are recorded and evaluation continues") {
  json script = json::parse(R"({
    "name": "failing",
    "steps": [
      {"op": "product_block", "bind": "T4", "args": {"g": 1, "h": 1},
       "expect": {"e": 99}},
      {"op": "betti", "args": {"m": "T4"}, "expect": {"b2": 6}}
    ]
  })");
  Report r = run_script(script);
  CHECK_FALSE(r.all_expectations_met());
  REQUIRE(r.steps.size() == 2);  // the failure did not stop the run
  CHECK(r.steps[0].expect_failures.size() == 1);
  CHECK(r.steps[1].expect_failures.empty());
  CHECK(r.to_json({}).at("status") == "Failures(1)");
}

TEST_CASE("script errors carry the right types") {
  CHECK_THROWS_AS(run_script(json::parse(R"({"name":"x","steps":[{"op":"no_such_op"}]})")),
                  parse_error);
  CHECK_THROWS_AS(run_script(json::parse(
                      R"({"name":"x","steps":[{"op":"betti","args":{"m":"nope"}}]})")),
                  parse_error);
  CHECK_THROWS_AS(run_script(json::parse(R"({"name":"x","steps":"not an array"})")),
                  parse_error);
  // a declared manifold whose lattice contradicts its signature
  json bad = json::parse(R"({
    "name": "bad",
    "steps": [
      {"op": "declare_manifold", "args": {"manifold": {
        "name": "M", "e": 4, "sigma": 0, "b1": 0,
        "pi1": {"generators": [], "relators": []},
        "lattice": {"basis": ["A", "B"], "gram": [[1, 0], [0, 1]]},
        "lattice_complete": true, "surfaces": []}}}
    ]
  })");
  CHECK_THROWS_AS(run_script(bad), validation_error);
  CHECK_THROWS_AS(run_script_file("/nonexistent/path.json"), parse_error);
}

TEST_CASE("pi1 expectations certify through the prover") {
  json script = json::parse(R"({
    "name": "pi1",
    "steps": [
      {"op": "declare_manifold", "bind": "M", "args": {"manifold": {
        "name": "M", "e": 4, "sigma": 0, "b1": 0,
        "pi1": {"generators": ["x"], "relators": ["x"]},
        "lattice": {"basis": [], "gram": []},
        "surfaces": []}},
       "expect": {"pi1": "trivial"}},
      {"op": "declare_manifold", "bind": "N", "args": {"manifold": {
        "name": "N", "e": 0, "sigma": 0, "b1": 2,
        "pi1": {"generators": ["x", "y"], "relators": ["[x,y]"]},
        "lattice": {"basis": [], "gram": []},
        "surfaces": []}},
       "expect": {"pi1": "Z^2"}},
      {"op": "prove_trivial", "args": {"m": "N"}, "expect": {"verdict": "Refuted"}}
    ]
  })");
  Report r = run_script(script);
  CHECK(r.all_expectations_met());
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* name : {"cp2_3", "families", "twist_t4"}) {
    std::string path = std::string(FOURFOLD_SCRIPTS_DIR) + "/" + name + ".json";
    ScriptOptions opts;
    std::string a = run_script_file(path, opts).to_json(opts).dump(2);
    std::string b = run_script_file(path, opts).to_json(opts).dump(2);
    CHECK(a == b);
    CHECK(a.find("\"status\"") != std::string::npos);
  }
}

TEST_CASE("effort settings land in the report header") {
  ScriptOptions opts;
  opts.effort.cosets.max_cosets = 1234;
  json script = json::parse(R"({"name":"tiny","steps":[
    {"op": "conjugation_sign", "args": {"e": 6, "sigma": -2}, "expect": {"value": -1}}]})");
  Report r = run_script(script, opts);
  json j = r.to_json(opts);
  CHECK(j.at("effort").at("max_cosets") == 1234);
  CHECK(r.all_expectations_met());
}

TEST_CASE("text rendering mentions steps and status") {
  json script = json::parse(R"({"name":"tiny","steps":[
    {"op": "product_block", "bind": "B", "args": {"g": 0, "h": 1}}]})");
  Report r = run_script(script);
  std::string text = r.to_text();
  CHECK(text.find("script tiny") != std::string::npos);
  CHECK(text.find("product_block") != std::string::npos);
  CHECK(text.find("AllExpectationsMet") != std::string::npos);
}
