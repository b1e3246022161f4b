// SPDX-License-Identifier: Apache-2.0
#include <json.hpp>

#include <map>

#include "errors.hpp"
#include "eval.hpp"
#include "support.hpp"

using namespace legendrean;
using namespace legendrean::testing;

namespace {

SuiteReport run(const std::string& example_name, const std::string& suite, std::size_t points = 12,
                std::optional<double> tol = {}) {
  SuiteOptions o;
  o.suite = suite;
  o.points = points;
  o.tol = tol;
  return run_suite(example(example_name), o);
}

}  // namespace

TEST_SUITE("suites") {

TEST_CASE("reports are byte-identical across runs") {
  for (const char* name : {"darboux3", "twisted5"}) {
    const std::string a = render_json(run(name, "all", 8));
    const std::string b = render_json(run(name, "all", 8));
    CHECK(a == b);
  }
}

TEST_CASE("json report layout") {
  const auto j = nlohmann::ordered_json::parse(render_json(run("darboux3", "structure", 5)));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"suite", "seed", "points", "order", "properties", "pass", "duration_ms"});
  CHECK(j["duration_ms"] == 0);
  std::vector<std::string> pkeys;
  for (const auto& [k, v] : j["properties"][0].items()) pkeys.push_back(k);
  CHECK(pkeys == std::vector<std::string>{"name", "anchor", "max_residual", "tol", "pass", "worst_point"});
  CHECK(j["properties"][0]["worst_point"].size() == 3);
}

TEST_CASE("all is the union of the individual suites") {
  for (const char* name : {"darboux5", "twisted5"}) {
    const auto all = run(name, "all", 6);
    std::map<std::string, std::string> by_name;
    for (const auto& p : all.properties) by_name[p.name] = p.max_residual ? std::to_string(*p.max_residual) : "error";
    std::size_t total = 0;
    for (const auto& suite : suite_names()) {
      if (suite == "all") continue;
      const auto r = run(name, suite, 6);
      total += r.properties.size();
      for (const auto& p : r.properties) {
        CAPTURE(p.name);
        REQUIRE(by_name.count(p.name));
        CHECK(by_name[p.name] == (p.max_residual ? std::to_string(*p.max_residual) : "error"));
      }
    }
    CHECK(total == all.properties.size());
  }
}

TEST_CASE("shipped involutive examples pass every suite") {
  CHECK(run("darboux3", "all", 20).pass);
  CHECK(run("darboux5", "all", 20).pass);
}

TEST_CASE("a tolerance override tightens non-margin properties only") {
  const auto r = run("darboux5", "reeb-upsilon", 10, 1e-20);
  CHECK_FALSE(r.pass);
  const auto m = run("darboux5", "structure", 10, 1e-20);
  for (const auto& p : m.properties)
    if (p.name == "contact_condition") CHECK(p.pass);
}

TEST_CASE("bott suite agrees on involutive F and refuses otherwise") {
  const auto d = run("darboux5", "bott", 10);
  REQUIRE(d.properties.size() == 1);
  CHECK(d.properties[0].name == "bott_agreement");
  CHECK(d.properties[0].pass);
  const auto t = run("twisted5", "bott", 10);
  REQUIRE(t.properties.size() == 1);
  CHECK(t.properties[0].name == "bott_refusal");
  CHECK(t.properties[0].pass);
}

TEST_CASE("invalid options are config errors") {
  CHECK_THROWS_AS(run("darboux3", "nope"), ConfigError);
  CHECK_THROWS_AS(run("darboux3", "all", 0), ConfigError);
  SuiteOptions o;
  o.order = 4;
  CHECK_THROWS_AS(run_suite(example("darboux3"), o), ConfigError);
}

TEST_CASE("sample points are reproducible and inside the shrunk box") {
  const auto& chart = example("darboux3").cs.chart();
  const auto a = sample_points(chart, 50, 42);
  CHECK(a == sample_points(chart, 50, 42));
  CHECK(a != sample_points(chart, 50, 43));
  for (const auto& p : a)
    for (double v : p) CHECK(std::abs(v) <= 0.9);
}

TEST_CASE("spot evaluations") {
  const auto& s = example("darboux3");
  EvalRequest req;
  req.at = "x=0.5,y=0.2,z=0.1";
  req.op = "reeb";
  CHECK(max_diff(eval_op(s, req).values[0].data, {0, 0, 1}) <= 1e-10);
  req.op = "upsilon";
  req.u = "x";
  CHECK(max_diff(eval_op(s, req).values[0].data, {0, -1, 0}) <= 1e-10);
  req.op = "D";
  req.rho = "x^2";
  const auto d = eval_op(s, req);
  CHECK(std::abs(d.values[0].data[0] - 2.0) <= 1e-10);
  CHECK(render_text(d).find("D[1,1] = 2\n") != std::string::npos);
  const auto j = nlohmann::json::parse(render_json(d));
  CHECK(j["values"]["D"][0][0] == 2.0);
}

TEST_CASE("eval argument errors") {
  const auto& s = example("darboux3");
  EvalRequest req;
  req.op = "reeb";
  for (const char* at : {"x=0.5,y=0.2", "x=0.5,y=0.2,z=0.1,x=1", "x=0.5,y=0.2,w=0.1", "x=a,y=0,z=0", "x=5,y=0,z=0"}) {
    req.at = at;
    CAPTURE(at);
    CHECK_THROWS_AS(eval_op(s, req), ConfigError);
  }
  req.at = "x=0.5,y=0.2,z=0.1";
  req.op = "S";
  CHECK_THROWS_AS(eval_op(s, req), ConfigError);
  req.op = "nablaQ";
  req.rho = "x";
  req.dir = 2;
  CHECK_THROWS_AS(eval_op(s, req), ConfigError);
  req.op = "frobnicate";
  CHECK_THROWS_AS(eval_op(s, req), ConfigError);
}

}  // TEST_SUITE
