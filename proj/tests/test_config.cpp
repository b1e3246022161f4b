// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "support.hpp"

using namespace legendrean;

namespace {

const char* kMinimal = R"cfg(
[manifold]
coords = ["x", "y", "z"]   # trailing comment
[contact]   theta = ["-y", "0",
                     "1"]
[splitting] E = [["0", "1", "0"]]
            F = [["1", "0", "y"]]
[sample]    box = [[-1, 1], [-2, 2], [0, 1]]
[tolerance] five_term = 1e-11
)cfg";

struct Expectation {
  std::string kind;
  std::size_t line = 0;
};

Expectation read_expectation(const std::filesystem::path& file) {
  std::ifstream in(file);
  std::string first;
  std::getline(in, first);
  std::istringstream ss(first);
  std::string hash, tag;
  Expectation e;
  ss >> hash >> tag >> e.kind >> e.line;
  REQUIRE(tag == "expect:");
  return e;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal structure parses with comments and multi-line values") {
  const auto c = parse_config(kMinimal);
  CHECK(c.coords == std::vector<std::string>{"x", "y", "z"});
  CHECK(c.theta == std::vector<std::string>{"-y", "0", "1"});
  CHECK(c.box[1].lo == -2.0);
  CHECK(c.tolerances.at("five_term") == 1e-11);
  CHECK(c.lines.at("contact.theta") == 4);
  CHECK(c.lines.at("splitting.F") == 7);
  const auto s = load_config_text(kMinimal);
  CHECK(s.cs.dim() == 3);
  CHECK(s.rescalings.empty());
}

TEST_CASE("numbers are accepted where expressions are expected") {
  std::string text = kMinimal;
  text.replace(text.find("\"0\",\n"), 5, "0,\n");
  CHECK(parse_config(text).theta[1] == "0");
}

TEST_CASE("a '#' inside a quoted expression is not a comment") {
  std::string text = kMinimal;
  text.replace(text.find("\"-y\""), 4, "\"-y#\"");
  try {
    load_config_text(text);
    FAIL("accepted '#'");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("theta[1]") != std::string::npos);
  }
}

TEST_CASE("built-in examples round-trip through their text") {
  for (const auto& name : example_names()) {
    const auto from_text = load_config_text(example_text(name), name);
    const auto builtin = load_example(name);
    CHECK(from_text.config.coords == builtin.config.coords);
    CHECK(from_text.config.f_frame == builtin.config.f_frame);
    CHECK(from_text.rescalings.size() == 3);
    CHECK(from_text.qsec.size() == 3);
    CHECK(from_text.tractors.size() == 3);
  }
  CHECK(example_names() == std::vector<std::string>{"darboux3", "darboux5", "twisted5"});
  CHECK(load_example("twisted5").config.tolerances.at("symmetry") == 1e-7);
  CHECK_THROWS_AS(load_example("nope"), ConfigError);
}

TEST_CASE("malformed corpus yields structured errors") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(LEGENDREAN_TEST_DATA)) {
    if (entry.path().extension() != ".cfg") continue;
    ++seen;
    const auto expected = read_expectation(entry.path());
    CAPTURE(entry.path().filename().string());
    try {
      load_config(entry.path().string());
      FAIL("loaded without error");
    } catch (const ConfigError& e) {
      CHECK(expected.kind == "config");
      CHECK(e.line() == expected.line);
    } catch (const Error& e) {
      CHECK(expected.kind == to_string(e.kind()));
    }
  }
  CHECK(seen >= 20);
}

TEST_CASE("validation names the failing invariant and probe point") {
  std::string text = kMinimal;
  text.replace(text.find("[\"1\", \"0\", \"y\"]"), 15, "[\"0\", \"1\", \"0\"]");
  try {
    load_config_text(text);
    FAIL("E = F accepted");
  } catch (const PointError& e) {
    CHECK(e.kind() == ErrorKind::validation);
    CHECK(e.point().size() == 3);
    CHECK(std::string(e.what()).find("independent") != std::string::npos);
  }
}

TEST_CASE("probe points are fixed and inside the box") {
  const Chart chart({"x", "y", "z"}, {{-1, 1}, {-2, 2}, {0, 1}});
  const auto a = probe_points(chart);
  CHECK(a.size() == 16);
  CHECK(a == probe_points(chart));
  for (const auto& p : a) CHECK(chart.contains(p));
}

TEST_CASE("missing files are config errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/structure.cfg"), ConfigError);
}

}  // TEST_SUITE
