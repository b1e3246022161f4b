// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace legendrean {

struct PropertyRecord {
  std::string name;
  std::string anchor;              // the identity being checked, in words
  std::optional<double> max_residual;  // empty when an evaluation failed
  double tol = 0.0;
  bool pass = true;
  Point worst_point;
  std::string error;  // first failure message, if any
};

struct SuiteOptions {
  std::string suite = "all";
  std::size_t points = 100;
  std::uint64_t seed = 42;
  int order = 2;
  std::optional<double> tol;  // overrides every non-margin tolerance
  bool timing = false;        // record wall-clock time (breaks byte-identical output)
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t points = 0;
  int order = 0;
  std::vector<PropertyRecord> properties;
  bool pass = true;
  double duration_ms = 0.0;
};

/// Suite names accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Uniform samples from the box shrunk by 5% on each side.
std::vector<Point> sample_points(const Chart& chart, std::size_t count, std::uint64_t seed);

/// Throws ConfigError for an unknown suite or invalid options. Evaluation
/// failures at sample points are recorded as failing properties.
SuiteReport run_suite(const Structures& s, const SuiteOptions& opts);

std::string render_json(const SuiteReport& r);
std::string render_text(const SuiteReport& r);

}  // namespace legendrean
