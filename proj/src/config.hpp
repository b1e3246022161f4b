// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "contact.hpp"

namespace legendrean {

/// Raw contents of a structure file, before expressions are parsed.
struct StructureConfig {
  std::string name;
  std::vector<std::string> coords;
  std::vector<std::string> theta;
  std::vector<std::vector<std::string>> e_frame;
  std::vector<std::vector<std::string>> f_frame;
  std::vector<Interval> box;
  std::vector<std::string> rescalings;
  std::vector<std::string> qsec;
  std::vector<std::vector<std::string>> tractors;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::size_t> lines;  // "section.key" -> 1-based line
};

struct Structures {
  StructureConfig config;
  ContactStructure cs;
  LegendreanSplitting split;
  std::vector<ScalarField> rescalings;
  std::vector<ScalarField> qsec;
  std::vector<VectorField> tractors;
};

/// Throws ConfigError carrying the offending line.
StructureConfig parse_config(std::string_view text, std::string name = "config");

/// Parses all expressions and builds the structures; no pointwise validation.
Structures build_structures(const StructureConfig& config);

/// Checks the contact condition, horizontality, isotropy and frame independence at
/// 16 fixed probe points in the box. Throws PointError(validation).
void validate(const Structures& s);
std::vector<Point> probe_points(const Chart& chart, std::size_t count = 16);

Structures load_config_text(std::string_view text, std::string name = "config");
Structures load_config(const std::string& path);
Structures load_example(const std::string& name);

std::vector<std::string> example_names();
/// Config text of a built-in example; throws ConfigError for unknown names.
const std::string& example_text(const std::string& name);

}  // namespace legendrean
