// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "config.hpp"

namespace legendrean {

struct EvalRequest {
  std::string op;   // reeb, upsilon, split, nablaQ, nablaE, tractor, S, P, D
  std::string u;    // upsilon: log scale
  std::string rho;  // nablaQ, S, D: theta-coefficient of the Q-section
  std::string t;    // split, tractor: vector field components separated by ';'
  std::string eta;  // nablaE: E-frame coefficients separated by ';'
  int dir = 1;      // nablaQ, nablaE, tractor: 1-based F-frame index
  std::string at;   // "x=0.5,y=0.2,z=0.1"
  int order = 2;
};

struct EvalValue {
  std::string name;
  std::vector<double> data;
  std::size_t rows = 0;  // > 0 for a row-major matrix
};

struct EvalResult {
  std::string op;
  std::vector<std::string> coords;
  Point point;
  std::vector<EvalValue> values;
};

const std::vector<std::string>& eval_op_names();

/// Parses "name=value,..." requiring every coordinate exactly once.
Point parse_point(std::string_view text, const std::vector<std::string>& coords);

/// Argument problems throw ConfigError; failures at the point propagate as PointError.
EvalResult eval_op(const Structures& s, const EvalRequest& req);

std::string render_text(const EvalResult& r);
std::string render_json(const EvalResult& r);

}  // namespace legendrean
