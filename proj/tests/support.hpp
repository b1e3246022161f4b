// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "suites.hpp"

namespace legendrean::testing {

inline const Structures& example(const std::string& name) {
  static const Structures d3 = load_example("darboux3");
  static const Structures d5 = load_example("darboux5");
  static const Structures t5 = load_example("twisted5");
  if (name == "darboux3") return d3;
  if (name == "darboux5") return d5;
  return t5;
}

inline LocalModel model(const std::string& name, const Point& p, int order = 2) {
  const auto& s = example(name);
  return LocalModel::at(s.cs, s.split, p, order);
}

inline LocalModel rescaled(const std::string& name, const std::string& u, const Point& p,
                           int order = 2) {
  const auto& s = example(name);
  return LocalModel::at(s.cs.rescale(parse_field(u, s.config.coords)), s.split, p, order);
}

inline Jet field_at(const LocalModel& lm, const std::string& name, const std::string& expr) {
  return parse_field(expr, example(name).config.coords).eval(lm.coords());
}

inline TangentJet vector_at(const LocalModel& lm, const std::string& name,
                            const std::vector<std::string>& comps) {
  std::vector<Jet> c;
  for (const auto& e : comps) c.push_back(field_at(lm, name, e));
  return TangentJet(std::move(c));
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(std::span<const Jet> a, std::span<const Jet> b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i].value() - b[i].value()));
  return m;
}

/// Points drawn from the shrunk sample box of an example.
inline std::vector<Point> points(const std::string& name, std::size_t count, std::uint64_t seed = 7) {
  return sample_points(example(name).cs.chart(), count, seed);
}

}  // namespace legendrean::testing
