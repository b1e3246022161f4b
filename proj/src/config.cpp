// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace legendrean {

namespace {

using nlohmann::json;

const std::map<std::string, std::string>& builtin_examples() {
  static const std::map<std::string, std::string> examples = {
      {"darboux3", R"cfg(# dz - y dx on R^3 with the coordinate Legendrean splitting.
[manifold]  coords = ["x", "y", "z"]
[contact]   theta  = ["-y", "0", "1"]
[splitting] E = [["0", "1", "0"]]
            F = [["1", "0", "y"]]
[sample]    box = [[-1, 1], [-1, 1], [-1, 1]]
[rescale]   u = ["x", "x*y", "0.3*sin(x)*y"]
[sections]  qsec = ["1", "x^2", "sin(x)*y + z"]
            tractors = [["0", "0", "1"],
                        ["x*y", "z", "y^2"],
                        ["sin(y)", "cos(x)*z", "1 + x^2"]]
)cfg"},
      {"darboux5", R"cfg(# dz - y1 dx1 - y2 dx2 on R^5; E spanned by the d/dy_i, F by d/dx_i + y_i d/dz.
[manifold]  coords = ["x1", "y1", "x2", "y2", "z"]
[contact]   theta  = ["-y1", "0", "-y2", "0", "1"]
[splitting] E = [["0", "1", "0", "0", "0"],
                 ["0", "0", "0", "1", "0"]]
            F = [["1", "0", "0", "0", "y1"],
                 ["0", "0", "1", "0", "y2"]]
[sample]    box = [[-1, 1], [-1, 1], [-1, 1], [-1, 1], [-1, 1]]
[rescale]   u = ["x1", "x1*x2", "0.3*sin(x1)*y2"]
[sections]  qsec = ["1", "x1^2*x2 + y1", "exp(0.5*x2)*y2 + z*x1"]
            tractors = [["0", "0", "0", "0", "1"],
                        ["x1*y2", "z", "y1^2", "x2", "1"],
                        ["sin(y1)", "cos(x2)*z", "x1", "y2*z", "1 + x1^2"]]
)cfg"},
      {"twisted5", R"cfg(# Same contact form as darboux5; F is sheared so that [F1, F2] = d/dy1.
[manifold]  coords = ["x1", "y1", "x2", "y2", "z"]
[contact]   theta  = ["-y1", "0", "-y2", "0", "1"]
[splitting] E = [["0", "1", "0", "0", "0"],
                 ["0", "0", "0", "1", "0"]]
            F = [["1", "0", "0", "x1", "y1"],
                 ["0", "x1", "1", "0", "y2"]]
[sample]    box = [[-1, 1], [-1, 1], [-1, 1], [-1, 1], [-1, 1]]
[rescale]   u = ["x1", "x1*x2", "0.3*sin(x1)*y2"]
[sections]  qsec = ["1", "x1^2*x2 + y1", "exp(0.5*x2)*y2 + z*x1"]
            tractors = [["0", "0", "0", "0", "1"],
                        ["x1*y2", "z", "y1^2", "x2", "1"],
                        ["sin(y1)", "cos(x2)*z", "x1", "y2*z", "1 + x1^2"]]
[tolerance] symmetry = 1e-7
            d_invariance = 1e-7
)cfg"},
  };
  return examples;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

// Net bracket depth of a line, ignoring brackets inside strings.
int bracket_balance(std::string_view s) {
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
    if (quoted) continue;
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
  }
  return depth;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string expr_entry(const json& v, std::size_t line, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return fmt(v.get<double>());
  throw ConfigError(line, what + ": expected an expression string or a number");
}

std::vector<std::string> expr_list(const json& v, std::size_t line, const std::string& what) {
  if (!v.is_array()) throw ConfigError(line, what + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(expr_entry(v[i], line, what + "[" + std::to_string(i + 1) + "]"));
  return out;
}

std::vector<std::vector<std::string>> expr_rows(const json& v, std::size_t line,
                                                const std::string& what) {
  if (!v.is_array()) throw ConfigError(line, what + ": expected an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(expr_list(v[i], line, what + "[" + std::to_string(i + 1) + "]"));
  return out;
}

double number(const json& v, std::size_t line, const std::string& what) {
  if (!v.is_number()) throw ConfigError(line, what + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(line, what + ": must be finite");
  return d;
}

void assign(StructureConfig& c, const std::string& section, const std::string& key,
            const json& v, std::size_t line) {
  const std::string id = section + "." + key;
  if (c.lines.count(id)) throw ConfigError(line, "duplicate key '" + key + "' in [" + section + "]");
  c.lines[id] = line;

  if (id == "manifold.coords") {
    c.coords = expr_list(v, line, "coords");
  } else if (id == "contact.theta") {
    c.theta = expr_list(v, line, "theta");
  } else if (id == "splitting.E") {
    c.e_frame = expr_rows(v, line, "E");
  } else if (id == "splitting.F") {
    c.f_frame = expr_rows(v, line, "F");
  } else if (id == "sample.box") {
    if (!v.is_array()) throw ConfigError(line, "box: expected an array of [lo, hi] pairs");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string what = "box[" + std::to_string(i + 1) + "]";
      if (!v[i].is_array() || v[i].size() != 2)
        throw ConfigError(line, what + ": expected [lo, hi]");
      c.box.push_back({number(v[i][0], line, what), number(v[i][1], line, what)});
    }
  } else if (id == "rescale.u") {
    c.rescalings = expr_list(v, line, "u");
  } else if (id == "sections.qsec") {
    c.qsec = expr_list(v, line, "qsec");
  } else if (id == "sections.tractors") {
    c.tractors = expr_rows(v, line, "tractors");
  } else if (section == "tolerance") {
    const double t = number(v, line, key);
    if (t < 0.0) throw ConfigError(line, key + ": tolerance must be non-negative");
    c.tolerances[key] = t;
  } else {
    throw ConfigError(line, "unknown key '" + key + "' in [" + section + "]");
  }
}

const std::set<std::string> kSections = {"manifold", "contact",  "splitting", "sample",
                                         "rescale",  "sections", "tolerance"};

std::size_t line_of(const StructureConfig& c, const std::string& id) {
  auto it = c.lines.find(id);
  return it == c.lines.end() ? 0 : it->second;
}

ScalarField field(const StructureConfig& c, const std::string& id, const std::string& what,
                  const std::string& text) {
  try {
    return parse_field(text, c.coords);
  } catch (const Error& e) {
    throw ConfigError(line_of(c, id), what + ": " + e.what());
  }
}

VectorField vector_field(const StructureConfig& c, const std::string& id, const std::string& what,
                         const std::vector<std::string>& row) {
  if (row.size() != c.coords.size())
    throw ConfigError(line_of(c, id), what + ": expected " + std::to_string(c.coords.size()) +
                                          " components, got " + std::to_string(row.size()));
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < row.size(); ++i)
    comps.push_back(field(c, id, what + "[" + std::to_string(i + 1) + "]", row[i]));
  return VectorField(std::move(comps));
}

}  // namespace

StructureConfig parse_config(std::string_view text, std::string name) {
  StructureConfig c;
  c.name = std::move(name);
  std::string section;
  std::string pending_key, pending_value;
  std::size_t pending_line = 0;
  int depth = 0;

  auto finish = [&] {
    json v;
    try {
      v = json::parse(pending_value);
    } catch (const json::parse_error&) {
      throw ConfigError(pending_line, "malformed value for '" + pending_key + "'");
    }
    assign(c, section, pending_key, v, pending_line);
    pending_key.clear();
    pending_value.clear();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    for (const char ch : raw)
      if (static_cast<unsigned char>(ch) < 0x20 && ch != '\t')
        throw ConfigError(lineno, "control character in line");
    std::string line = trim(strip_comment(raw));
    if (!pending_key.empty()) {
      pending_value += "\n" + line;
      depth += bracket_balance(line);
      if (depth < 0) throw ConfigError(lineno, "unbalanced ']'");
      if (depth == 0) finish();
      continue;
    }
    if (line.empty()) continue;

    if (line[0] == '[') {
      const auto close = line.find(']');
      const std::string name_part = close == std::string::npos ? "" : trim(line.substr(1, close - 1));
      if (!is_identifier(name_part)) throw ConfigError(lineno, "malformed section header");
      if (!kSections.count(name_part)) throw ConfigError(lineno, "unknown section [" + name_part + "]");
      section = name_part;
      line = trim(line.substr(close + 1));
      if (line.empty()) continue;
    }
    if (section.empty()) throw ConfigError(lineno, "key outside of any section");

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!is_identifier(key)) throw ConfigError(lineno, "malformed key '" + key + "'");
    pending_key = key;
    pending_value = trim(line.substr(eq + 1));
    pending_line = lineno;
    if (pending_value.empty()) throw ConfigError(lineno, "missing value for '" + key + "'");
    depth = bracket_balance(pending_value);
    if (depth < 0) throw ConfigError(lineno, "unbalanced ']'");
    if (depth == 0) finish();
  }
  if (!pending_key.empty())
    throw ConfigError(pending_line, "unterminated value for '" + pending_key + "'");

  if (c.coords.empty()) throw ConfigError(0, "missing [manifold] coords");
  if (c.theta.empty()) throw ConfigError(0, "missing [contact] theta");
  if (!c.lines.count("splitting.E")) throw ConfigError(0, "missing [splitting] E");
  if (!c.lines.count("splitting.F")) throw ConfigError(0, "missing [splitting] F");
  if (c.box.empty()) throw ConfigError(0, "missing [sample] box");
  return c;
}

Structures build_structures(const StructureConfig& c) {
  const std::size_t coords_line = line_of(c, "manifold.coords");
  std::set<std::string> seen;
  for (const auto& name : c.coords) {
    if (!is_identifier(name) || is_reserved_name(name))
      throw ConfigError(coords_line, "invalid coordinate name '" + name + "'");
    if (!seen.insert(name).second)
      throw ConfigError(coords_line, "duplicate coordinate name '" + name + "'");
  }
  const std::size_t m = c.coords.size();
  if (m < 3 || m > 9 || m % 2 == 0)
    throw ConfigError(coords_line, "chart dimension must be odd and between 3 and 9, got " +
                                       std::to_string(m));
  if (c.box.size() != m)
    throw ConfigError(line_of(c, "sample.box"),
                      "box has " + std::to_string(c.box.size()) + " intervals for " +
                          std::to_string(m) + " coordinates");
  for (std::size_t i = 0; i < m; ++i)
    if (!(c.box[i].lo < c.box[i].hi))
      throw ConfigError(line_of(c, "sample.box"), "box interval for '" + c.coords[i] + "' is empty");
  if (c.theta.size() != m)
    throw ConfigError(line_of(c, "contact.theta"), "theta has " + std::to_string(c.theta.size()) +
                                                       " components, expected " + std::to_string(m));
  const std::size_t n = (m - 1) / 2;
  if (c.e_frame.size() != n)
    throw ConfigError(line_of(c, "splitting.E"), "E needs " + std::to_string(n) + " frame fields");
  if (c.f_frame.size() != n)
    throw ConfigError(line_of(c, "splitting.F"), "F needs " + std::to_string(n) + " frame fields");

  std::vector<ScalarField> theta;
  for (std::size_t i = 0; i < m; ++i)
    theta.push_back(field(c, "contact.theta", "theta[" + std::to_string(i + 1) + "]", c.theta[i]));
  std::vector<VectorField> e, f;
  for (std::size_t a = 0; a < n; ++a) {
    e.push_back(vector_field(c, "splitting.E", "E[" + std::to_string(a + 1) + "]", c.e_frame[a]));
    f.push_back(vector_field(c, "splitting.F", "F[" + std::to_string(a + 1) + "]", c.f_frame[a]));
  }

  Structures s{c, ContactStructure(Chart(c.coords, c.box), OneForm(std::move(theta))),
               LegendreanSplitting(std::move(e), std::move(f)), {}, {}, {}};
  for (std::size_t i = 0; i < c.rescalings.size(); ++i)
    s.rescalings.push_back(field(c, "rescale.u", "u[" + std::to_string(i + 1) + "]", c.rescalings[i]));
  for (std::size_t i = 0; i < c.qsec.size(); ++i)
    s.qsec.push_back(field(c, "sections.qsec", "qsec[" + std::to_string(i + 1) + "]", c.qsec[i]));
  for (std::size_t i = 0; i < c.tractors.size(); ++i)
    s.tractors.push_back(vector_field(c, "sections.tractors",
                                      "tractors[" + std::to_string(i + 1) + "]", c.tractors[i]));
  return s;
}

std::vector<Point> probe_points(const Chart& chart, std::size_t count) {
  // Additive recurrence with irrational steps: fixed, well spread, and identical on every run.
  static const double steps[] = {0.6180339887498949, 0.4142135623730951, 0.7320508075688772,
                                 0.2360679774997897, 0.6457513110645906, 0.3166247903554,
                                 0.6055512754639891, 0.1231056256176605, 0.3588989435406736};
  std::vector<Point> pts;
  for (std::size_t k = 0; k < count; ++k) {
    Point p(chart.dim());
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      const double t = std::fmod(0.5 + (k + 1) * steps[i], 1.0);
      const Interval& iv = chart.box[i];
      p[i] = iv.lo + (iv.hi - iv.lo) * (0.05 + 0.9 * t);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

void validate(const Structures& s) {
  constexpr double kPointTol = 1e-10;
  auto fail = [](const std::string& what, const Point& p, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.3g)", v);
    throw PointError(ErrorKind::validation, std::string("probe point: ") + what + buf, p);
  };
  for (const Point& p : probe_points(s.cs.chart())) {
    StructureDiagnostics d;
    try {
      d = diagnose(s.cs, s.split, p, 1);
    } catch (const PointError& e) {
      throw PointError(ErrorKind::validation, "probe point: " + e.detail(), p);
    }
    if (!(std::abs(d.bordered_det) > kContactTol)) fail("contact condition violated", p, d.bordered_det);
    if (!(d.reeb_residual <= kPointTol)) fail("Reeb equations not solvable", p, d.reeb_residual);
    if (!(d.horizontality <= kPointTol)) fail("frame field not in ker theta", p, d.horizontality);
    if (!(d.isotropy_e <= kPointTol)) fail("E is not isotropic for dtheta", p, d.isotropy_e);
    if (!(d.isotropy_f <= kPointTol)) fail("F is not isotropic for dtheta", p, d.isotropy_f);
    if (!(d.basis_condition < kCondMax)) fail("frames {r, E, F} are not independent", p, d.basis_condition);
    if (!(std::abs(d.frame_det) > kContactTol)) fail("dtheta degenerate on the frame of H", p, d.frame_det);
  }
}

Structures load_config_text(std::string_view text, std::string name) {
  Structures s = build_structures(parse_config(text, std::move(name)));
  validate(s);
  return s;
}

Structures load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config_text(buf.str(), path);
}

Structures load_example(const std::string& name) { return load_config_text(example_text(name), name); }

std::vector<std::string> example_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : builtin_examples()) names.push_back(k);
  return names;
}

const std::string& example_text(const std::string& name) {
  const auto& ex = builtin_examples();
  auto it = ex.find(name);
  if (it == ex.end()) throw ConfigError(0, "unknown example '" + name + "'");
  return it->second;
}

}  // namespace legendrean
