// SPDX-License-Identifier: Apache-2.0
#include "eval.hpp"

#include <algorithm>
#include <charconv>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>

#include "bgg.hpp"
#include "errors.hpp"

namespace legendrean {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

ScalarField arg_field(const std::string& text, const std::string& flag,
                      const std::vector<std::string>& coords) {
  if (text.empty()) throw ConfigError(0, "operation needs --" + flag);
  try {
    return parse_field(text, coords);
  } catch (const Error& e) {
    throw ConfigError(0, "--" + flag + ": " + e.what());
  }
}

std::vector<ScalarField> arg_fields(const std::string& text, const std::string& flag,
                                    const std::vector<std::string>& coords, std::size_t count) {
  if (text.empty()) throw ConfigError(0, "operation needs --" + flag);
  const auto parts = split(text, ';');
  if (parts.size() != count)
    throw ConfigError(0, "--" + flag + ": expected " + std::to_string(count) +
                             " ';'-separated components, got " + std::to_string(parts.size()));
  std::vector<ScalarField> out;
  for (const auto& p : parts) out.push_back(arg_field(p, flag, coords));
  return out;
}

std::vector<double> values(std::span<const Jet> v) {
  std::vector<double> out;
  for (const auto& j : v) out.push_back(j.value());
  return out;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(const char* spec, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

const std::vector<std::string>& eval_op_names() {
  static const std::vector<std::string> names = {"reeb",    "upsilon", "split", "nablaQ", "nablaE",
                                                 "tractor", "S",       "P",     "D"};
  return names;
}

Point parse_point(std::string_view text, const std::vector<std::string>& coords) {
  if (trim(text).empty()) throw ConfigError(0, "--at is required");
  Point p(coords.size());
  std::set<std::size_t> seen;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError(0, "--at: expected name=value, got '" + item + "'");
    const std::string name = trim(item.substr(0, eq));
    const std::string val = trim(item.substr(eq + 1));
    const auto it = std::find(coords.begin(), coords.end(), name);
    if (it == coords.end()) throw ConfigError(0, "--at: unknown coordinate '" + name + "'");
    const std::size_t i = static_cast<std::size_t>(it - coords.begin());
    if (!seen.insert(i).second) throw ConfigError(0, "--at: coordinate '" + name + "' given twice");
    char* end = nullptr;
    errno = 0;
    p[i] = std::strtod(val.c_str(), &end);
    if (val.empty() || *end != '\0' || errno == ERANGE)
      throw ConfigError(0, "--at: invalid number '" + val + "' for '" + name + "'");
  }
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!seen.count(i)) throw ConfigError(0, "--at: missing coordinate '" + coords[i] + "'");
  return p;
}

EvalResult eval_op(const Structures& s, const EvalRequest& req) {
  const auto& ops = eval_op_names();
  if (std::find(ops.begin(), ops.end(), req.op) == ops.end())
    throw ConfigError(0, "unknown operation '" + req.op + "'");
  if (req.order < 1 || req.order > 3) throw ConfigError(0, "jet order must be 1, 2 or 3");
  const auto& coords = s.config.coords;
  const std::size_t m = coords.size();
  const std::size_t n = (m - 1) / 2;

  EvalResult r{req.op, coords, parse_point(req.at, coords), {}};
  if (!s.cs.chart().contains(r.point))
    throw ConfigError(0, "point " + format_point(r.point) + " lies outside the sample box");

  const bool needs_dir = req.op == "nablaQ" || req.op == "nablaE" || req.op == "tractor";
  if (needs_dir && (req.dir < 1 || static_cast<std::size_t>(req.dir) > n))
    throw ConfigError(0, "--dir must be between 1 and " + std::to_string(n));

  // Parse every argument before touching the point, so usage errors win.
  std::vector<ScalarField> t_fields, eta_fields;
  std::optional<ScalarField> u_field, rho_field;
  if (req.op == "upsilon") u_field = arg_field(req.u, "u", coords);
  if (req.op == "nablaQ" || req.op == "S" || req.op == "D") rho_field = arg_field(req.rho, "rho", coords);
  if (req.op == "split" || req.op == "tractor") t_fields = arg_fields(req.t, "t", coords, m);
  if (req.op == "nablaE") eta_fields = arg_fields(req.eta, "eta", coords, n);

  const LocalModel lm = LocalModel::at(s.cs, s.split, r.point, req.order);
  const auto x = lm.coords();
  const TangentJet* xi = needs_dir ? &lm.f(static_cast<std::size_t>(req.dir - 1)) : nullptr;
  auto tangent = [&] {
    std::vector<Jet> c;
    for (const auto& f : t_fields) c.push_back(f.eval(x));
    return TangentJet(std::move(c));
  };
  auto& out = r.values;

  if (req.op == "reeb") {
    out.push_back({"r", lm.reeb().values()});
  } else if (req.op == "upsilon") {
    const Upsilon ups = upsilon(lm, u_field->eval(x));
    out.push_back({"upsilon", ups.field.values()});
    out.push_back({"coeffs", values(ups.coeffs)});
  } else if (req.op == "split") {
    const SplitTractor st = split_tractor(lm, tangent());
    out.push_back({"rho", {st.rho.value()}});
    out.push_back({"mu", values(st.mu)});
  } else if (req.op == "nablaQ") {
    out.push_back({"nablaQ", {nabla_q(lm, *xi, rho_field->eval(x)).value()}});
  } else if (req.op == "nablaE") {
    std::vector<Jet> coeffs;
    for (const auto& f : eta_fields) coeffs.push_back(f.eval(x));
    const NablaEValue v = nabla_e(lm, *xi, lm.e_field(coeffs));
    out.push_back({"nablaE", values(v.coeffs)});
    out.push_back({"cross_residual", {v.cross_residual}});
  } else if (req.op == "tractor") {
    const SplitTractor st = tractor_connection(lm, *xi, tangent());
    out.push_back({"rho", {st.rho.value()}});
    out.push_back({"mu", values(st.mu)});
  } else if (req.op == "S") {
    const SplitTractor st = splitting_operator(lm, rho_field->eval(x));
    out.push_back({"rho", {st.rho.value()}});
    out.push_back({"mu", values(st.mu)});
  } else if (req.op == "P") {
    out.push_back({"P", rho_tensor(lm).values(), n});
  } else {
    const BggValue d = bgg_d(lm, rho_field->eval(x));
    out.push_back({"D", d.d.values(), n});
    out.push_back({"cross_residual", {d.cross_residual}});
  }
  return r;
}

std::string render_text(const EvalResult& r) {
  std::string out = r.op + " at ";
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    out += (i ? ", " : "") + r.coords[i] + "=" + shortest(r.point[i]);
  out += "\n";
  for (const auto& v : r.values) {
    if (v.rows > 0) {
      const std::size_t cols = v.data.size() / v.rows;
      for (std::size_t a = 0; a < v.rows; ++a)
        for (std::size_t b = 0; b < cols; ++b)
          out += "  " + v.name + "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                 "] = " + fmt("%.12g", v.data[a * cols + b]) + "\n";
    } else if (v.data.size() == 1) {
      out += "  " + v.name + " = " + fmt("%.12g", v.data[0]) + "\n";
    } else {
      out += "  " + v.name + " = (";
      for (std::size_t i = 0; i < v.data.size(); ++i) out += (i ? ", " : "") + fmt("%.12g", v.data[i]);
      out += ")\n";
    }
  }
  return out;
}

std::string render_json(const EvalResult& r) {
  std::string out = "{\"op\":\"" + r.op + "\",\"point\":{";
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    out += (i ? "," : "") + ("\"" + r.coords[i] + "\":") + fmt("%.17g", r.point[i]);
  out += "},\"values\":{";
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    const auto& v = r.values[k];
    out += (k ? "," : "") + ("\"" + v.name + "\":");
    const std::size_t cols = v.rows ? v.data.size() / v.rows : v.data.size();
    auto row = [&](std::size_t from) {
      std::string s = "[";
      for (std::size_t i = 0; i < cols; ++i) s += (i ? "," : "") + fmt("%.17g", v.data[from + i]);
      return s + "]";
    };
    if (v.rows) {
      out += "[";
      for (std::size_t a = 0; a < v.rows; ++a) out += (a ? "," : "") + row(a * cols);
      out += "]";
    } else {
      out += row(0);
    }
  }
  return out + "}}\n";
}

}  // namespace legendrean
