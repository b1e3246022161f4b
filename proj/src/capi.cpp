// SPDX-License-Identifier: Apache-2.0
#include "legendrean/legendrean.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "bgg.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "eval.hpp"
#include "suites.hpp"

struct leg_structure {
  legendrean::Structures s;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_last_line = 0;

leg_status status_of(legendrean::ErrorKind kind) {
  using legendrean::ErrorKind;
  switch (kind) {
    case ErrorKind::config: return LEG_ERR_CONFIG;
    case ErrorKind::syntax: return LEG_ERR_SYNTAX;
    case ErrorKind::validation: return LEG_ERR_VALIDATION;
    case ErrorKind::singularity: return LEG_ERR_SINGULARITY;
    case ErrorKind::order_exceeded: return LEG_ERR_ORDER_EXCEEDED;
    case ErrorKind::shape: return LEG_ERR_SHAPE;
    case ErrorKind::degenerate_frame: return LEG_ERR_DEGENERATE_FRAME;
    case ErrorKind::not_contact: return LEG_ERR_NOT_CONTACT;
    case ErrorKind::non_involutive: return LEG_ERR_NON_INVOLUTIVE;
    case ErrorKind::precondition: return LEG_ERR_PRECONDITION;
  }
  return LEG_ERR_INTERNAL;
}

leg_status fail(leg_status st, const std::string& msg, std::size_t line = 0) {
  g_last_error = msg;
  g_last_line = line;
  return st;
}

template <class F>
leg_status try_(F&& f) {
  g_last_error.clear();
  g_last_line = 0;
  try {
    f();
    return LEG_OK;
  } catch (const legendrean::ConfigError& e) {
    return fail(LEG_ERR_CONFIG, e.what(), e.line());
  } catch (const legendrean::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LEG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LEG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LEG_ERR_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += n + "\n";
  return out;
}

std::string str(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

const char* leg_version(void) { return "0.1.0"; }

const char* leg_status_string(leg_status status) {
  switch (status) {
    case LEG_OK: return "ok";
    case LEG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LEG_ERR_CONFIG: return "configuration error";
    case LEG_ERR_SYNTAX: return "syntax error";
    case LEG_ERR_VALIDATION: return "validation error";
    case LEG_ERR_SINGULARITY: return "singularity";
    case LEG_ERR_ORDER_EXCEEDED: return "jet order exceeded";
    case LEG_ERR_SHAPE: return "shape mismatch";
    case LEG_ERR_DEGENERATE_FRAME: return "degenerate frame";
    case LEG_ERR_NOT_CONTACT: return "not a contact form";
    case LEG_ERR_NON_INVOLUTIVE: return "distribution not involutive";
    case LEG_ERR_PRECONDITION: return "precondition violated";
    case LEG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* leg_last_error(void) { return g_last_error.c_str(); }

size_t leg_last_error_line(void) { return g_last_line; }

void leg_string_free(char* s) { std::free(s); }

leg_status leg_structure_load_file(const char* path, leg_structure** out) {
  if (!path || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  return try_([&] { *out = new leg_structure{legendrean::load_config(path)}; });
}

leg_status leg_structure_load_text(const char* text, leg_structure** out) {
  if (!text || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  return try_([&] { *out = new leg_structure{legendrean::load_config_text(text)}; });
}

leg_status leg_structure_load_example(const char* name, leg_structure** out) {
  if (!name || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  return try_([&] { *out = new leg_structure{legendrean::load_example(name)}; });
}

void leg_structure_free(leg_structure* s) { delete s; }

leg_status leg_structure_dim(const leg_structure* s, size_t* dim) {
  if (!s || !dim) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  *dim = s->s.cs.dim();
  return LEG_OK;
}

leg_status leg_examples_list(char** out) {
  if (!out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  return try_([&] { *out = dup(join(legendrean::example_names())); });
}

leg_status leg_example_text(const char* name, char** out) {
  if (!name || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  return try_([&] { *out = dup(legendrean::example_text(name)); });
}

leg_status leg_suites_list(char** out) {
  if (!out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  return try_([&] { *out = dup(join(legendrean::suite_names())); });
}

void leg_verify_options_init(leg_verify_options* opts) {
  if (!opts) return;
  opts->suite = "all";
  opts->points = 100;
  opts->seed = 42;
  opts->order = 2;
  opts->has_tol = 0;
  opts->tol = 0.0;
  opts->timing = 0;
}

leg_status leg_verify(const leg_structure* s, const leg_verify_options* opts, leg_format format,
                      char** report, int* passed) {
  if (!s || !opts || !report) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  if (format != LEG_FORMAT_TEXT && format != LEG_FORMAT_JSON)
    return fail(LEG_ERR_INVALID_ARGUMENT, "unknown format");
  return try_([&] {
    legendrean::SuiteOptions o;
    o.suite = opts->suite ? opts->suite : "all";
    o.points = opts->points;
    o.seed = opts->seed;
    o.order = opts->order;
    if (opts->has_tol) o.tol = opts->tol;
    o.timing = opts->timing != 0;
    const auto r = legendrean::run_suite(s->s, o);
    *report = dup(format == LEG_FORMAT_JSON ? legendrean::render_json(r) : legendrean::render_text(r));
    if (passed) *passed = r.pass ? 1 : 0;
  });
}

void leg_eval_request_init(leg_eval_request* req) {
  if (!req) return;
  *req = leg_eval_request{};
  req->dir = 1;
  req->order = 2;
}

leg_status leg_eval(const leg_structure* s, const leg_eval_request* req, leg_format format,
                    char** out) {
  if (!s || !req || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  if (format != LEG_FORMAT_TEXT && format != LEG_FORMAT_JSON)
    return fail(LEG_ERR_INVALID_ARGUMENT, "unknown format");
  return try_([&] {
    legendrean::EvalRequest r;
    r.op = str(req->op);
    r.u = str(req->u);
    r.rho = str(req->rho);
    r.t = str(req->t);
    r.eta = str(req->eta);
    r.dir = req->dir;
    r.at = str(req->at);
    r.order = req->order;
    const auto res = legendrean::eval_op(s->s, r);
    *out = dup(format == LEG_FORMAT_JSON ? legendrean::render_json(res) : legendrean::render_text(res));
  });
}

leg_status leg_reeb(const leg_structure* s, const double* point, size_t dim, double* out) {
  if (!s || !point || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  if (dim != s->s.cs.dim()) return fail(LEG_ERR_INVALID_ARGUMENT, "point dimension mismatch");
  return try_([&] {
    const auto r = legendrean::reeb(s->s.cs, {point, dim}, 1).values();
    std::copy(r.begin(), r.end(), out);
  });
}

leg_status leg_bgg_d(const leg_structure* s, const char* rho_expr, const double* point, size_t dim,
                     double* out, size_t out_len) {
  if (!s || !rho_expr || !point || !out) return fail(LEG_ERR_INVALID_ARGUMENT, "null argument");
  if (dim != s->s.cs.dim()) return fail(LEG_ERR_INVALID_ARGUMENT, "point dimension mismatch");
  const std::size_t n = s->s.split.rank();
  if (out_len < n * n) return fail(LEG_ERR_INVALID_ARGUMENT, "output buffer too small");
  return try_([&] {
    const auto rho = legendrean::parse_field(rho_expr, s->s.config.coords);
    const auto lm = legendrean::LocalModel::at(s->s.cs, s->s.split, {point, dim}, 2);
    const auto d = legendrean::bgg_d(lm, rho.eval(lm.coords())).d.values();
    std::copy(d.begin(), d.end(), out);
  });
}

}  // extern "C"
