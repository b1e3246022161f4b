// SPDX-License-Identifier: Apache-2.0
// Command-line front end; talks to the engine only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>

#include "legendrean/legendrean.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct StructureDeleter {
  void operator()(leg_structure* s) const { leg_structure_free(s); }
};
using StructurePtr = std::unique_ptr<leg_structure, StructureDeleter>;

struct StringDeleter {
  void operator()(char* s) const { leg_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

int report_error(leg_status st) {
  std::fprintf(stderr, "legctl: %s: %s\n", leg_status_string(st), leg_last_error());
  switch (st) {
    case LEG_ERR_CONFIG:
    case LEG_ERR_SYNTAX:
    case LEG_ERR_VALIDATION:
    case LEG_ERR_INVALID_ARGUMENT:
      return kExitConfig;
    default:
      return kExitFail;
  }
}

struct Source {
  std::string config;
  std::string example;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* c = cmd->add_option("--config", src.config, "Structure file");
  auto* e = cmd->add_option("--example", src.example, "Built-in structure (see 'examples list')");
  c->excludes(e);
  e->excludes(c);
}

leg_status load(const Source& src, StructurePtr& out) {
  leg_structure* s = nullptr;
  leg_status st;
  if (!src.config.empty()) {
    st = leg_structure_load_file(src.config.c_str(), &s);
  } else if (!src.example.empty()) {
    st = leg_structure_load_example(src.example.c_str(), &s);
  } else {
    std::fprintf(stderr, "legctl: one of --config or --example is required\n");
    return LEG_ERR_CONFIG;
  }
  out.reset(s);
  return st;
}

void print(const char* s) {
  std::fputs(s, stdout);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify and evaluate invariant operators of Legendrean contact structures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", leg_version());

  Source src;
  std::string format = "text";
  const auto formats = CLI::IsMember({"text", "json"});

  auto* verify = app.add_subcommand("verify", "Run a verification suite at random sample points");
  add_source(verify, src);
  std::string suite = "all";
  std::size_t points = 100;
  std::uint64_t seed = 42;
  int order = 2;
  double tol = 0.0;
  bool timing = false;
  verify->add_option("--suite", suite, "Suite name (see --list-suites)")->capture_default_str();
  verify->add_option("--points", points, "Number of sample points")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  verify->add_option("--order", order, "Jet order")->capture_default_str()->check(CLI::Range(1, 3));
  auto* tol_opt = verify->add_option("--tol", tol, "Replace every non-margin tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--format", format, "Output format")->capture_default_str()->check(formats);
  verify->add_flag("--timing", timing, "Report wall-clock duration (output is no longer reproducible)");
  bool list_suites = false;
  verify->add_flag("--list-suites", list_suites, "Print suite names and exit");

  auto* eval = app.add_subcommand("eval", "Evaluate one operation at a point");
  add_source(eval, src);
  std::string op, u, rho, t, eta, at;
  int dir = 1;
  int eval_order = 2;
  eval->add_option("--op", op, "reeb, upsilon, split, nablaQ, nablaE, tractor, S, P or D")->required();
  eval->add_option("--u", u, "Log scale of a rescaling (upsilon)");
  eval->add_option("--rho", rho, "Theta-coefficient of a Q-section (nablaQ, S, D)");
  eval->add_option("--t", t, "Vector field components separated by ';' (split, tractor)");
  eval->add_option("--eta", eta, "E-frame coefficients separated by ';' (nablaE)");
  eval->add_option("--dir", dir, "1-based F-frame direction (nablaQ, nablaE, tractor)")->capture_default_str();
  eval->add_option("--at", at, "Point, e.g. \"x=0.5,y=0.2,z=0.1\"")->required();
  eval->add_option("--order", eval_order, "Jet order")->capture_default_str()->check(CLI::Range(1, 3));
  eval->add_option("--format", format, "Output format")->capture_default_str()->check(formats);

  auto* examples = app.add_subcommand("examples", "List or print built-in structures");
  std::string action = "list", name;
  examples->add_option("action", action, "list or show")->check(CLI::IsMember({"list", "show"}));
  examples->add_option("name", name, "Example to show");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  const leg_format fmt = format == "json" ? LEG_FORMAT_JSON : LEG_FORMAT_TEXT;

  if (examples->parsed()) {
    char* out = nullptr;
    leg_status st;
    if (action == "list") {
      st = leg_examples_list(&out);
    } else {
      if (name.empty()) {
        std::fprintf(stderr, "legctl: examples show needs a name\n");
        return kExitConfig;
      }
      st = leg_example_text(name.c_str(), &out);
    }
    if (st != LEG_OK) return report_error(st);
    OwnedString owned(out);
    print(owned.get());
    return kExitPass;
  }

  if (verify->parsed() && list_suites) {
    char* out = nullptr;
    if (const leg_status st = leg_suites_list(&out); st != LEG_OK) return report_error(st);
    OwnedString owned(out);
    print(owned.get());
    return kExitPass;
  }

  StructurePtr structure;
  if (const leg_status st = load(src, structure); st != LEG_OK) {
    if (!structure && st == LEG_ERR_CONFIG && src.config.empty() && src.example.empty()) return kExitConfig;
    return report_error(st);
  }

  if (verify->parsed()) {
    leg_verify_options opts;
    leg_verify_options_init(&opts);
    opts.suite = suite.c_str();
    opts.points = points;
    opts.seed = seed;
    opts.order = order;
    opts.has_tol = tol_opt->count() > 0;
    opts.tol = tol;
    opts.timing = timing;
    char* report = nullptr;
    int passed = 0;
    if (const leg_status st = leg_verify(structure.get(), &opts, fmt, &report, &passed); st != LEG_OK)
      return report_error(st);
    OwnedString owned(report);
    print(owned.get());
    return passed ? kExitPass : kExitFail;
  }

  leg_eval_request req;
  leg_eval_request_init(&req);
  req.op = op.c_str();
  req.u = u.c_str();
  req.rho = rho.c_str();
  req.t = t.c_str();
  req.eta = eta.c_str();
  req.dir = dir;
  req.at = at.c_str();
  req.order = eval_order;
  char* out = nullptr;
  if (const leg_status st = leg_eval(structure.get(), &req, fmt, &out); st != LEG_OK)
    return report_error(st);
  OwnedString owned(out);
  print(owned.get());
  return kExitPass;
}
