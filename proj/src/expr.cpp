// SPDX-License-Identifier: Apache-2.0
#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <type_traits>

#include "errors.hpp"

namespace legendrean {

bool is_unary(ExprOp op) noexcept {
  switch (op) {
    case ExprOp::neg:
    case ExprOp::exp:
    case ExprOp::log:
    case ExprOp::sin:
    case ExprOp::cos:
    case ExprOp::sqrt: return true;
    default: return false;
  }
}

bool is_binary(ExprOp op) noexcept {
  switch (op) {
    case ExprOp::add:
    case ExprOp::sub:
    case ExprOp::mul:
    case ExprOp::div:
    case ExprOp::pow: return true;
    default: return false;
  }
}

const char* function_name(ExprOp op) noexcept {
  switch (op) {
    case ExprOp::exp: return "exp";
    case ExprOp::log: return "log";
    case ExprOp::sin: return "sin";
    case ExprOp::cos: return "cos";
    case ExprOp::sqrt: return "sqrt";
    default: return nullptr;
  }
}

bool is_reserved_name(std::string_view name) noexcept {
  return name == "exp" || name == "log" || name == "sin" || name == "cos" || name == "sqrt";
}

namespace {

ExprNodePtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::constant;
  n->value = v;
  return n;
}

ExprNodePtr make_node(ExprOp op, ExprNodePtr lhs, ExprNodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

constexpr int kMaxDepth = 256;

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& coords)
      : text_(text), coords_(coords) {}

  ExprNodePtr parse() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    auto root = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return root;
  }

 private:
  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) throw SyntaxError(p.pos_, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprNodePtr expr() {
    DepthGuard guard(*this);
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(ExprOp::add, lhs, term());
      else if (accept('-'))
        lhs = make_node(ExprOp::sub, lhs, term());
      else
        return lhs;
    }
  }

  ExprNodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make_node(ExprOp::mul, lhs, unary());
      else if (accept('/'))
        lhs = make_node(ExprOp::div, lhs, unary());
      else
        return lhs;
    }
  }

  ExprNodePtr unary() {
    DepthGuard guard(*this);
    if (accept('-')) {
      auto operand = unary();
      if (operand->op == ExprOp::constant) return make_const(-operand->value);
      return make_node(ExprOp::neg, operand);
    }
    return power();
  }

  ExprNodePtr power() {
    auto base = primary();
    if (accept('^')) return make_node(ExprOp::pow, base, unary());
    return base;
  }

  ExprNodePtr primary() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      auto inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  ExprNodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // not an exponent; leave 'e' for the caller
    }
    const std::string lit(text_.substr(start, pos_ - start));
    const double v = std::strtod(lit.c_str(), nullptr);
    if (!std::isfinite(v)) throw SyntaxError(start, "numeric literal out of range");
    return make_const(v);
  }

  ExprNodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    for (ExprOp op : {ExprOp::exp, ExprOp::log, ExprOp::sin, ExprOp::cos, ExprOp::sqrt}) {
      if (name != function_name(op)) continue;
      if (!accept('('))
        throw SyntaxError(pos_, "function '" + std::string(name) + "' requires parentheses");
      std::size_t args = 1;
      auto arg = expr();
      while (accept(',')) {
        expr();
        ++args;
      }
      if (args != 1)
        throw SyntaxError(start, "function '" + std::string(name) + "' takes 1 argument, got " +
                                     std::to_string(args));
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return make_node(op, arg);
    }

    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) {
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::coordinate;
        n->coord = i;
        return n;
      }
    }
    throw SyntaxError(start, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

bool integer_exponent(const ExprNode& rhs, int& n) {
  if (rhs.op != ExprOp::constant) return false;
  if (rhs.value != std::floor(rhs.value) || std::abs(rhs.value) > kMaxIntegerExponent)
    return false;
  n = static_cast<int>(rhs.value);
  return true;
}

double value_of(double v) { return v; }
double value_of(const Jet& j) { return j.value(); }

// Jet operations check their own domains; plain doubles need the same guard.
template <typename T>
const T& in_domain(const T& v, bool strictly_positive, const char* what) {
  if constexpr (std::is_same_v<T, double>) {
    const bool bad = strictly_positive ? !(v > kSingularTol) : std::abs(v) <= kSingularTol;
    if (bad) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s: argument %g outside domain", what, v);
      throw PointError(ErrorKind::singularity, buf);
    }
  }
  return v;
}

template <typename T>
T eval_node(const ExprNode& n, std::span<const T> coords, const T& zero) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  switch (n.op) {
    case ExprOp::constant: {
      T c = zero;
      c += n.value;
      return c;
    }
    case ExprOp::coordinate: return coords[n.coord];
    case ExprOp::neg: return -eval_node(*n.lhs, coords, zero);
    case ExprOp::exp: return exp(eval_node(*n.lhs, coords, zero));
    case ExprOp::log: return log(in_domain(eval_node(*n.lhs, coords, zero), true, "log"));
    case ExprOp::sin: return sin(eval_node(*n.lhs, coords, zero));
    case ExprOp::cos: return cos(eval_node(*n.lhs, coords, zero));
    case ExprOp::sqrt: return sqrt(in_domain(eval_node(*n.lhs, coords, zero), true, "sqrt"));
    case ExprOp::add: return eval_node(*n.lhs, coords, zero) + eval_node(*n.rhs, coords, zero);
    case ExprOp::sub: return eval_node(*n.lhs, coords, zero) - eval_node(*n.rhs, coords, zero);
    case ExprOp::mul: return eval_node(*n.lhs, coords, zero) * eval_node(*n.rhs, coords, zero);
    case ExprOp::div:
      return eval_node(*n.lhs, coords, zero) / in_domain(eval_node(*n.rhs, coords, zero), false, "division");
    case ExprOp::pow: {
      const T base = eval_node(*n.lhs, coords, zero);
      int k = 0;
      if (integer_exponent(*n.rhs, k)) {
        using std::pow;
        return pow(base, k);
      }
      if (value_of(base) <= kSingularTol)
        throw PointError(ErrorKind::singularity,
                         "non-integer or large exponent requires a positive base");
      if (n.rhs->op == ExprOp::constant) {
        using std::pow;
        return pow(base, n.rhs->value);
      }
      using std::pow;
      return pow(base, eval_node(*n.rhs, coords, zero));
    }
  }
  return zero;
}

std::string print_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  return v < 0 ? "(" + s + ")" : s;
}

void print_node(const ExprNode& n, const std::vector<std::string>& coords, std::string& out) {
  switch (n.op) {
    case ExprOp::constant: out += print_number(n.value); return;
    case ExprOp::coordinate: out += coords[n.coord]; return;
    case ExprOp::neg:
      out += "(-";
      print_node(*n.lhs, coords, out);
      out += ")";
      return;
    case ExprOp::exp:
    case ExprOp::log:
    case ExprOp::sin:
    case ExprOp::cos:
    case ExprOp::sqrt:
      out += function_name(n.op);
      out += "(";
      print_node(*n.lhs, coords, out);
      out += ")";
      return;
    default: break;
  }
  const char* sym = n.op == ExprOp::add   ? "+"
                    : n.op == ExprOp::sub ? "-"
                    : n.op == ExprOp::mul ? "*"
                    : n.op == ExprOp::div ? "/"
                                          : "^";
  out += "(";
  print_node(*n.lhs, coords, out);
  out += sym;
  print_node(*n.rhs, coords, out);
  out += ")";
}

ExprNodePtr fold(const ExprNodePtr& n) {
  if (n->op == ExprOp::constant || n->op == ExprOp::coordinate) return n;
  auto lhs = fold(n->lhs);
  auto rhs = n->rhs ? fold(n->rhs) : nullptr;
  const bool constant_args =
      lhs->op == ExprOp::constant && (!rhs || rhs->op == ExprOp::constant);
  if (constant_args) {
    auto candidate = make_node(n->op, lhs, rhs);
    // Leave domain errors (log of a negative constant, ...) for evaluation to report.
    try {
      const double v = eval_node<double>(*candidate, std::span<const double>{}, 0.0);
      if (std::isfinite(v)) return make_const(v);
    } catch (const Error&) {
    }
    return candidate;
  }
  return make_node(n->op, lhs, rhs);
}

}  // namespace

Expr::Expr(ExprNodePtr root, std::vector<std::string> coords, std::string source)
    : root_(std::move(root)), coords_(std::move(coords)), source_(std::move(source)) {
  if (source_.empty()) source_ = to_string();
}

Jet Expr::eval(std::span<const Jet> coords) const {
  if (coords.size() != coords_.size())
    throw Error(ErrorKind::shape, "expression '" + source_ + "' expects " +
                                      std::to_string(coords_.size()) + " coordinates, got " +
                                      std::to_string(coords.size()));
  if (coords.empty()) throw Error(ErrorKind::shape, "expression evaluated without coordinates");
  const Jet zero(coords[0].num_vars(), coords[0].order());
  try {
    return eval_node<Jet>(*root_, coords, zero);
  } catch (const PointError& e) {
    std::vector<double> p;
    for (const auto& c : coords) p.push_back(c.value());
    throw e.at(p, "in '" + source_ + "'");
  }
}

double Expr::eval(std::span<const double> coords) const {
  return eval_node<double>(*root_, coords, 0.0);
}

std::string Expr::to_string() const {
  std::string out;
  print_node(*root_, coords_, out);
  return out;
}

Expr Expr::folded() const { return Expr(fold(root_), coords_, source_); }

Expr parse_expr(std::string_view text, const std::vector<std::string>& coords) {
  Parser parser(text, coords);
  auto root = parser.parse();
  return Expr(root, coords, std::string(text));
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) noexcept {
  if (a.op != b.op) return false;
  if (a.op == ExprOp::constant) return a.value == b.value;
  if (a.op == ExprOp::coordinate) return a.coord == b.coord;
  if (!structurally_equal(*a.lhs, *b.lhs)) return false;
  if (is_binary(a.op)) return structurally_equal(*a.rhs, *b.rhs);
  return true;
}

}  // namespace legendrean
