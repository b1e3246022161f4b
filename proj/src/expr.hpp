// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scalar expression language for structure definitions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | coord | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sin | cos | sqrt
//
// A minus sign applied directly to a numeric literal folds into a negative
// constant, so "x^-2" carries the integer exponent -2.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jet.hpp"

namespace legendrean {

enum class ExprOp { constant, coordinate, neg, exp, log, sin, cos, sqrt, add, sub, mul, div, pow };

struct ExprNode {
  ExprOp op;
  double value = 0.0;      // constant
  std::size_t coord = 0;   // coordinate
  std::shared_ptr<const ExprNode> lhs, rhs;
};

using ExprNodePtr = std::shared_ptr<const ExprNode>;

bool is_unary(ExprOp op) noexcept;
bool is_binary(ExprOp op) noexcept;
const char* function_name(ExprOp op) noexcept;  // "exp", ... or nullptr

/// Integer exponents in this range evaluate by repeated multiplication and accept
/// any base; every other exponent requires a positive base.
inline constexpr int kMaxIntegerExponent = 6;

class Expr {
 public:
  Expr(ExprNodePtr root, std::vector<std::string> coords, std::string source = {});

  const ExprNode& root() const noexcept { return *root_; }
  const ExprNodePtr& root_ptr() const noexcept { return root_; }
  const std::vector<std::string>& coords() const noexcept { return coords_; }
  /// Original text (or the canonical printing for synthesized expressions).
  const std::string& source() const noexcept { return source_; }

  /// Evaluates over coordinate jets. Singularities are rethrown with the source
  /// expression attached.
  Jet eval(std::span<const Jet> coords) const;
  double eval(std::span<const double> coords) const;

  /// Fully parenthesized printing that parses back to an identical tree.
  std::string to_string() const;
  Expr folded() const;

  bool is_constant() const noexcept { return root_->op == ExprOp::constant; }

 private:
  ExprNodePtr root_;
  std::vector<std::string> coords_;
  std::string source_;
};

/// Throws SyntaxError (with byte offset) on malformed input, unknown identifiers,
/// and wrong function arity.
Expr parse_expr(std::string_view text, const std::vector<std::string>& coords);

bool structurally_equal(const ExprNode& a, const ExprNode& b) noexcept;

bool is_reserved_name(std::string_view name) noexcept;

}  // namespace legendrean
