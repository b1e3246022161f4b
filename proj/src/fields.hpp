// SPDX-License-Identifier: Apache-2.0
#pragma once

// Coordinate-chart calculus on jets.
//
// Fields are evaluated at a point into jets of the coordinate seeds, so every
// pointwise quantity still carries its derivatives. One derivative is consumed
// by each partial, Lie bracket, or exterior derivative. Binary operations on
// tensors of different jet orders truncate to the smaller order; bare Jet
// arithmetic stays strict.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"
#include "jet.hpp"

namespace legendrean {

using Point = std::vector<double>;

inline constexpr double kCondMax = 1e8;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Chart {
  std::vector<std::string> coords;
  std::vector<Interval> box;

  Chart(std::vector<std::string> coords, std::vector<Interval> box);

  std::size_t dim() const noexcept { return coords.size(); }
  /// n for a (2n+1)-dimensional chart.
  std::size_t rank() const noexcept { return (coords.size() - 1) / 2; }
  bool contains(std::span<const double> p) const noexcept;
};

int min_order(std::span<const Jet> jets);
std::vector<Jet> truncate_all(std::span<const Jet> jets, int order);

/// Pointwise tangent vector whose components carry derivatives.
class TangentJet {
 public:
  TangentJet() = default;
  explicit TangentJet(std::vector<Jet> components) : c_(std::move(components)) {}
  static TangentJet zero(std::size_t dim, int order);

  std::size_t size() const noexcept { return c_.size(); }
  int order() const { return min_order(c_); }
  const Jet& operator[](std::size_t i) const { return c_[i]; }
  Jet& operator[](std::size_t i) { return c_[i]; }
  std::span<const Jet> components() const noexcept { return c_; }
  TangentJet truncated(int order) const { return TangentJet(truncate_all(c_, order)); }
  std::vector<double> values() const;

  TangentJet& operator+=(const TangentJet& rhs);
  TangentJet& operator-=(const TangentJet& rhs);
  friend TangentJet operator+(TangentJet a, const TangentJet& b) { return a += b; }
  friend TangentJet operator-(TangentJet a, const TangentJet& b) { return a -= b; }
  friend TangentJet operator*(const Jet& f, const TangentJet& v);
  friend TangentJet operator*(double f, TangentJet v);

 private:
  std::vector<Jet> c_;
};

using CovectorJet = std::vector<Jet>;

/// Dense row-major matrix of jets.
class JetMatrix {
 public:
  JetMatrix(std::size_t rows, std::size_t cols, const Jet& fill);
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Jet& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Jet& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  int order() const { return min_order(a_); }
  JetMatrix truncated(int order) const;
  std::vector<double> values() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Jet> a_;
};

/// Jet product after truncating both factors to the smaller order.
Jet mul(const Jet& a, const Jet& b);
Jet add(const Jet& a, const Jet& b);
Jet sub(const Jet& a, const Jet& b);

class ScalarField {
 public:
  using Fn = std::function<Jet(std::span<const Jet>)>;

  explicit ScalarField(Expr expr);
  ScalarField(Fn fn, std::string description);
  static ScalarField constant(double c);

  Jet eval(std::span<const Jet> coords) const;
  const std::string& description() const noexcept { return description_; }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);

 private:
  std::shared_ptr<const Fn> fn_;
  std::string description_;
};

ScalarField exp(const ScalarField& f);
ScalarField parse_field(std::string_view text, const std::vector<std::string>& coords);

class VectorField {
 public:
  explicit VectorField(std::vector<ScalarField> components);
  std::size_t dim() const noexcept { return c_.size(); }
  const ScalarField& operator[](std::size_t i) const { return c_[i]; }
  TangentJet eval(std::span<const Jet> coords) const;
  std::string description() const;

 private:
  std::vector<ScalarField> c_;
};

class OneForm {
 public:
  explicit OneForm(std::vector<ScalarField> components);
  std::size_t dim() const noexcept { return c_.size(); }
  const ScalarField& operator[](std::size_t i) const { return c_[i]; }
  CovectorJet eval(std::span<const Jet> coords) const;

 private:
  std::vector<ScalarField> c_;
};

VectorField scale(const ScalarField& f, const VectorField& v);

// ---------------------------------------------------------------------------
// Pointwise calculus on jets

/// sum_i X^i d_i f; order min(f.order - 1, X.order).
Jet directional_derivative(const Jet& f, const TangentJet& x);
/// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i.
TangentJet lie_bracket(const TangentJet& x, const TangentJet& y);
/// (d w)_ij = d_i w_j - d_j w_i.
JetMatrix exterior_derivative(std::span<const Jet> w);
/// w(X).
Jet contract(std::span<const Jet> w, const TangentJet& x);
/// Omega(X, Y) = sum_ij Omega_ij X^i Y^j.
Jet contract(const JetMatrix& omega, const TangentJet& x, const TangentJet& y);
/// The 1-form X -> Omega(X, .) contracted into the first slot.
CovectorJet interior(const JetMatrix& omega, const TangentJet& x);

/// LU factorization with partial pivoting (chosen on value parts), carried out in
/// jet arithmetic so that solutions carry their derivatives.
class JetLU {
 public:
  /// Throws DegenerateFrameError when a pivot falls below kSingularTol or the
  /// value-part condition estimate exceeds cond_max.
  explicit JetLU(const JetMatrix& a, double cond_max = kCondMax);

  std::size_t size() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  /// Value-part 1-norm condition estimate.
  double condition() const noexcept { return condition_; }
  std::vector<Jet> solve(std::span<const Jet> b) const;

 private:
  std::size_t n_;
  int order_;
  double condition_ = 1.0;
  std::vector<Jet> lu_;
  std::vector<Jet> inv_pivot_;
  std::vector<std::size_t> perm_;
  std::vector<double> a0_;  // original value parts, for the residual check
};

std::vector<Jet> solve_linear_jets(const JetMatrix& a, std::span<const Jet> b,
                                   double cond_max = kCondMax);

// ---------------------------------------------------------------------------
// Field-level conveniences: seed at p with order K and evaluate.

Jet directional_derivative(const ScalarField& f, const VectorField& x, std::span<const double> p,
                           int order);
TangentJet lie_bracket(const VectorField& x, const VectorField& y, std::span<const double> p,
                       int order);
JetMatrix exterior_derivative(const OneForm& w, std::span<const double> p, int order);

}  // namespace legendrean
