// SPDX-License-Identifier: Apache-2.0
#include "fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace legendrean {

Chart::Chart(std::vector<std::string> c, std::vector<Interval> b)
    : coords(std::move(c)), box(std::move(b)) {
  const std::size_t m = coords.size();
  if (m < 3 || m % 2 == 0 || m > kMaxJetVars)
    throw Error(ErrorKind::config,
                "chart dimension must be odd and in [3, 9], got " + std::to_string(m));
  if (box.size() != m)
    throw Error(ErrorKind::config, "sample box has " + std::to_string(box.size()) +
                                       " intervals for " + std::to_string(m) + " coordinates");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(box[i].lo < box[i].hi) || !std::isfinite(box[i].lo) || !std::isfinite(box[i].hi))
      throw Error(ErrorKind::config, "degenerate sample interval for '" + coords[i] + "'");
  }
}

bool Chart::contains(std::span<const double> p) const noexcept {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < box[i].lo || p[i] > box[i].hi) return false;
  return true;
}

int min_order(std::span<const Jet> jets) {
  int k = kMaxJetOrder;
  for (const auto& j : jets) k = std::min(k, j.order());
  return k;
}

std::vector<Jet> truncate_all(std::span<const Jet> jets, int order) {
  std::vector<Jet> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.truncated(order));
  return out;
}

Jet mul(const Jet& a, const Jet& b) {
  if (a.order() == b.order()) return a * b;
  const int k = std::min(a.order(), b.order());
  return a.truncated(k) * b.truncated(k);
}

Jet add(const Jet& a, const Jet& b) {
  if (a.order() == b.order()) return a + b;
  const int k = std::min(a.order(), b.order());
  return a.truncated(k) + b.truncated(k);
}

Jet sub(const Jet& a, const Jet& b) {
  if (a.order() == b.order()) return a - b;
  const int k = std::min(a.order(), b.order());
  return a.truncated(k) - b.truncated(k);
}

// -- TangentJet --------------------------------------------------------------

TangentJet TangentJet::zero(std::size_t dim, int order) {
  return TangentJet(std::vector<Jet>(dim, Jet(dim, order)));
}

std::vector<double> TangentJet::values() const {
  std::vector<double> v;
  v.reserve(c_.size());
  for (const auto& j : c_) v.push_back(j.value());
  return v;
}

TangentJet& TangentJet::operator+=(const TangentJet& rhs) {
  if (rhs.size() != size()) throw Error(ErrorKind::shape, "tangent vector dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = add(c_[i], rhs.c_[i]);
  return *this;
}

TangentJet& TangentJet::operator-=(const TangentJet& rhs) {
  if (rhs.size() != size()) throw Error(ErrorKind::shape, "tangent vector dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = sub(c_[i], rhs.c_[i]);
  return *this;
}

TangentJet operator*(const Jet& f, const TangentJet& v) {
  std::vector<Jet> out;
  out.reserve(v.size());
  for (const auto& c : v.c_) out.push_back(mul(f, c));
  return TangentJet(std::move(out));
}

TangentJet operator*(double f, TangentJet v) {
  for (auto& c : v.c_) c *= f;
  return v;
}

// -- JetMatrix ---------------------------------------------------------------

JetMatrix::JetMatrix(std::size_t rows, std::size_t cols, const Jet& fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

JetMatrix JetMatrix::truncated(int order) const {
  JetMatrix out = *this;
  for (auto& j : out.a_) j = j.truncated(order);
  return out;
}

std::vector<double> JetMatrix::values() const {
  std::vector<double> v;
  v.reserve(a_.size());
  for (const auto& j : a_) v.push_back(j.value());
  return v;
}

// -- Fields ------------------------------------------------------------------

ScalarField::ScalarField(Expr expr) : description_(expr.source()) {
  fn_ = std::make_shared<const Fn>(
      [e = std::move(expr)](std::span<const Jet> coords) { return e.eval(coords); });
}

ScalarField::ScalarField(Fn fn, std::string description)
    : fn_(std::make_shared<const Fn>(std::move(fn))), description_(std::move(description)) {}

ScalarField ScalarField::constant(double c) {
  return ScalarField(
      [c](std::span<const Jet> coords) {
        return Jet::constant(coords[0].num_vars(), coords[0].order(), c);
      },
      std::to_string(c));
}

Jet ScalarField::eval(std::span<const Jet> coords) const { return (*fn_)(coords); }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](std::span<const Jet> x) { return add(a.eval(x), b.eval(x)); },
                     "(" + a.description() + ")+(" + b.description() + ")");
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](std::span<const Jet> x) { return mul(a.eval(x), b.eval(x)); },
                     "(" + a.description() + ")*(" + b.description() + ")");
}

ScalarField exp(const ScalarField& f) {
  return ScalarField([f](std::span<const Jet> x) { return exp(f.eval(x)); },
                     "exp(" + f.description() + ")");
}

ScalarField parse_field(std::string_view text, const std::vector<std::string>& coords) {
  return ScalarField(parse_expr(text, coords));
}

VectorField::VectorField(std::vector<ScalarField> components) : c_(std::move(components)) {}

TangentJet VectorField::eval(std::span<const Jet> coords) const {
  if (coords.size() != c_.size())
    throw Error(ErrorKind::shape, "vector field has " + std::to_string(c_.size()) +
                                      " components on a " + std::to_string(coords.size()) +
                                      "-dimensional chart");
  std::vector<Jet> out;
  out.reserve(c_.size());
  for (const auto& f : c_) out.push_back(f.eval(coords));
  return TangentJet(std::move(out));
}

std::string VectorField::description() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? ", " : "") + c_[i].description();
  return s + "]";
}

OneForm::OneForm(std::vector<ScalarField> components) : c_(std::move(components)) {}

CovectorJet OneForm::eval(std::span<const Jet> coords) const {
  if (coords.size() != c_.size())
    throw Error(ErrorKind::shape, "one-form has " + std::to_string(c_.size()) +
                                      " components on a " + std::to_string(coords.size()) +
                                      "-dimensional chart");
  CovectorJet out;
  out.reserve(c_.size());
  for (const auto& f : c_) out.push_back(f.eval(coords));
  return out;
}

VectorField scale(const ScalarField& f, const VectorField& v) {
  std::vector<ScalarField> c;
  for (std::size_t i = 0; i < v.dim(); ++i) c.push_back(f * v[i]);
  return VectorField(std::move(c));
}

// -- Pointwise calculus ------------------------------------------------------

Jet directional_derivative(const Jet& f, const TangentJet& x) {
  if (x.size() != f.num_vars()) throw Error(ErrorKind::shape, "directional derivative: dimension mismatch");
  if (f.order() == 0)
    throw Error(ErrorKind::order_exceeded, "directional derivative of an order-0 jet");
  const int k = std::min(f.order() - 1, x.order());
  Jet out(f.num_vars(), k);
  for (std::size_t i = 0; i < x.size(); ++i)
    out += x[i].truncated(k) * partial(f, i).truncated(k);
  return out;
}

TangentJet lie_bracket(const TangentJet& x, const TangentJet& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::shape, "lie bracket: dimension mismatch");
  const std::size_t m = x.size();
  std::vector<Jet> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    out.push_back(sub(directional_derivative(y[i], x), directional_derivative(x[i], y)));
  return TangentJet(std::move(out));
}

JetMatrix exterior_derivative(std::span<const Jet> w) {
  const std::size_t m = w.size();
  const int k = min_order(w) - 1;
  if (k < 0) throw Error(ErrorKind::order_exceeded, "exterior derivative of an order-0 form");
  JetMatrix out(m, m, Jet(m, k));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Jet v = partial(w[j], i).truncated(k) - partial(w[i], j).truncated(k);
      out(j, i) = -v;
      out(i, j) = std::move(v);
    }
  }
  return out;
}

Jet contract(std::span<const Jet> w, const TangentJet& x) {
  if (w.size() != x.size()) throw Error(ErrorKind::shape, "contraction: dimension mismatch");
  const int k = std::min(min_order(w), x.order());
  Jet out(x.size(), k);
  for (std::size_t i = 0; i < w.size(); ++i) out += w[i].truncated(k) * x[i].truncated(k);
  return out;
}

CovectorJet interior(const JetMatrix& omega, const TangentJet& x) {
  if (omega.rows() != x.size() || omega.cols() != x.size())
    throw Error(ErrorKind::shape, "contraction: two-form shape mismatch");
  const int k = std::min(omega.order(), x.order());
  CovectorJet out(x.size(), Jet(x.size(), k));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Jet xi = x[i].truncated(k);
    for (std::size_t j = 0; j < x.size(); ++j) out[j] += xi * omega(i, j).truncated(k);
  }
  return out;
}

Jet contract(const JetMatrix& omega, const TangentJet& x, const TangentJet& y) {
  return contract(interior(omega, x), y);
}

// -- Linear solves -----------------------------------------------------------

namespace {

double norm1(const std::vector<double>& a, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i * n + j]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

JetLU::JetLU(const JetMatrix& a, double cond_max) : n_(a.rows()), order_(a.order()) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::shape, "linear solve needs a square matrix");
  const std::size_t n = n_;
  lu_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lu_.push_back(a(i, j).truncated(order_));
  a0_ = a.values();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_[i * n + k].value()) > std::abs(lu_[piv * n + k].value())) piv = i;
    if (std::abs(lu_[piv * n + k].value()) <= kSingularTol)
      throw DegenerateFrameError("singular linear system (pivot " +
                                     std::to_string(lu_[piv * n + k].value()) + " in column " +
                                     std::to_string(k) + ")",
                                 std::numeric_limits<double>::infinity());
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_[k * n + j], lu_[piv * n + j]);
      std::swap(perm_[k], perm_[piv]);
    }
    inv_pivot_.push_back(1.0 / lu_[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Jet f = lu_[i * n + k] * inv_pivot_.back();
      for (std::size_t j = k + 1; j < n; ++j) lu_[i * n + j] -= f * lu_[k * n + j];
      lu_[i * n + k] = std::move(f);
    }
  }

  // Condition estimate from the explicit value-part inverse (n <= 10).
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = perm_[i] == c ? 1.0 : 0.0;
      for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n + j].value() * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_[i * n + j].value() * y[j];
      y[i] = s / lu_[i * n + i].value();
    }
    for (std::size_t i = 0; i < n; ++i) inv[i * n + c] = y[i];
  }
  condition_ = norm1(a0_, n) * norm1(inv, n);
  if (!(condition_ <= cond_max))
    throw DegenerateFrameError("ill-conditioned linear system (condition estimate " +
                                   std::to_string(condition_) + ")",
                               condition_);
}

std::vector<Jet> JetLU::solve(std::span<const Jet> b) const {
  const std::size_t n = n_;
  if (b.size() != n) throw Error(ErrorKind::shape, "right-hand side length mismatch");
  const int k = std::min(order_, min_order(b));
  auto at = [&](std::size_t i, std::size_t j) { return lu_[i * n + j].truncated(k); };

  std::vector<Jet> y;
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Jet s = b[perm_[i]].truncated(k);
    for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * y[j];
    y.push_back(std::move(s));
  }
  for (std::size_t i = n; i-- > 0;) {
    Jet s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= at(i, j) * y[j];
    y[i] = s * inv_pivot_[i].truncated(k);
  }

  double resid = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = -b[i].value();
    scale = std::max(scale, std::abs(b[i].value()));
    for (std::size_t j = 0; j < n; ++j) {
      r += a0_[i * n + j] * y[j].value();
      scale = std::max(scale, std::abs(a0_[i * n + j] * y[j].value()));
    }
    resid = std::max(resid, std::abs(r));
  }
  if (resid > 1e-10 * scale)
    throw DegenerateFrameError("linear solve residual " + std::to_string(resid) +
                                   " exceeds tolerance",
                               condition_);
  return y;
}

std::vector<Jet> solve_linear_jets(const JetMatrix& a, std::span<const Jet> b, double cond_max) {
  return JetLU(a, cond_max).solve(b);
}

// -- Field-level -------------------------------------------------------------

Jet directional_derivative(const ScalarField& f, const VectorField& x, std::span<const double> p,
                           int order) {
  if (order < 1)
    throw Error(ErrorKind::order_exceeded, "directional derivative needs jet order >= 1");
  const auto seeds = seed_point(p, order);
  return directional_derivative(f.eval(seeds), x.eval(seeds));
}

TangentJet lie_bracket(const VectorField& x, const VectorField& y, std::span<const double> p,
                       int order) {
  const auto seeds = seed_point(p, order);
  return lie_bracket(x.eval(seeds), y.eval(seeds));
}

JetMatrix exterior_derivative(const OneForm& w, std::span<const double> p, int order) {
  const auto seeds = seed_point(p, order);
  return exterior_derivative(w.eval(seeds));
}

}  // namespace legendrean
