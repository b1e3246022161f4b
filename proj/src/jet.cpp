// SPDX-License-Identifier: Apache-2.0
#include "jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace legendrean {

namespace {

int degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

// All multi-indices of total degree d over m variables, lexicographically
// descending in the leading variable.
void enumerate_degree(std::size_t m, int d, std::size_t pos, MultiIndex& cur,
                      std::vector<MultiIndex>& out) {
  if (pos + 1 == m) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur[pos] = k;
    enumerate_degree(m, d - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

JetLayout::JetLayout(std::size_t num_vars, int order) : num_vars_(num_vars), order_(order) {
  MultiIndex cur(num_vars, 0);
  for (int d = 0; d <= order; ++d) enumerate_degree(num_vars, d, 0, cur, indices_);

  auto& table = lookup_;
  for (std::size_t k = 0; k < indices_.size(); ++k) table.emplace(indices_[k], k);

  MultiIndex sum(num_vars);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const int di = degree(indices_[i]);
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      if (di + degree(indices_[j]) > order) continue;
      for (std::size_t v = 0; v < num_vars; ++v) sum[v] = indices_[i][v] + indices_[j][v];
      products_.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                           static_cast<std::uint16_t>(table.at(sum))});
    }
  }

  if (order > 0) {
    // Prefix property: the order-(K-1) layout is the first entries of this one.
    std::size_t lower = 0;
    while (lower < indices_.size() && degree(indices_[lower]) < order) ++lower;
    partials_.resize(num_vars);
    for (std::size_t v = 0; v < num_vars; ++v) {
      for (std::size_t k = 0; k < lower; ++k) {
        MultiIndex up = indices_[k];
        ++up[v];
        partials_[v].push_back(
            {static_cast<std::uint16_t>(table.at(up)), static_cast<double>(up[v])});
      }
    }
  }
}

std::size_t JetLayout::find(const MultiIndex& alpha) const {
  if (alpha.size() != num_vars_) return size();
  auto it = lookup_.find(alpha);
  return it == lookup_.end() ? size() : it->second;
}

const JetLayout& JetLayout::get(std::size_t num_vars, int order) {
  if (num_vars == 0 || num_vars > kMaxJetVars)
    throw Error(ErrorKind::shape, "jet variable count must be in [1, " +
                                      std::to_string(kMaxJetVars) + "], got " +
                                      std::to_string(num_vars));
  if (order < 0 || order > kMaxJetOrder)
    throw Error(ErrorKind::order_exceeded,
                "jet order must be in [0, 3], got " + std::to_string(order));
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<JetLayout>> registry;
  std::lock_guard lock(registry_mutex());
  auto& slot = registry[{num_vars, order}];
  if (!slot) slot = std::make_unique<JetLayout>(num_vars, order);
  return *slot;
}

Jet::Jet(std::size_t num_vars, int order)
    : layout_(&JetLayout::get(num_vars, order)), coeffs_(layout_->size(), 0.0) {}

Jet::Jet(const JetLayout* layout, std::vector<double> coeffs)
    : layout_(layout), coeffs_(std::move(coeffs)) {}

Jet Jet::constant(std::size_t num_vars, int order, double value) {
  Jet j(num_vars, order);
  j.coeffs_[0] = value;
  return j;
}

std::size_t Jet::num_vars() const noexcept { return layout_->num_vars(); }
int Jet::order() const noexcept { return layout_->order(); }

double Jet::coeff(const MultiIndex& alpha) const {
  if (alpha.size() != num_vars())
    throw Error(ErrorKind::shape, "multi-index length does not match jet variable count");
  if (degree(alpha) > order())
    throw Error(ErrorKind::order_exceeded, "multi-index of degree " +
                                               std::to_string(degree(alpha)) +
                                               " exceeds jet order " + std::to_string(order()));
  return coeffs_[layout_->find(alpha)];
}

void Jet::set_coeff(const MultiIndex& alpha, double c) {
  (void)coeff(alpha);  // validates
  coeffs_[layout_->find(alpha)] = c;
}

Jet Jet::truncated(int order) const {
  if (order > this->order())
    throw Error(ErrorKind::order_exceeded, "cannot raise jet order " +
                                               std::to_string(this->order()) + " to " +
                                               std::to_string(order));
  if (order == this->order()) return *this;
  const JetLayout& low = JetLayout::get(num_vars(), order);
  return Jet(&low, std::vector<double>(coeffs_.begin(), coeffs_.begin() + low.size()));
}

double Jet::max_abs() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void Jet::require_same_shape(const Jet& rhs, const char* op) const {
  if (layout_ != rhs.layout_)
    throw Error(ErrorKind::shape, std::string("jet shape mismatch in ") + op + ": (" +
                                      std::to_string(num_vars()) + " vars, order " +
                                      std::to_string(order()) + ") vs (" +
                                      std::to_string(rhs.num_vars()) + " vars, order " +
                                      std::to_string(rhs.order()) + ")");
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_shape(rhs, "+");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_shape(rhs, "-");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double c) noexcept {
  coeffs_[0] += c;
  return *this;
}
Jet& Jet::operator-=(double c) noexcept {
  coeffs_[0] -= c;
  return *this;
}
Jet& Jet::operator*=(double c) noexcept {
  for (auto& x : coeffs_) x *= c;
  return *this;
}
Jet& Jet::operator/=(double c) {
  if (std::abs(c) <= kSingularTol)
    throw PointError(ErrorKind::singularity, "division by near-zero constant");
  for (auto& x : coeffs_) x /= c;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same_shape(b, "*");
  std::vector<double> out(a.coeffs_.size(), 0.0);
  for (const auto& p : a.layout_->products()) out[p.out] += a.coeffs_[p.lhs] * b.coeffs_[p.rhs];
  return Jet(a.layout_, std::move(out));
}

namespace {

// Taylor coefficients of x^c at x0: binom(c, k) * x0^(c-k).
std::vector<double> power_series(double x0, double c, int order) {
  std::vector<double> t(order + 1);
  double falling = 1.0;
  for (int k = 0; k <= order; ++k) {
    t[k] = falling * std::pow(x0, c - k);
    falling *= (c - k) / (k + 1);
  }
  return t;
}

void require_nonzero(double v, const char* what) {
  if (std::abs(v) <= kSingularTol)
    throw PointError(ErrorKind::singularity,
                     std::string(what) + ": value " + std::to_string(v) + " is within " +
                         "singular tolerance of zero");
}

void require_positive(double v, const char* what) {
  if (!(v > kSingularTol))
    throw PointError(ErrorKind::singularity,
                     std::string(what) + ": argument " + std::to_string(v) +
                         " outside domain (must exceed singular tolerance)");
}

}  // namespace

Jet operator/(const Jet& a, const Jet& b) {
  a.require_same_shape(b, "/");
  require_nonzero(b.value(), "division");
  return a * compose(b, power_series(b.value(), -1.0, b.order()));
}

Jet operator/(double c, const Jet& a) {
  require_nonzero(a.value(), "division");
  return c * compose(a, power_series(a.value(), -1.0, a.order()));
}

Jet compose(const Jet& a, std::span<const double> taylor) {
  const int K = a.order();
  Jet h = a;
  h.coeffs_[0] = 0.0;
  // Horner in the nilpotent increment h = a - a0.
  Jet result = Jet::constant(a.num_vars(), K, K < static_cast<int>(taylor.size()) ? taylor[K] : 0.0);
  for (int k = K - 1; k >= 0; --k) {
    result = result * h;
    result.coeffs_[0] += taylor[k];
  }
  return result;
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  std::vector<double> t(a.order() + 1);
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = e / fact;
    fact *= (k + 1);
  }
  return compose(a, t);
}

Jet log(const Jet& a) {
  require_positive(a.value(), "log");
  const double x0 = a.value();
  std::vector<double> t(a.order() + 1);
  t[0] = std::log(x0);
  for (int k = 1; k <= a.order(); ++k) t[k] = ((k % 2) ? 1.0 : -1.0) / (k * std::pow(x0, k));
  return compose(a, t);
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(a.order() + 1);
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = cycle[k % 4] / fact;
    fact *= (k + 1);
  }
  return compose(a, t);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> t(a.order() + 1);
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    t[k] = cycle[k % 4] / fact;
    fact *= (k + 1);
  }
  return compose(a, t);
}

Jet sqrt(const Jet& a) {
  require_positive(a.value(), "sqrt");
  return compose(a, power_series(a.value(), 0.5, a.order()));
}

Jet pow(const Jet& a, int n) {
  if (n < 0) {
    require_nonzero(a.value(), "negative integer power");
    return compose(a, power_series(a.value(), static_cast<double>(n), a.order()));
  }
  Jet result = Jet::constant(a.num_vars(), a.order(), 1.0);
  Jet base = a;
  for (unsigned e = static_cast<unsigned>(n); e; e >>= 1) {
    if (e & 1u) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

Jet pow(const Jet& a, double c) {
  if (c == std::floor(c) && std::abs(c) <= 64) return pow(a, static_cast<int>(c));
  require_positive(a.value(), "pow");
  return compose(a, power_series(a.value(), c, a.order()));
}

Jet pow(const Jet& a, const Jet& b) {
  require_positive(a.value(), "pow");
  return exp(b * log(a));
}

std::vector<Jet> seed_point(std::span<const double> point, int order) {
  const std::size_t m = point.size();
  if (order < 1 || order > kMaxJetOrder)
    throw Error(ErrorKind::config, "seed order must be in [1, 3], got " + std::to_string(order));
  if (m < 3 || m % 2 == 0 || m > kMaxJetVars)
    throw Error(ErrorKind::config,
                "chart dimension must be odd and in [3, 9], got " + std::to_string(m));
  std::vector<Jet> seeds;
  seeds.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Jet j = Jet::constant(m, order, point[i]);
    // Degree-1 entries follow the constant, ordered e_0, e_1, ...
    j.coeffs_[1 + i] = 1.0;
    seeds.push_back(std::move(j));
  }
  return seeds;
}

double extract_partial(const Jet& a, const MultiIndex& alpha) {
  double fact = 1.0;
  for (int k : alpha)
    for (int f = 2; f <= k; ++f) fact *= f;
  return fact * a.coeff(alpha);
}

Jet partial(const Jet& a, std::size_t var) {
  if (a.order() == 0)
    throw Error(ErrorKind::order_exceeded, "cannot differentiate an order-0 jet");
  if (var >= a.num_vars()) throw Error(ErrorKind::shape, "partial: variable index out of range");
  const JetLayout& low = JetLayout::get(a.num_vars(), a.order() - 1);
  const auto& table = a.layout().partials(var);
  std::vector<double> out(low.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = table[k].factor * a.coeffs_[table[k].source];
  return Jet(&low, std::move(out));
}

double max_abs_diff(const Jet& a, const Jet& b) {
  if (a.num_vars() != b.num_vars() || a.order() != b.order())
    throw Error(ErrorKind::shape, "max_abs_diff: jet shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a.coeffs()[k] - b.coeffs()[k]));
  return m;
}

}  // namespace legendrean
