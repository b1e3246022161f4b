// SPDX-License-Identifier: Apache-2.0
#pragma once

// Truncated multivariate Taylor jets.
//
// A Jet of order K in m variables stores every Taylor coefficient c[alpha] with
// |alpha| <= K, normalized so that c[alpha] = d^alpha f / alpha!. Coefficients are
// kept densely, ordered by total degree and then lexicographically, so the jet of
// order K-1 is a prefix of the jet of order K.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace legendrean {

inline constexpr double kSingularTol = 1e-12;
inline constexpr int kMaxJetOrder = 3;
inline constexpr std::size_t kMaxJetVars = 9;

using MultiIndex = std::vector<int>;

class JetLayout;

class Jet {
 public:
  /// Zero jet. Order may be 0 (value only) up to kMaxJetOrder.
  Jet(std::size_t num_vars, int order);
  static Jet constant(std::size_t num_vars, int order, double value);

  std::size_t num_vars() const noexcept;
  int order() const noexcept;
  double value() const noexcept { return coeffs_[0]; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Taylor coefficient (with the 1/alpha! factor). Throws if |alpha| > order.
  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double c);

  /// Drops every coefficient above `order` (which must not exceed this->order()).
  Jet truncated(int order) const;

  /// Largest absolute coefficient.
  double max_abs() const noexcept;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double c) noexcept;
  Jet& operator-=(double c) noexcept;
  Jet& operator*=(double c) noexcept;
  Jet& operator/=(double c);

  friend Jet operator-(Jet a) noexcept {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double c) noexcept { return a += c; }
  friend Jet operator+(double c, Jet a) noexcept { return a += c; }
  friend Jet operator-(Jet a, double c) noexcept { return a -= c; }
  friend Jet operator-(double c, Jet a) noexcept { return (-a) += c; }
  friend Jet operator*(Jet a, double c) noexcept { return a *= c; }
  friend Jet operator*(double c, Jet a) noexcept { return a *= c; }
  friend Jet operator/(Jet a, double c) { return a /= c; }
  friend Jet operator/(double c, const Jet& a);

  const JetLayout& layout() const noexcept { return *layout_; }

 private:
  Jet(const JetLayout* layout, std::vector<double> coeffs);
  void require_same_shape(const Jet& rhs, const char* op) const;

  const JetLayout* layout_;
  std::vector<double> coeffs_;

  friend Jet compose(const Jet& a, std::span<const double> taylor);
  friend Jet partial(const Jet& a, std::size_t var);
  friend std::vector<Jet> seed_point(std::span<const double> point, int order);
};

/// Coordinate jets at `point`: jet i has value point[i] and unit gradient e_i.
/// Requires 1 <= order <= 3 and an odd chart dimension >= 3.
std::vector<Jet> seed_point(std::span<const double> point, int order);

/// d^alpha f at the base point (alpha! * coeff). Throws order_exceeded when
/// |alpha| > order.
double extract_partial(const Jet& a, const MultiIndex& alpha);

/// Exact partial derivative d/dx_var as a jet of order K-1.
Jet partial(const Jet& a, std::size_t var);

/// Univariate composition: sum_k taylor[k] * (a - a0)^k, truncated at a's order.
/// taylor[k] = f^(k)(a0) / k!.
Jet compose(const Jet& a, std::span<const double> taylor);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
/// Integer power; negative exponents require a nonzero value.
Jet pow(const Jet& a, int n);
/// Real power; requires a positive base.
Jet pow(const Jet& a, double c);
/// exp(b log a); requires a positive base.
Jet pow(const Jet& a, const Jet& b);

/// Max absolute coefficient difference (shapes must match).
double max_abs_diff(const Jet& a, const Jet& b);

class JetLayout {
 public:
  struct Product {
    std::uint16_t lhs, rhs, out;
  };
  struct PartialEntry {
    std::uint16_t source;
    double factor;
  };

  static const JetLayout& get(std::size_t num_vars, int order);

  std::size_t num_vars() const noexcept { return num_vars_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& index(std::size_t k) const { return indices_[k]; }
  /// Position of alpha, or size() if |alpha| exceeds the order.
  std::size_t find(const MultiIndex& alpha) const;
  const std::vector<Product>& products() const noexcept { return products_; }
  /// Entries for d/dx_var, one per coefficient of the order-(K-1) result.
  const std::vector<PartialEntry>& partials(std::size_t var) const { return partials_[var]; }

  JetLayout(std::size_t num_vars, int order);

 private:
  std::size_t num_vars_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, std::size_t> lookup_;
  std::vector<Product> products_;
  std::vector<std::vector<PartialEntry>> partials_;
};

}  // namespace legendrean
