// SPDX-License-Identifier: Apache-2.0
#include "contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "errors.hpp"

namespace legendrean {

ContactStructure::ContactStructure(Chart chart, OneForm theta)
    : chart_(std::move(chart)), theta_(std::move(theta)) {
  if (theta_.dim() != chart_.dim())
    throw Error(ErrorKind::config, "contact form has " + std::to_string(theta_.dim()) +
                                       " components on a " + std::to_string(chart_.dim()) +
                                       "-dimensional chart");
}

ContactStructure ContactStructure::rescale(const ScalarField& u) const {
  ContactStructure out = *this;
  out.u_ = u_ ? *u_ + u : u;
  return out;
}

CovectorJet ContactStructure::theta(std::span<const Jet> coords) const {
  CovectorJet w = theta_.eval(coords);
  if (!u_) return w;
  const Jet scale = exp(u_->eval(coords));
  for (auto& c : w) c = mul(scale, c);
  return w;
}

Jet ContactStructure::log_scale_at(std::span<const Jet> coords) const {
  if (!u_) return Jet(coords[0].num_vars(), coords[0].order());
  return u_->eval(coords);
}

std::string ContactStructure::label() const {
  return u_ ? "e^(" + u_->description() + ")*theta" : "theta";
}

LegendreanSplitting::LegendreanSplitting(std::vector<VectorField> e_frame,
                                         std::vector<VectorField> f_frame)
    : e_(std::move(e_frame)), f_(std::move(f_frame)) {
  if (e_.size() != f_.size() || e_.empty())
    throw Error(ErrorKind::config, "E and F frames must have the same positive rank");
}

double SplitTractor::max_abs_diff_values(const SplitTractor& other) const {
  if (mu.size() != other.mu.size()) throw Error(ErrorKind::shape, "tractor rank mismatch");
  double d = std::abs(rho.value() - other.rho.value());
  for (std::size_t a = 0; a < mu.size(); ++a)
    d = std::max(d, std::abs(mu[a].value() - other.mu[a].value()));
  return d;
}

namespace {

[[noreturn]] void rethrow_at(const PointError& e, const Point& p, const std::string& context) {
  if (auto* d = dynamic_cast<const DegenerateFrameError*>(&e))
    throw DegenerateFrameError(context + ": " + d->detail(), d->condition(), p);
  throw e.at(p, context);
}

double determinant(std::vector<double> a, std::size_t n) {
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    if (a[piv * n + k] == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

}  // namespace

TangentJet solve_reeb(std::span<const Jet> theta, const JetMatrix& dtheta,
                      std::span<const std::size_t> row_order) {
  const std::size_t m = theta.size();
  const int k = std::min(min_order(theta), dtheta.order());
  // Stacked system: row 0 is theta(r) = 1, row j+1 is dtheta(r, d_j) = 0.
  auto entry = [&](std::size_t row, std::size_t i) -> Jet {
    return row == 0 ? theta[i].truncated(k) : dtheta(i, row - 1).truncated(k);
  };
  std::vector<std::size_t> rows(m + 1);
  std::iota(rows.begin(), rows.end(), 0);
  if (!row_order.empty()) {
    if (row_order.size() != m + 1) throw Error(ErrorKind::shape, "reeb: row order length mismatch");
    rows.assign(row_order.begin(), row_order.end());
  }

  const Jet zero(m, k);
  JetMatrix normal(m, m, zero);
  std::vector<Jet> rhs(m, zero);
  for (std::size_t row : rows) {
    std::vector<Jet> a;
    a.reserve(m);
    for (std::size_t i = 0; i < m; ++i) a.push_back(entry(row, i));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) normal(i, j) += a[i] * a[j];
      if (row == 0) rhs[i] += a[i];
    }
  }

  TangentJet r;
  try {
    r = TangentJet(JetLU(normal).solve(rhs));
  } catch (const DegenerateFrameError& e) {
    throw PointError(ErrorKind::not_contact,
                     "Reeb system is rank deficient (" + e.detail() + "); not a contact form");
  }
  const double resid = reeb_residual(theta, dtheta, r);
  if (resid > 1e-10)
    throw PointError(ErrorKind::not_contact,
                     "Reeb defining equations have residual " + std::to_string(resid));
  return r;
}

double reeb_residual(std::span<const Jet> theta, const JetMatrix& dtheta, const TangentJet& r) {
  const std::size_t m = theta.size();
  double scale = 1.0;
  double t = -1.0;
  for (std::size_t i = 0; i < m; ++i) t += theta[i].value() * r[i].value();
  double resid = std::abs(t);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      s += r[i].value() * dtheta(i, j).value();
      scale = std::max(scale, std::abs(r[i].value() * dtheta(i, j).value()));
    }
    resid = std::max(resid, std::abs(s));
  }
  return resid / scale;
}

double bordered_determinant(std::span<const Jet> theta, const JetMatrix& dtheta) {
  const std::size_t m = theta.size();
  const std::size_t n = m + 1;
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i * n + j] = dtheta(i, j).value();
    a[i * n + m] = theta[i].value();
    a[m * n + i] = theta[i].value();
  }
  return determinant(std::move(a), n);
}

// -- LocalModel --------------------------------------------------------------

LocalModel::LocalModel(Point p, int order, std::vector<Jet> coords, CovectorJet theta,
                       JetMatrix dtheta, TangentJet reeb, std::vector<TangentJet> e,
                       std::vector<TangentJet> f, Jet u, std::string label, JetLU basis_lu)
    : point_(std::move(p)),
      order_(order),
      coords_(std::move(coords)),
      theta_(std::move(theta)),
      dtheta_(std::move(dtheta)),
      reeb_(std::move(reeb)),
      e_(std::move(e)),
      f_(std::move(f)),
      log_scale_(std::move(u)),
      label_(std::move(label)),
      basis_lu_(std::move(basis_lu)) {}

LocalModel LocalModel::at(const ContactStructure& cs, const LegendreanSplitting& split,
                          std::span<const double> point, int order) {
  Point p(point.begin(), point.end());
  if (p.size() != cs.dim())
    throw Error(ErrorKind::shape, "point has " + std::to_string(p.size()) + " coordinates on a " +
                                      std::to_string(cs.dim()) + "-dimensional chart");
  try {
    auto coords = seed_point(p, order);
    CovectorJet theta = cs.theta(coords);
    JetMatrix dtheta = exterior_derivative(theta);
    TangentJet r = solve_reeb(theta, dtheta);
    std::vector<TangentJet> e, f;
    for (const auto& v : split.e_frame()) e.push_back(v.eval(coords));
    for (const auto& v : split.f_frame()) f.push_back(v.eval(coords));
    if (e.size() * 2 + 1 != p.size())
      throw Error(ErrorKind::config, "splitting rank does not match chart dimension");

    const std::size_t m = p.size();
    JetMatrix basis(m, m, Jet(m, r.order()));
    for (std::size_t i = 0; i < m; ++i) {
      basis(i, 0) = r[i];
      for (std::size_t a = 0; a < e.size(); ++a) {
        basis(i, 1 + a) = e[a][i].truncated(r.order());
        basis(i, 1 + e.size() + a) = f[a][i].truncated(r.order());
      }
    }
    JetLU lu(basis);
    Jet u = cs.log_scale_at(coords);
    return LocalModel(std::move(p), order, std::move(coords), std::move(theta), std::move(dtheta),
                      std::move(r), std::move(e), std::move(f), std::move(u), cs.label(),
                      std::move(lu));
  } catch (const PointError& e) {
    rethrow_at(e, p, "local model for " + cs.label());
  }
}

HDecomposition LocalModel::decompose(const TangentJet& v) const {
  if (v.size() != dim()) throw Error(ErrorKind::shape, "decompose: dimension mismatch");
  std::vector<Jet> c;
  try {
    c = basis_lu_.solve(v.components());
  } catch (const PointError& e) {
    rethrow_at(e, point_, "decomposition in {r, E, F}");
  }
  const std::size_t n = rank();
  HDecomposition out{c[0], {c.begin() + 1, c.begin() + 1 + n}, {c.begin() + 1 + n, c.end()}};
  return out;
}

TangentJet LocalModel::e_field(std::span<const Jet> coeffs) const {
  if (coeffs.size() != rank()) throw Error(ErrorKind::shape, "E-section coefficient count mismatch");
  const int k = min_order(coeffs);
  TangentJet out = TangentJet::zero(dim(), std::min(k, order_));
  for (std::size_t a = 0; a < rank(); ++a) out += coeffs[a] * e_[a];
  return out;
}

std::vector<Jet> LocalModel::e_part(const TangentJet& v) const {
  const TangentJet h = v - theta_of(v) * reeb_;
  return decompose(h).e;
}

Jet LocalModel::active_units(const Jet& base_coeff) const {
  return mul(exp(log_scale_), base_coeff);
}

StructureDiagnostics diagnose(const ContactStructure& cs, const LegendreanSplitting& split,
                              std::span<const double> point, int order) {
  StructureDiagnostics d;
  const auto coords = seed_point(point, order);
  const CovectorJet theta = cs.theta(coords);
  const JetMatrix dtheta = exterior_derivative(theta);
  d.bordered_det = bordered_determinant(theta, dtheta);

  const std::size_t n = split.rank();
  std::vector<TangentJet> h;
  for (const auto& v : split.e_frame()) h.push_back(v.eval(coords));
  for (const auto& v : split.f_frame()) h.push_back(v.eval(coords));

  for (const auto& v : h) d.horizontality = std::max(d.horizontality, std::abs(contract(theta, v).value()));
  std::vector<double> frame(4 * n * n);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      const double w = contract(dtheta, h[a], h[b]).value();
      frame[a * 2 * n + b] = w;
      if (a < n && b < n) d.isotropy_e = std::max(d.isotropy_e, std::abs(w));
      if (a >= n && b >= n) d.isotropy_f = std::max(d.isotropy_f, std::abs(w));
    }
  }
  d.frame_det = determinant(std::move(frame), 2 * n);

  const double inf = std::numeric_limits<double>::infinity();
  try {
    const TangentJet r = solve_reeb(theta, dtheta);
    d.reeb_residual = reeb_residual(theta, dtheta, r);
    const std::size_t m = point.size();
    JetMatrix basis(m, m, Jet(m, r.order()));
    for (std::size_t i = 0; i < m; ++i) {
      basis(i, 0) = r[i];
      for (std::size_t a = 0; a < 2 * n; ++a) basis(i, 1 + a) = h[a][i].truncated(r.order());
    }
    d.basis_condition = JetLU(basis, inf).condition();
  } catch (const DegenerateFrameError&) {
    d.basis_condition = inf;
  } catch (const PointError& e) {
    if (e.kind() != ErrorKind::not_contact) throw;
    d.reeb_residual = inf;
    d.basis_condition = inf;
  }
  return d;
}

// -- Operations --------------------------------------------------------------

TangentJet reeb(const ContactStructure& cs, std::span<const double> point, int order) {
  const auto coords = seed_point(point, order);
  const CovectorJet theta = cs.theta(coords);
  try {
    return solve_reeb(theta, exterior_derivative(theta));
  } catch (const PointError& e) {
    rethrow_at(e, Point(point.begin(), point.end()), "Reeb field");
  }
}

Upsilon upsilon(const LocalModel& lm, const Jet& u) {
  const std::size_t n2 = 2 * lm.rank();
  const int k = std::min(lm.dtheta().order(), u.order() - 1);
  const Jet zero(lm.dim(), k);
  JetMatrix g(n2, n2, zero);
  std::vector<Jet> rhs;
  rhs.reserve(n2);
  for (std::size_t b = 0; b < n2; ++b) {
    for (std::size_t a = 0; a < n2; ++a) g(b, a) = lm.dtheta_of(lm.h(a), lm.h(b)).truncated(k);
    rhs.push_back(directional_derivative(u, lm.h(b)).truncated(k));
  }
  Upsilon out;
  try {
    out.coeffs = solve_linear_jets(g, rhs);
  } catch (const DegenerateFrameError& e) {
    throw PointError(ErrorKind::not_contact,
                     "dtheta restricted to H is degenerate (" + e.detail() + ")", lm.point());
  }
  out.field = TangentJet::zero(lm.dim(), k);
  for (std::size_t a = 0; a < n2; ++a) out.field += out.coeffs[a] * lm.h(a);
  return out;
}

LeviValue levi_coeff(const LocalModel& lm, const TangentJet& x, const TangentJet& y) {
  const double tx = std::abs(lm.theta_of(x).value());
  const double ty = std::abs(lm.theta_of(y).value());
  if (tx > 1e-9 || ty > 1e-9)
    throw PointError(ErrorKind::precondition, "Levi bracket needs horizontal arguments", lm.point());
  Jet via_bracket = lm.theta_of(lie_bracket(x, y));
  const Jet via_form = -lm.dtheta_of(x, y);
  return {via_bracket, std::abs(via_bracket.value() - via_form.value())};
}

SplitTractor split_tractor(const LocalModel& lm, const TangentJet& t) {
  Jet rho = lm.theta_of(t);
  const TangentJet h = t - rho * lm.reeb();
  return {std::move(rho), lm.decompose(h).e, lm.label()};
}

Jet to_rescaled_units(const Jet& coeff, const Jet& u) { return mul(exp(u), coeff); }

Jet from_rescaled_units(const Jet& hat_coeff, const Jet& u) { return mul(exp(-u), hat_coeff); }

SplitTractor change_splitting(const SplitTractor& st, const Upsilon& ups, const Jet& u,
                              const std::string& hat_tag) {
  const auto ue = ups.e_part();
  if (ue.size() != st.mu.size()) throw Error(ErrorKind::shape, "change of splitting: rank mismatch");
  SplitTractor out{to_rescaled_units(st.rho, u), {}, hat_tag};
  for (std::size_t a = 0; a < st.mu.size(); ++a) out.mu.push_back(sub(st.mu[a], mul(st.rho, ue[a])));
  return out;
}

}  // namespace legendrean
