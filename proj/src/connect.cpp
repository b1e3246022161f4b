// SPDX-License-Identifier: Apache-2.0
#include "connect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "errors.hpp"

namespace legendrean {

namespace {

double max_abs_value(std::span<const Jet> v) {
  double m = 0.0;
  for (const auto& j : v) m = std::max(m, std::abs(j.value()));
  return m;
}

}  // namespace

void require_f_direction(const LocalModel& lm, const TangentJet& xi) {
  const HDecomposition d = lm.decompose(xi);
  const double off = std::max(std::abs(d.q.value()), max_abs_value(d.e));
  if (off > kDirectionTol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "direction is not a section of F (off-F part %.3g)", off);
    throw PointError(ErrorKind::precondition, buf, lm.point());
  }
}

Jet nabla_q(const LocalModel& lm, const TangentJet& xi, const Jet& rho) {
  require_f_direction(lm, xi);
  return directional_derivative(rho, xi);
}

Jet nabla_q(const LocalModel& lm, const TangentJet& xi, const TangentJet& rho_rep) {
  return nabla_q(lm, xi, lm.theta_of(rho_rep));
}

NablaEValue nabla_e(const LocalModel& lm, const TangentJet& xi, const TangentJet& eta) {
  require_f_direction(lm, xi);
  const HDecomposition de = lm.decompose(eta);
  const double off = std::max(std::abs(de.q.value()), max_abs_value(de.f));
  if (off > kDirectionTol)
    throw PointError(ErrorKind::precondition, "argument is not a section of E", lm.point());

  const TangentJet br = lie_bracket(xi, eta);
  NablaEValue out{lm.e_part(br), 0.0};
  const TangentJet field = lm.e_field(out.coeffs);
  for (std::size_t b = 0; b < lm.rank(); ++b) {
    const double lhs = lm.dtheta_of(field, lm.f(b)).value();
    const double rhs = lm.dtheta_of(br, lm.f(b)).value();
    out.cross_residual = std::max(out.cross_residual, std::abs(lhs - rhs));
  }
  return out;
}

SplitTractor tractor_connection(const LocalModel& lm, const TangentJet& xi, const TangentJet& t) {
  return tractor_connection(lm, xi, split_tractor(lm, t));
}

SplitTractor tractor_connection(const LocalModel& lm, const TangentJet& xi,
                                const SplitTractor& st) {
  const TangentJet mu = lm.e_field(st.mu);
  Jet upper = add(nabla_q(lm, xi, st.rho), lm.theta_of(lie_bracket(xi, mu)));

  std::vector<Jet> lower = nabla_e(lm, xi, mu).coeffs;
  const std::vector<Jet> p = lm.e_part(lie_bracket(xi, lm.reeb()));
  for (std::size_t a = 0; a < lower.size(); ++a) lower[a] = add(lower[a], mul(st.rho, p[a]));
  return {std::move(upper), std::move(lower), lm.label()};
}

double involutivity_defect(const LocalModel& lm) {
  double defect = 0.0;
  for (std::size_t a = 0; a < lm.rank(); ++a) {
    for (std::size_t b = a + 1; b < lm.rank(); ++b) {
      const HDecomposition d = lm.decompose(lie_bracket(lm.f(a), lm.f(b)));
      defect = std::max({defect, std::abs(d.q.value()), max_abs_value(d.e)});
    }
  }
  return defect;
}

SplitTractor bott_connection(const LocalModel& lm, const TangentJet& xi, const TangentJet& t) {
  for (std::size_t a = 0; a < lm.rank(); ++a) {
    for (std::size_t b = a + 1; b < lm.rank(); ++b) {
      const HDecomposition d = lm.decompose(lie_bracket(lm.f(a), lm.f(b)));
      const double off = std::max(std::abs(d.q.value()), max_abs_value(d.e));
      if (off > kDirectionTol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "F is not involutive: [F%zu, F%zu] leaves F by %.3g", a + 1,
                      b + 1, off);
        throw PointError(ErrorKind::non_involutive, buf, lm.point());
      }
    }
  }
  require_f_direction(lm, xi);
  return split_tractor(lm, lie_bracket(xi, t));
}

TransformationResiduals verify_transformation_laws(const LocalModel& base, const LocalModel& hat,
                                                   const Upsilon& ups, const Jet& u,
                                                   const TangentJet& xi, const Jet& rho,
                                                   const TangentJet& eta) {
  TransformationResiduals r;

  const Jet q_hat = from_rescaled_units(nabla_q(hat, xi, to_rescaled_units(rho, u)), u);
  const Jet q_base = add(nabla_q(base, xi, rho), mul(directional_derivative(u, xi), rho));
  r.q = std::abs(q_hat.value() - q_base.value());

  const auto e_hat = nabla_e(hat, xi, eta).coeffs;
  const auto e_base = nabla_e(base, xi, eta).coeffs;
  const double w = base.dtheta_of(xi, eta).value();
  const auto ue = ups.e_part();
  for (std::size_t a = 0; a < e_hat.size(); ++a)
    r.e = std::max(r.e, std::abs(e_hat[a].value() - (e_base[a].value() + w * ue[a].value())));
  return r;
}

double verify_tractor_invariance(const LocalModel& base, const LocalModel& hat, const Upsilon& ups,
                                 const Jet& u, const TangentJet& xi, const TangentJet& t) {
  const SplitTractor moved =
      change_splitting(tractor_connection(base, xi, t), ups, u, hat.label());
  return moved.max_abs_diff_values(tractor_connection(hat, xi, t));
}

}  // namespace legendrean
