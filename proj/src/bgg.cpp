// SPDX-License-Identifier: Apache-2.0
#include "bgg.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace legendrean {

namespace {

// Solves sum_c beta_c * sign * dtheta(E_c, F_a) = rhs_a.
std::vector<Jet> solve_e_pairing(const LocalModel& lm, std::span<const Jet> rhs, double sign) {
  const std::size_t n = lm.rank();
  const int k = std::min(lm.dtheta().order(), min_order(rhs));
  JetMatrix m(n, n, Jet(lm.dim(), k));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) m(a, c) = sign * lm.dtheta_of(lm.e(c), lm.f(a)).truncated(k);
  try {
    return solve_linear_jets(m, rhs);
  } catch (const DegenerateFrameError& e) {
    throw PointError(ErrorKind::not_contact, "Levi pairing of E and F is degenerate (" +
                                                 e.detail() + ")", lm.point());
  }
}

}  // namespace

SplitTractor kostant_codiff(const LocalModel& lm, std::span<const SplitTractor> phi) {
  if (phi.size() != lm.rank())
    throw Error(ErrorKind::shape, "codifferential needs one tractor per F direction");
  std::vector<Jet> q;
  for (const auto& t : phi) q.push_back(t.rho);
  std::vector<Jet> eta = solve_e_pairing(lm, q, -1.0);
  Jet zero(lm.dim(), min_order(eta));
  return {std::move(zero), std::move(eta), lm.label()};
}

SplitTractor splitting_operator(const LocalModel& lm, const Jet& rho) {
  std::vector<Jet> rhs;
  for (std::size_t a = 0; a < lm.rank(); ++a) rhs.push_back(-directional_derivative(rho, lm.f(a)));
  return {rho, solve_e_pairing(lm, rhs, 1.0), lm.label()};
}

std::vector<Jet> rho_along(const LocalModel& lm, const TangentJet& xi) {
  return lm.e_part(lie_bracket(xi, lm.reeb()));
}

JetMatrix rho_tensor(const LocalModel& lm) {
  const std::size_t n = lm.rank();
  std::vector<std::vector<Jet>> rows;
  for (std::size_t a = 0; a < n; ++a) rows.push_back(rho_along(lm, lm.f(a)));
  JetMatrix p(n, n, rows[0][0]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) p(a, b) = rows[a][b];
  return p;
}

BggValue bgg_d(const LocalModel& lm, const Jet& rho) {
  const std::size_t n = lm.rank();
  const SplitTractor s = splitting_operator(lm, rho);
  const TangentJet mu = lm.e_field(s.mu);

  std::vector<TangentJet> lifted;
  std::vector<std::vector<Jet>> gamma;
  for (std::size_t a = 0; a < n; ++a) {
    const TangentJet rb = lie_bracket(lm.f(a), lm.reeb());
    lifted.push_back(lie_bracket(lm.f(a), mu) + rho * rb);
    gamma.push_back(tractor_connection(lm, lm.f(a), s).mu);
  }

  const int k = lifted[0].order();
  BggValue out{JetMatrix(n, n, Jet(lm.dim(), k)), 0.0};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.d(a, b) = -lm.dtheta_of(lifted[a], lm.f(b));
      double abstract = 0.0;
      for (std::size_t c = 0; c < n; ++c)
        abstract -= gamma[a][c].value() * lm.dtheta_of(lm.e(c), lm.f(b)).value();
      out.cross_residual = std::max(out.cross_residual, std::abs(out.d(a, b).value() - abstract));
    }
  }
  return out;
}

double five_term_residual(const LocalModel& lm, const TangentJet& xi1, const TangentJet& xi2,
                          const TangentJet& zeta) {
  const Jet t1 = lm.dtheta_of(lie_bracket(xi1, zeta), xi2);
  const Jet t2 = lm.dtheta_of(lie_bracket(xi2, zeta), xi1);
  const Jet t3 = directional_derivative(lm.dtheta_of(zeta, xi1), xi2);
  const Jet t4 = directional_derivative(lm.dtheta_of(zeta, xi2), xi1);
  const Jet t5 = lm.dtheta_of(lie_bracket(xi1, xi2), zeta);
  return std::abs(t1.value() - t2.value() + t3.value() - t4.value() - t5.value());
}

SymmetryResiduals verify_symmetry(const LocalModel& lm, const Jet& rho,
                                  std::span<const TangentJet> extra_zeta) {
  SymmetryResiduals r;
  const BggValue d = bgg_d(lm, rho);
  for (std::size_t a = 0; a < lm.rank(); ++a)
    for (std::size_t b = a + 1; b < lm.rank(); ++b)
      r.symmetry = std::max(r.symmetry, std::abs(d.d(a, b).value() - d.d(b, a).value()));

  std::vector<TangentJet> zetas{lm.reeb(), lm.e_field(splitting_operator(lm, rho).mu)};
  zetas.insert(zetas.end(), extra_zeta.begin(), extra_zeta.end());
  // A non-constant multiple keeps the identity non-trivial when xi1 and xi2 share a frame vector.
  const Jet& x0 = lm.coords()[0];
  const Jet g = 1.0 + 0.5 * x0 * x0;
  for (std::size_t a = 0; a < lm.rank(); ++a) {
    for (std::size_t b = a; b < lm.rank(); ++b) {
      const TangentJet xi2 = g * lm.f(b);
      for (const auto& z : zetas)
        r.five_term = std::max(r.five_term, five_term_residual(lm, lm.f(a), xi2, z));
    }
  }
  return r;
}

double verify_d_invariance(const LocalModel& base, const LocalModel& hat, const Jet& u,
                           const Jet& rho) {
  const BggValue d = bgg_d(base, rho);
  const BggValue dh = bgg_d(hat, to_rescaled_units(rho, u));
  double worst = 0.0;
  for (std::size_t a = 0; a < base.rank(); ++a)
    for (std::size_t b = 0; b < base.rank(); ++b)
      worst = std::max(worst, std::abs(d.d(a, b).value() -
                                       from_rescaled_units(dh.d(a, b), u).value()));
  return worst;
}

}  // namespace legendrean
