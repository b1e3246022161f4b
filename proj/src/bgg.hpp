// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "connect.hpp"

namespace legendrean {

/// Inverts the Levi pairing E -> F* (x) Q on the rho-slots of phi (one tractor per
/// F-frame direction); returns (0, eta) with L(eta, F_a) = rho-slot of phi[a].
SplitTractor kostant_codiff(const LocalModel& lm, std::span<const SplitTractor> phi);

/// The tractor (rho, mu) with dtheta(mu, F_a) = -F_a . rho for all a, where rho is
/// a theta-coefficient.
SplitTractor splitting_operator(const LocalModel& lm, const Jet& rho);

/// E-coefficients of [xi, r].
std::vector<Jet> rho_along(const LocalModel& lm, const TangentJet& xi);
/// Row a holds the E-coefficients of [F_a, r].
JetMatrix rho_tensor(const LocalModel& lm);

struct BggValue {
  JetMatrix d;            // (a, b): Q-coefficient of D(rho)(F_a, F_b)
  double cross_residual;  // explicit bracket formula vs connection formula
};

BggValue bgg_d(const LocalModel& lm, const Jet& rho);

/// The combination that vanishes by d(dtheta) = 0 when xi1, xi2 are in F:
/// dtheta([xi1,z],xi2) - dtheta([xi2,z],xi1) + xi2.dtheta(z,xi1) - xi1.dtheta(z,xi2)
/// - dtheta([xi1,xi2],z). Returns the absolute value part.
double five_term_residual(const LocalModel& lm, const TangentJet& xi1, const TangentJet& xi2,
                          const TangentJet& zeta);

struct SymmetryResiduals {
  double symmetry = 0.0;   // max_{a<b} |D_ab - D_ba|
  double five_term = 0.0;  // over zeta in {r, mu, extra...}
};

/// `extra_zeta` are additional vector fields for the five-term identity.
SymmetryResiduals verify_symmetry(const LocalModel& lm, const Jet& rho,
                                  std::span<const TangentJet> extra_zeta = {});

/// max_ab |D_ab(rho) - e^-u D^_ab(e^u rho)| with the hat operator computed in `hat`.
double verify_d_invariance(const LocalModel& base, const LocalModel& hat, const Jet& u,
                           const Jet& rho);

}  // namespace legendrean
