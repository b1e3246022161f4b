// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "contact.hpp"

namespace legendrean {

/// Tolerance for "this vector lies in F" / "F is involutive" preconditions.
inline constexpr double kDirectionTol = 1e-9;

/// Throws precondition unless xi lies in F at the point.
void require_f_direction(const LocalModel& lm, const TangentJet& xi);

/// Q-coefficient of the partial connection on Q along xi in F, for the section
/// with theta-coefficient `rho`.
Jet nabla_q(const LocalModel& lm, const TangentJet& xi, const Jet& rho);
/// Same, for a Q-section given by a representative vector field.
Jet nabla_q(const LocalModel& lm, const TangentJet& xi, const TangentJet& rho_rep);

struct NablaEValue {
  std::vector<Jet> coeffs;  // E-frame coefficients
  double cross_residual;    // max_b |dtheta(result, F_b) - dtheta([xi, eta], F_b)|
};

/// ([xi, eta] - theta([xi, eta]) r)_E for xi in F and eta in E.
NablaEValue nabla_e(const LocalModel& lm, const TangentJet& xi, const TangentJet& eta);

/// The partial connection on TM/F along xi, applied to a section given either by
/// a representative vector field or by its components in the model's splitting.
SplitTractor tractor_connection(const LocalModel& lm, const TangentJet& xi, const TangentJet& t);
SplitTractor tractor_connection(const LocalModel& lm, const TangentJet& xi, const SplitTractor& st);

/// max over a < b of the r- and E-parts of [F_a, F_b] (value parts).
double involutivity_defect(const LocalModel& lm);

/// pi_{TM/F}([xi, t]) in the model's splitting. Throws non_involutive when F is
/// not involutive at the point.
SplitTractor bott_connection(const LocalModel& lm, const TangentJet& xi, const TangentJet& t);

struct TransformationResiduals {
  double q = 0.0;
  double e = 0.0;
};

/// Compares the connections computed against the rescaled model `hat` with the
/// base model plus the correction terms. `u` is the log scale of hat relative to
/// base, `rho` a theta-coefficient in base units, `eta` a section of E.
TransformationResiduals verify_transformation_laws(const LocalModel& base, const LocalModel& hat,
                                                   const Upsilon& ups, const Jet& u,
                                                   const TangentJet& xi, const Jet& rho,
                                                   const TangentJet& eta);

/// Slotwise difference between the base tractor derivative moved to the hat
/// splitting and the derivative computed directly in the hat model.
double verify_tractor_invariance(const LocalModel& base, const LocalModel& hat, const Upsilon& ups,
                                 const Jet& u, const TangentJet& xi, const TangentJet& t);

}  // namespace legendrean
