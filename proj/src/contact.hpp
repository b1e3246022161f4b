// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fields.hpp"

namespace legendrean {

inline constexpr double kContactTol = 1e-8;

/// A contact form theta = e^u * theta_base on a chart. u is absent for the base
/// structure and accumulates under repeated rescaling.
class ContactStructure {
 public:
  ContactStructure(Chart chart, OneForm theta);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return chart_.dim(); }
  const OneForm& base_form() const noexcept { return theta_; }
  const std::optional<ScalarField>& log_scale() const noexcept { return u_; }

  /// Structure for e^u * theta. The returned structure records u.
  ContactStructure rescale(const ScalarField& u) const;

  CovectorJet theta(std::span<const Jet> coords) const;
  /// u at the point (zero jet for the base structure).
  Jet log_scale_at(std::span<const Jet> coords) const;
  /// "theta" or "e^(u)*theta".
  std::string label() const;

 private:
  Chart chart_;
  OneForm theta_;
  std::optional<ScalarField> u_;
};

/// Frames of the rank-n subbundles E and F of H = ker theta, in coordinate components.
class LegendreanSplitting {
 public:
  LegendreanSplitting(std::vector<VectorField> e_frame, std::vector<VectorField> f_frame);
  std::size_t rank() const noexcept { return e_.size(); }
  const std::vector<VectorField>& e_frame() const noexcept { return e_; }
  const std::vector<VectorField>& f_frame() const noexcept { return f_; }

 private:
  std::vector<VectorField> e_;
  std::vector<VectorField> f_;
};

/// Coefficients of a tangent vector in the pointwise basis {r, E_1..E_n, F_1..F_n}.
struct HDecomposition {
  Jet q;
  std::vector<Jet> e;
  std::vector<Jet> f;
};

/// A section of TM/F in a theta-splitting: rho is the coefficient of pi_Q(r) for
/// the active contact form, mu the E-frame coefficients.
struct SplitTractor {
  Jet rho;
  std::vector<Jet> mu;
  std::string tag;

  double max_abs_diff_values(const SplitTractor& other) const;
};

/// Upsilon for a rescaling, both as a vector and as coefficients in the H-basis
/// (first n entries along E, last n along F).
struct Upsilon {
  TangentJet field;
  std::vector<Jet> coeffs;

  std::span<const Jet> e_part() const noexcept { return {coeffs.data(), coeffs.size() / 2}; }
};

/// Unique r with theta(r) = 1 and dtheta(r, .) = 0, solved by jet-valued normal
/// equations of the stacked system. `row_order` permutes the stacked rows (for
/// solver-independence checks). Throws not_contact when the system is rank
/// deficient.
TangentJet solve_reeb(std::span<const Jet> theta, const JetMatrix& dtheta,
                      std::span<const std::size_t> row_order = {});

/// Value-part residual of the Reeb defining equations.
double reeb_residual(std::span<const Jet> theta, const JetMatrix& dtheta, const TangentJet& r);

/// Determinant of the bordered matrix [[dtheta, theta^T], [theta, 0]]; nonzero
/// exactly when dtheta restricted to ker theta is nondegenerate.
double bordered_determinant(std::span<const Jet> theta, const JetMatrix& dtheta);

/// Everything about (structure, splitting) at one point, with derivatives.
class LocalModel {
 public:
  static LocalModel at(const ContactStructure& cs, const LegendreanSplitting& split,
                       std::span<const double> point, int order);

  const Point& point() const noexcept { return point_; }
  int order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::size_t rank() const noexcept { return e_.size(); }
  std::span<const Jet> coords() const noexcept { return coords_; }
  const CovectorJet& theta() const noexcept { return theta_; }
  const JetMatrix& dtheta() const noexcept { return dtheta_; }
  const TangentJet& reeb() const noexcept { return reeb_; }
  const TangentJet& e(std::size_t a) const { return e_[a]; }
  const TangentJet& f(std::size_t a) const { return f_[a]; }
  /// H-basis vector: E_0..E_{n-1}, F_0..F_{n-1}.
  const TangentJet& h(std::size_t a) const { return a < rank() ? e_[a] : f_[a - rank()]; }
  const Jet& log_scale() const noexcept { return log_scale_; }
  const std::string& label() const noexcept { return label_; }
  double basis_condition() const noexcept { return basis_lu_.condition(); }

  Jet theta_of(const TangentJet& v) const { return legendrean::contract(theta_, v); }
  Jet dtheta_of(const TangentJet& x, const TangentJet& y) const {
    return legendrean::contract(dtheta_, x, y);
  }
  /// Expansion of v in {r, E, F}.
  HDecomposition decompose(const TangentJet& v) const;
  /// sum_a c_a E_a.
  TangentJet e_field(std::span<const Jet> coeffs) const;
  /// E-coefficients of v - theta(v) r.
  std::vector<Jet> e_part(const TangentJet& v) const;

  /// Lift a theta-coefficient on the base structure into this model's units.
  Jet active_units(const Jet& base_coeff) const;

 private:
  LocalModel(Point p, int order, std::vector<Jet> coords, CovectorJet theta, JetMatrix dtheta,
             TangentJet reeb, std::vector<TangentJet> e, std::vector<TangentJet> f, Jet u,
             std::string label, JetLU basis_lu);

  Point point_;
  int order_;
  std::vector<Jet> coords_;
  CovectorJet theta_;
  JetMatrix dtheta_;
  TangentJet reeb_;
  std::vector<TangentJet> e_;
  std::vector<TangentJet> f_;
  Jet log_scale_;
  std::string label_;
  JetLU basis_lu_;
};

/// Pointwise invariant diagnostics of a (structure, splitting) pair.
struct StructureDiagnostics {
  double reeb_residual = 0.0;
  double bordered_det = 0.0;
  double frame_det = 0.0;          // det of dtheta restricted to H in the frame basis
  double horizontality = 0.0;      // max |theta(frame)|
  double isotropy_e = 0.0;         // max |dtheta(E_a, E_b)|
  double isotropy_f = 0.0;         // max |dtheta(F_a, F_b)|
  double basis_condition = 0.0;    // condition estimate of {r, E, F}
};

/// Computes diagnostics without LocalModel's degeneracy exceptions where possible.
StructureDiagnostics diagnose(const ContactStructure& cs, const LegendreanSplitting& split,
                              std::span<const double> point, int order = 1);

// -- Operations --------------------------------------------------------------

TangentJet reeb(const ContactStructure& cs, std::span<const double> point, int order);

/// Solves dtheta(Upsilon, B) = du(B) over the H-basis B. `u` is the log scale
/// relative to the model's contact form.
Upsilon upsilon(const LocalModel& lm, const Jet& u);

struct LeviValue {
  Jet value;              // theta([X, Y])
  double cross_residual;  // |theta([X,Y]) + dtheta(X,Y)| at the point
};

/// c with L(X, Y) = c pi_Q(r). Throws precondition when X or Y is not horizontal.
LeviValue levi_coeff(const LocalModel& lm, const TangentJet& x, const TangentJet& y);

SplitTractor split_tractor(const LocalModel& lm, const TangentJet& t);

/// The same TM/F section in the splitting of e^u theta:
/// rho -> e^u rho (hat units), mu -> mu - rho Upsilon_E.
SplitTractor change_splitting(const SplitTractor& st, const Upsilon& ups, const Jet& u,
                              const std::string& hat_tag);

/// Q-coefficient conversion between the trivializations by r and r_hat =
/// e^-u (r + Upsilon): theta_hat(rho) = e^u theta(rho).
Jet to_rescaled_units(const Jet& coeff, const Jet& u);
Jet from_rescaled_units(const Jet& hat_coeff, const Jet& u);

}  // namespace legendrean
