// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "connect.hpp"
#include "errors.hpp"
#include "support.hpp"

using namespace legendrean;
using namespace legendrean::testing;

namespace {

const Point kP3{0.5, 0.2, 0.1};
const std::vector<std::string> kTractor5{"x1*y2", "sin(z)", "1 + x2^2", "y1", "exp(0.2*x1)"};

}  // namespace

TEST_SUITE("connect") {

TEST_CASE("nabla^Q differentiates the theta-coefficient along F") {
  const auto lm = model("darboux3", kP3);
  CHECK(nabla_q(lm, lm.f(0), field_at(lm, "darboux3", "x^2")).value() == doctest::Approx(1.0));
  // f = z: F.f = y
  CHECK(nabla_q(lm, lm.f(0), field_at(lm, "darboux3", "z")).value() == doctest::Approx(0.2));
  // A representative vector field carries the same Q-class as its theta-coefficient.
  const auto rep = vector_at(lm, "darboux3", {"0", "x*z", "x^2"});
  CHECK(nabla_q(lm, lm.f(0), rep).value() ==
        doctest::Approx(nabla_q(lm, lm.f(0), lm.theta_of(rep)).value()));
}

TEST_CASE("nabla^E by hand on darboux3") {
  const auto lm = model("darboux3", kP3);
  const auto plain = nabla_e(lm, lm.f(0), lm.e(0));
  CHECK(plain.coeffs[0].value() == doctest::Approx(0.0));
  const auto scaled = nabla_e(lm, lm.f(0), field_at(lm, "darboux3", "x") * lm.e(0));
  CHECK(scaled.coeffs[0].value() == doctest::Approx(1.0));
  CHECK(scaled.cross_residual <= 1e-14);
}

TEST_CASE("nabla^E refuses directions outside F and sections outside E") {
  const auto lm = model("darboux3", kP3);
  CHECK_THROWS_AS(nabla_e(lm, lm.e(0), lm.e(0)), PointError);
  CHECK_THROWS_AS(nabla_e(lm, lm.f(0), lm.f(0)), PointError);
  CHECK_THROWS_AS(nabla_q(lm, lm.reeb(), field_at(lm, "darboux3", "x")), PointError);
}

TEST_CASE("Leibniz rule and tensoriality in the direction") {
  for (const char* name : {"darboux5", "twisted5"}) {
    for (const auto& p : points(name, 10)) {
      const auto lm = model(name, p);
      const Jet g = field_at(lm, name, "1 + 0.5*x1*y2");
      const Jet rho = field_at(lm, name, "x1^2*z + y1");
      const TangentJet eta = field_at(lm, name, "x2") * lm.e(0) + lm.e(1);
      const TangentJet& xi = lm.f(1);
      const TangentJet gxi = g * xi;

      CHECK(std::abs(nabla_q(lm, xi, g * rho).value() -
                     (g.value() * nabla_q(lm, xi, rho).value() +
                      directional_derivative(g, xi).value() * rho.value())) <= 1e-12);
      CHECK(std::abs(nabla_q(lm, gxi, rho).value() - g.value() * nabla_q(lm, xi, rho).value()) <= 1e-12);

      const auto ge = nabla_e(lm, xi, g * eta).coeffs;
      const auto e = nabla_e(lm, xi, eta).coeffs;
      const auto coeffs = lm.decompose(eta).e;
      const Jet dg = directional_derivative(g, xi);
      for (std::size_t c = 0; c < lm.rank(); ++c)
        CHECK(std::abs(ge[c].value() - (g.value() * e[c].value() + dg.value() * coeffs[c].value())) <= 1e-12);
      const auto ge2 = nabla_e(lm, gxi, eta).coeffs;
      for (std::size_t c = 0; c < lm.rank(); ++c)
        CHECK(std::abs(ge2[c].value() - g.value() * e[c].value()) <= 1e-12);

      const auto t = vector_at(lm, name, kTractor5);
      const auto a = tractor_connection(lm, gxi, t);
      const auto b = tractor_connection(lm, xi, t);
      CHECK(std::abs(a.rho.value() - g.value() * b.rho.value()) <= 1e-12);
      for (std::size_t c = 0; c < lm.rank(); ++c)
        CHECK(std::abs(a.mu[c].value() - g.value() * b.mu[c].value()) <= 1e-12);
    }
  }
}

TEST_CASE("tractor connection on d/dz over darboux3 vanishes") {
  const auto lm = model("darboux3", kP3);
  const auto t = tractor_connection(lm, lm.f(0), lm.reeb());
  CHECK(t.rho.value() == doctest::Approx(0.0));
  CHECK(t.mu[0].value() == doctest::Approx(0.0));
}

TEST_CASE("tractor connection ignores the F-part of a representative") {
  const auto lm = model("twisted5", {0.2, -0.1, 0.4, 0.3, 0.0});
  const auto t = vector_at(lm, "twisted5", kTractor5);
  const TangentJet shifted = t + field_at(lm, "twisted5", "sin(x2)") * lm.f(0);
  CHECK(tractor_connection(lm, lm.f(1), t).max_abs_diff_values(tractor_connection(lm, lm.f(1), shifted)) <= 1e-12);
}

TEST_CASE("transformation laws for u = x on darboux3") {
  const auto lm = model("darboux3", kP3);
  const auto hat = rescaled("darboux3", "x", kP3);
  const Jet u = field_at(lm, "darboux3", "x");
  const auto r = verify_transformation_laws(lm, hat, upsilon(lm, u), u, lm.f(0),
                                            field_at(lm, "darboux3", "1"), lm.e(0));
  CHECK(r.q <= 1e-9);
  CHECK(r.e <= 1e-9);
  // The E-correction dtheta(F, E) Upsilon_E is +1 * (-E).
  CHECK(lm.dtheta_of(lm.f(0), lm.e(0)).value() == doctest::Approx(1.0));
}

TEST_CASE("tractor invariance and Bott agreement on involutive examples") {
  for (const char* name : {"darboux3", "darboux5"}) {
    const bool five = std::string(name) == "darboux5";
    const std::string u = five ? "0.3*sin(x1)*y2 + x1*x2" : "0.3*sin(x)*y + x";
    for (const auto& p : points(name, 10)) {
      const auto lm = model(name, p);
      const auto hat = rescaled(name, u, p);
      const Jet uj = field_at(lm, name, u);
      const auto t = five ? vector_at(lm, name, kTractor5) : vector_at(lm, name, {"x*y", "z", "y^2"});
      for (std::size_t a = 0; a < lm.rank(); ++a) {
        CHECK(verify_tractor_invariance(lm, hat, upsilon(lm, uj), uj, lm.f(a), t) <= 1e-9);
        CHECK(bott_connection(lm, lm.f(a), t).max_abs_diff_values(tractor_connection(lm, lm.f(a), t)) <= 1e-9);
      }
      CHECK(involutivity_defect(lm) <= 1e-12);
    }
  }
}

TEST_CASE("Bott connection refuses a non-involutive F") {
  const auto lm = model("twisted5", {0.2, -0.1, 0.4, 0.3, 0.0});
  // [F_1, F_2] = d/dy1 = E_1 in the twisted frame.
  CHECK(involutivity_defect(lm) == doctest::Approx(1.0));
  try {
    bott_connection(lm, lm.f(0), lm.reeb());
    FAIL("non-involutive F accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_involutive);
  }
}

TEST_CASE("on twisted5 invariance holds when du vanishes on E") {
  for (const auto& p : points("twisted5", 10)) {
    const auto lm = model("twisted5", p);
    const auto hat = rescaled("twisted5", "x1*x2 + 0.3*sin(x1)*x2", p);
    const Jet u = field_at(lm, "twisted5", "x1*x2 + 0.3*sin(x1)*x2");
    const auto t = vector_at(lm, "twisted5", kTractor5);
    for (std::size_t a = 0; a < 2; ++a)
      CHECK(verify_tractor_invariance(lm, hat, upsilon(lm, u), u, lm.f(a), t) <= 1e-9);
  }
}

TEST_CASE("on twisted5 the invariance defect is theta(t) [xi, Upsilon_F]_E") {
  // With F non-involutive and du nonzero on E, Upsilon has an F-part whose bracket
  // with xi leaves an E-component that the change of splitting does not absorb.
  for (const auto& p : points("twisted5", 10)) {
    const std::string u = "0.3*sin(x1)*y2";
    const auto lm = model("twisted5", p);
    const auto hat = rescaled("twisted5", u, p);
    const Jet uj = field_at(lm, "twisted5", u);
    const Upsilon ups = upsilon(lm, uj);
    const TangentJet ups_f = ups.coeffs[2] * lm.f(0) + ups.coeffs[3] * lm.f(1);
    const auto t = vector_at(lm, "twisted5", kTractor5);
    const Jet rho = lm.theta_of(t);
    for (std::size_t a = 0; a < 2; ++a) {
      const SplitTractor moved = change_splitting(tractor_connection(lm, lm.f(a), t), ups, uj, hat.label());
      const SplitTractor direct = tractor_connection(hat, lm.f(a), t);
      const auto predicted = lm.e_part(lie_bracket(lm.f(a), ups_f));
      CHECK(std::abs(moved.rho.value() - direct.rho.value()) <= 1e-12);
      for (std::size_t c = 0; c < 2; ++c)
        CHECK(std::abs(direct.mu[c].value() - moved.mu[c].value() - rho.value() * predicted[c].value()) <= 1e-12);
    }
  }
}

}  // TEST_SUITE
