// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "bgg.hpp"
#include "frozen.hpp"
#include "support.hpp"

using namespace legendrean;
using namespace legendrean::testing;

namespace {

const Point kP3{0.5, 0.2, 0.1};
const Point kP5{0.3, 0.4, -0.2, 0.6, 0.1};
const char* kRho5 = "x1^2*x2 + sin(y1)*z + exp(0.5*x2)*y2";

std::vector<double> d_values(const LocalModel& lm, const Jet& rho) { return bgg_d(lm, rho).d.values(); }

}  // namespace

TEST_SUITE("bgg") {

TEST_CASE("D of x^2 on darboux3 is F.F.x^2 = 2 everywhere") {
  for (const auto& p : points("darboux3", 20)) {
    const auto lm = model("darboux3", p);
    const auto d = bgg_d(lm, field_at(lm, "darboux3", "x^2"));
    CHECK(std::abs(d.d(0, 0).value() - 2.0) <= 1e-10);
    CHECK(d.cross_residual <= 1e-12);
  }
}

TEST_CASE("splitting operator by hand") {
  const auto lm = model("darboux3", kP3);
  const auto s = splitting_operator(lm, field_at(lm, "darboux3", "x^2"));
  CHECK(s.rho.value() == doctest::Approx(0.25));
  CHECK(s.mu[0].value() == doctest::Approx(1.0));
  const auto one = splitting_operator(lm, field_at(lm, "darboux3", "1"));
  CHECK(one.mu[0].value() == doctest::Approx(0.0));
}

TEST_CASE("codifferential inverts the Levi pairing") {
  const auto lm = model("darboux3", kP3);
  const Jet one = field_at(lm, "darboux3", "1");
  const Jet zero = field_at(lm, "darboux3", "0");
  const std::vector<SplitTractor> phi{{one, {zero}, lm.label()}};
  const auto eta = kostant_codiff(lm, phi);
  CHECK(eta.rho.value() == 0.0);
  // L(beta E_1, F_1) = -dtheta(beta E_1, F_1) = beta, so q = 1 gives beta = +1.
  CHECK(eta.mu[0].value() == doctest::Approx(1.0));
  const TangentJet field = lm.e_field(eta.mu);
  CHECK(std::abs(-lm.dtheta_of(field, lm.f(0)).value() - 1.0) <= 1e-12);
}

TEST_CASE("codifferential is linear and kills the image of nabla S") {
  for (const char* name : {"darboux5", "twisted5"}) {
    for (const auto& p : points(name, 10)) {
      const auto lm = model(name, p);
      const Jet a = field_at(lm, name, "x1 + y2");
      const Jet b = field_at(lm, name, "z*x2");
      const Jet c = field_at(lm, name, "1");
      const std::vector<SplitTractor> phi{{a, {b, c}, lm.label()}, {b, {a, a}, lm.label()}};
      const std::vector<SplitTractor> psi{{c, {a, b}, lm.label()}, {a, {c, b}, lm.label()}};
      std::vector<SplitTractor> sum;
      for (std::size_t i = 0; i < 2; ++i)
        sum.push_back({phi[i].rho + psi[i].rho, {phi[i].mu[0] + psi[i].mu[0], phi[i].mu[1] + psi[i].mu[1]}, lm.label()});
      const auto lhs = kostant_codiff(lm, sum);
      const auto r1 = kostant_codiff(lm, phi);
      const auto r2 = kostant_codiff(lm, psi);
      for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(lhs.mu[k].value() - r1.mu[k].value() - r2.mu[k].value()) <= 1e-12);

      const Jet rho = field_at(lm, name, kRho5);
      const SplitTractor s = splitting_operator(lm, rho);
      std::vector<SplitTractor> nabla;
      for (std::size_t k = 0; k < 2; ++k) nabla.push_back(tractor_connection(lm, lm.f(k), s));
      for (const auto& t : nabla) CHECK(std::abs(t.rho.value()) <= 1e-12);
      const auto kill = kostant_codiff(lm, nabla);
      CHECK(max_diff(kill.mu, std::vector<Jet>{field_at(lm, name, "0"), field_at(lm, name, "0")}) <= 1e-12);
    }
  }
}

TEST_CASE("Rho tensor vanishes on Darboux models and is tensorial") {
  for (const char* name : {"darboux3", "darboux5"}) {
    const auto lm = model(name, name == std::string("darboux3") ? kP3 : kP5);
    for (double v : rho_tensor(lm).values()) CHECK(v == 0.0);
  }
  for (const auto& p : points("twisted5", 10)) {
    const auto lm = model("twisted5", p);
    const Jet g = field_at(lm, "twisted5", "x1*x2 + 2");
    for (std::size_t a = 0; a < 2; ++a) {
      const auto scaled = rho_along(lm, g * lm.f(a));
      const auto plain = rho_along(lm, lm.f(a));
      for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(scaled[c].value() - g.value() * plain[c].value()) <= 1e-12);
    }
  }
}

TEST_CASE("D agrees with the symbolic reference") {
  const auto d5 = model("darboux5", kP5);
  const auto t5 = model("twisted5", kP5);
  const auto a = bgg_d(d5, field_at(d5, "darboux5", kRho5));
  const auto b = bgg_d(t5, field_at(t5, "twisted5", kRho5));
  const std::vector<double> ref_d(std::begin(kBggDarboux5), std::end(kBggDarboux5));
  const std::vector<double> ref_t(std::begin(kBggTwisted5), std::end(kBggTwisted5));
  CHECK(max_diff(a.d.values(), ref_d) <= 1e-12);
  CHECK(max_diff(b.d.values(), ref_t) <= 1e-12);
  CHECK(a.cross_residual <= 1e-12);
  CHECK(b.cross_residual <= 1e-12);
  CHECK(max_diff(d5.reeb().values(), std::vector<double>(std::begin(kReebDarboux5), std::end(kReebDarboux5))) <= 1e-14);
  CHECK(max_diff(t5.reeb().values(), std::vector<double>(std::begin(kReebTwisted5), std::end(kReebTwisted5))) <= 1e-14);
}

TEST_CASE("D is second order with no zeroth-order part on Darboux models") {
  for (const auto& p : points("darboux5", 10)) {
    const auto lm = model("darboux5", p);
    // z is excluded: its F-derivatives are y_a, which are not constant along F.
    for (const char* f : {"1", "2*x1 - y1 + 3*x2 + 0.5*y2"}) {
      for (double v : d_values(lm, field_at(lm, "darboux5", f))) CHECK(std::abs(v) <= 1e-10);
    }
  }
}

TEST_CASE("D is linear but not tensorial") {
  const auto lm = model("darboux5", kP5);
  const Jet f = field_at(lm, "darboux5", "x1^2 + y2*z");
  const Jet g = field_at(lm, "darboux5", "sin(x2)*y1");
  const auto sum = d_values(lm, f + g);
  const auto df = d_values(lm, f);
  const auto dg = d_values(lm, g);
  for (std::size_t i = 0; i < sum.size(); ++i) CHECK(std::abs(sum[i] - df[i] - dg[i]) <= 1e-12);
  const Jet x = field_at(lm, "darboux5", "x1");
  const auto dxf = d_values(lm, x * f);
  double gap = 0.0;
  for (std::size_t i = 0; i < df.size(); ++i) gap = std::max(gap, std::abs(dxf[i] - x.value() * df[i]));
  CHECK(gap > 1e-3);
}

TEST_CASE("symmetry and the five-term identity on involutive examples") {
  for (const auto& p : points("darboux5", 20)) {
    const auto lm = model("darboux5", p);
    const auto r = verify_symmetry(lm, field_at(lm, "darboux5", kRho5));
    CHECK(r.symmetry <= 1e-10);
    CHECK(r.five_term <= 1e-10);
  }
  const auto lm = model("darboux3", kP3);
  const std::vector<TangentJet> extra{vector_at(lm, "darboux3", {"x*z", "sin(y)", "1 + x^2"})};
  const auto r = verify_symmetry(lm, field_at(lm, "darboux3", "x^2*y"), extra);
  CHECK(r.symmetry == 0.0);
  CHECK(r.five_term <= 1e-12);
}

TEST_CASE("on twisted5 the five-term identity holds and the asymmetry is [F1,F2].f off F") {
  for (const auto& p : points("twisted5", 20)) {
    const auto lm = model("twisted5", p);
    const Jet rho = field_at(lm, "twisted5", kRho5);
    const auto r = verify_symmetry(lm, rho);
    CHECK(r.five_term <= 1e-10);
    const auto d = bgg_d(lm, rho);
    const auto dec = lm.decompose(lie_bracket(lm.f(0), lm.f(1)));
    const TangentJet off_f = dec.q * lm.reeb() + lm.e_field(dec.e);
    const double predicted = directional_derivative(rho, off_f).value();
    CHECK(std::abs(d.d(0, 1).value() - d.d(1, 0).value() - predicted) <= 1e-12);
  }
}

TEST_CASE("D is invariant under rescaling") {
  {
    const auto lm = model("darboux3", kP3);
    const auto hat = rescaled("darboux3", "x", kP3);
    CHECK(verify_d_invariance(lm, hat, field_at(lm, "darboux3", "x"), field_at(lm, "darboux3", "x^2")) <= 1e-10);
    const auto same = rescaled("darboux3", "0", kP3);
    CHECK(verify_d_invariance(lm, same, field_at(lm, "darboux3", "0"), field_at(lm, "darboux3", "x^2")) <= 1e-12);
  }
  for (const char* name : {"darboux5", "twisted5"}) {
    for (const auto& p : points(name, 10)) {
      const auto lm = model(name, p);
      const auto hat = rescaled(name, "x1*x2", p);
      CHECK(verify_d_invariance(lm, hat, field_at(lm, name, "x1*x2"), field_at(lm, name, kRho5)) <= 1e-10);
    }
  }
}

}  // TEST_SUITE
