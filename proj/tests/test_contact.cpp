// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "contact.hpp"
#include "errors.hpp"
#include "support.hpp"

using namespace legendrean;
using namespace legendrean::testing;

namespace {

const Point kP3{0.5, 0.2, 0.1};

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::config;
}

}  // namespace

TEST_SUITE("contact") {

TEST_CASE("Reeb field of dz - y dx is d/dz") {
  const auto r = reeb(example("darboux3").cs, kP3, 1);
  CHECK(max_diff(r.values(), {0, 0, 1}) <= 1e-12);
}

TEST_CASE("Reeb field satisfies its defining equations everywhere sampled") {
  for (const char* name : {"darboux3", "darboux5", "twisted5"}) {
    for (const auto& p : points(name, 20)) {
      const auto lm = model(name, p);
      CHECK(reeb_residual(lm.theta(), lm.dtheta(), lm.reeb()) <= 1e-12);
      CHECK(std::abs(bordered_determinant(lm.theta(), lm.dtheta())) > 1e-8);
    }
  }
}

TEST_CASE("closed one-forms are rejected as non-contact") {
  const std::vector<std::string> c{"x", "y", "z"};
  ContactStructure dz(Chart(c, {{-1, 1}, {-1, 1}, {-1, 1}}),
                      OneForm({parse_field("0", c), parse_field("0", c), parse_field("1", c)}));
  CHECK(kind_of([&] { return reeb(dz, kP3, 1); }) == ErrorKind::not_contact);
  const auto s = seed_point(kP3, 1);
  const auto th = dz.theta(s);
  CHECK(bordered_determinant(th, exterior_derivative(th)) == 0.0);
}

TEST_CASE("decomposition in {r, E, F} by hand") {
  const auto lm = model("darboux3", kP3);
  const auto d = lm.decompose(vector_at(lm, "darboux3", {"1", "0", "0"}));
  CHECK(d.q.value() == doctest::Approx(-0.2));
  CHECK(d.e[0].value() == doctest::Approx(0.0));
  CHECK(d.f[0].value() == doctest::Approx(1.0));
}

TEST_CASE("Levi bracket of F and E") {
  const auto lm = model("darboux3", kP3);
  const auto l = levi_coeff(lm, lm.f(0), lm.e(0));
  CHECK(l.value.value() == doctest::Approx(-1.0));
  CHECK(l.cross_residual <= 1e-14);
  CHECK(kind_of([&] { return levi_coeff(lm, lm.reeb(), lm.e(0)); }) == ErrorKind::precondition);
}

TEST_CASE("Upsilon for u = x is -d/dy") {
  const auto lm = model("darboux3", kP3);
  const Upsilon ups = upsilon(lm, field_at(lm, "darboux3", "x"));
  CHECK(max_diff(ups.field.values(), {0, -1, 0}) <= 1e-12);
  REQUIRE(ups.coeffs.size() == 2);
  CHECK(ups.coeffs[0].value() == doctest::Approx(-1.0));
  CHECK(ups.coeffs[1].value() == doctest::Approx(0.0));
}

TEST_CASE("Upsilon is characterised by dtheta(Upsilon, .) = du on H") {
  for (const char* name : {"darboux5", "twisted5"}) {
    for (const auto& p : points(name, 10)) {
      const auto lm = model(name, p);
      const Jet u = field_at(lm, name, "0.3*sin(x1)*y2 + x1*x2");
      const Upsilon ups = upsilon(lm, u);
      for (std::size_t b = 0; b < 2 * lm.rank(); ++b)
        CHECK(std::abs(lm.dtheta_of(ups.field, lm.h(b)).value() -
                       directional_derivative(u, lm.h(b)).value()) <= 1e-12);
      CHECK(std::abs(directional_derivative(u, ups.field).value()) <= 1e-12);
    }
  }
}

TEST_CASE("rescaled Reeb field is e^-u (r + Upsilon)") {
  for (const auto& p : points("twisted5", 10)) {
    const std::string u = "0.3*sin(x1)*y2";
    const auto lm = model("twisted5", p);
    const auto hat = rescaled("twisted5", u, p);
    const Jet uj = field_at(lm, "twisted5", u);
    const Upsilon ups = upsilon(lm, uj);
    const TangentJet expected = exp(uj * -1.0) * (lm.reeb() + ups.field);
    CHECK(max_diff(hat.reeb().values(), expected.values()) <= 1e-12);
  }
}

TEST_CASE("u = 0 is the identity") {
  const auto lm = model("darboux5", {0.1, 0.2, 0.3, 0.4, 0.5});
  const auto hat = rescaled("darboux5", "0", {0.1, 0.2, 0.3, 0.4, 0.5});
  const Jet zero = field_at(lm, "darboux5", "0");
  CHECK(max_diff(hat.reeb().values(), lm.reeb().values()) == 0.0);
  const Upsilon ups = upsilon(lm, zero);
  CHECK(max_diff(ups.field.values(), {0, 0, 0, 0, 0}) == 0.0);
  const auto t = vector_at(lm, "darboux5", {"x1", "y2", "1", "0", "z"});
  const SplitTractor st = split_tractor(lm, t);
  const SplitTractor moved = change_splitting(st, ups, zero, hat.label());
  CHECK(moved.max_abs_diff_values(split_tractor(hat, t)) == 0.0);
}

TEST_CASE("change of splitting for d/dz under u = x") {
  const auto lm = model("darboux3", kP3);
  const auto hat = rescaled("darboux3", "x", kP3);
  const Jet u = field_at(lm, "darboux3", "x");
  const auto t = vector_at(lm, "darboux3", {"0", "0", "1"});
  const SplitTractor st = split_tractor(lm, t);
  CHECK(st.rho.value() == doctest::Approx(1.0));
  CHECK(st.mu[0].value() == doctest::Approx(0.0));
  const SplitTractor moved = change_splitting(st, upsilon(lm, u), u, hat.label());
  CHECK(moved.rho.value() == doctest::Approx(std::exp(0.5)));
  CHECK(moved.mu[0].value() == doctest::Approx(1.0));
  CHECK(moved.max_abs_diff_values(split_tractor(hat, t)) <= 1e-12);
}

TEST_CASE("Q-coefficients scale by e^u into rescaled units") {
  const auto lm = model("darboux3", kP3);
  const Jet u = field_at(lm, "darboux3", "x*y");
  const Jet c = field_at(lm, "darboux3", "2 + z");
  CHECK(to_rescaled_units(c, u).value() == doctest::Approx(2.1 * std::exp(0.1)));
  CHECK(max_abs_diff(from_rescaled_units(to_rescaled_units(c, u), u), c) <= 1e-15);
  // theta_hat(t) for t = d/dz is e^u, so the hat rho-slot of d/dz is e^u in these units.
  const auto hat = rescaled("darboux3", "x*y", kP3);
  const auto t = vector_at(lm, "darboux3", {"0", "0", "1"});
  CHECK(split_tractor(hat, t).rho.value() == doctest::Approx(std::exp(0.1)));
}

TEST_CASE("structure diagnostics of the shipped examples") {
  for (const char* name : {"darboux3", "darboux5", "twisted5"}) {
    const auto& s = example(name);
    for (const auto& p : points(name, 10)) {
      const auto d = diagnose(s.cs, s.split, p);
      CHECK(d.reeb_residual <= 1e-12);
      CHECK(d.horizontality <= 1e-12);
      CHECK(d.isotropy_e <= 1e-12);
      CHECK(d.isotropy_f <= 1e-12);
      CHECK(std::abs(d.frame_det) > 1e-8);
      CHECK(d.basis_condition < kCondMax);
    }
  }
}

}  // TEST_SUITE
