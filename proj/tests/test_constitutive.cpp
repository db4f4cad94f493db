#include <cmath>
#include <random>

#include "doctest.h"
#include "mhdshell/constitutive.hpp"
#include "mhdshell/errors.hpp"
#include "mhdshell/validate.hpp"

using namespace mhdshell;
using constitutive::EosParams;

namespace {

EosParams gas(double gamma, double a, double delta = 0.01, double beta = 4.0) {
  EosParams e;
  e.gamma = gamma;
  e.a = a;
  e.delta = delta;
  e.beta = beta;
  return e;
}

}  // namespace

TEST_CASE("pressure closed forms") {
  CHECK(constitutive::pressure(gas(2.0, 3.0), 0.0, 0.0, 1.0) == 0.0);
  CHECK(constitutive::pressure(gas(2.0, 3.0), 1.0, 1.0, 1.0) == doctest::Approx(3.0));
  CHECK(constitutive::pressure(gas(2.0, 0.0), 2.0, 1.0, 1.0) == doctest::Approx(6.0));
}

TEST_CASE("total pressure adds magnetic and artificial parts") {
  const auto e0 = gas(2.0, 0.0, 0.01);
  // delta = 0 limit realized with b = 0 and the configured delta scaled out
  CHECK(constitutive::total_pressure(gas(2.0, 1.0, 1e-300), 1.0, 0.0, 1.0, 1.0) ==
        doctest::Approx(constitutive::pressure(gas(2.0, 1.0), 1.0, 1.0, 1.0)));
  CHECK(constitutive::total_pressure(gas(2.0, 0.0, 0.01, 4.0), 1.0, 1.0, 0.0, 1.0) ==
        doctest::Approx(1.0 + 0.5 + 0.01 * 16.0));
  CHECK(constitutive::total_pressure(gas(2.0, 0.0, 1e-300), 0.0, 2.0, 0.0, 1.0) ==
        doctest::Approx(2.0));
  (void)e0;
}

TEST_CASE("internal energy closed forms and vacuum error") {
  CHECK(constitutive::internal_energy(gas(2.0, 0.0), 1.0, 1.0, 1.0) == doctest::Approx(2.0));
  CHECK(constitutive::internal_energy(gas(2.0, 3.0), 1.0, 1.0, 1.0) == doctest::Approx(5.0));
  CHECK(constitutive::internal_energy(gas(2.0, 0.0), 2.0, 0.0, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(constitutive::internal_energy(gas(2.0, 1.0), 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("entropy closed forms and domain errors") {
  CHECK(constitutive::entropy(gas(2.0, 0.0), 1.0, 1.0, 1.0) == doctest::Approx(0.0));
  CHECK(constitutive::entropy(gas(2.0, 3.0), 1.0, 1.0, 1.0) == doctest::Approx(4.0));
  CHECK(constitutive::entropy(gas(2.0, 0.0), std::exp(1.0), 1.0, 1.0) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(constitutive::entropy(gas(2.0, 1.0), 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(constitutive::entropy(gas(2.0, 1.0), 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("transport coefficients and extension scaling") {
  const auto tc0 = constitutive::transport_coeffs(gas(2.0, 1.0), 0.0, 1.0, 1.0);
  CHECK(tc0.mu == doctest::Approx(1.0));
  CHECK(tc0.eta == doctest::Approx(1.0));
  CHECK(tc0.kappa == doctest::Approx(1.0));
  const auto tc1 = constitutive::transport_coeffs(gas(2.0, 1.0), 1.0, 1.0, 1.0);
  CHECK(tc1.mu == doctest::Approx(2.0));
  CHECK(tc1.kappa == doctest::Approx(2.0));
  const double om = 0.25, ze = 0.5;
  const auto tc2 = constitutive::transport_coeffs(gas(2.0, 1.0), 1.0, om, ze);
  CHECK(tc2.mu == doctest::Approx(2.0 * om));
  CHECK(tc2.eta == doctest::Approx(2.0 * om));
  CHECK(tc2.kappa == doctest::Approx(2.0 * ze));
}

TEST_CASE("stress closed forms") {
  const auto e = gas(2.0, 0.0);
  const constitutive::Mat2 zero{0, 0, 0, 0};
  const auto s0 = constitutive::stress(e, 0.0, zero, 1.0);
  for (double v : s0) CHECK(v == 0.0);
  // grad u = I: deviatoric part cancels, eta div u I = 2 I
  const constitutive::Mat2 id{1, 0, 0, 1};
  const auto s1 = constitutive::stress(e, 0.0, id, 1.0);
  CHECK(s1[0] == doctest::Approx(2.0));
  CHECK(s1[1] == doctest::Approx(0.0));
  CHECK(s1[3] == doctest::Approx(2.0));
  // pure shear
  const constitutive::Mat2 sh{0, 1, 0, 0};
  const auto s2 = constitutive::stress(e, 0.0, sh, 1.0);
  CHECK(s2[0] == doctest::Approx(0.0));
  CHECK(s2[1] == doctest::Approx(1.0));
  CHECK(s2[2] == doctest::Approx(1.0));
  CHECK(s2[3] == doctest::Approx(0.0));
}

TEST_CASE("temperature recovery inverts the thermal energy map") {
  CHECK(constitutive::recover_temperature(gas(2.0, 0.0), 1.0, 2.0, 1.0) ==
        doctest::Approx(2.0));
  CHECK(constitutive::recover_temperature(gas(2.0, 3.0), 1.0, 4.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(constitutive::recover_temperature(gas(2.0, 3.0), 2.5, 0.0, 1.0) == 0.0);
  const auto res = validate::temperature_roundtrip(gas(2.0, 1.0), 99, 5000);
  CHECK(res.pass);
}

TEST_CASE("helmholtz function and renormalization") {
  const auto e = gas(2.0, 0.0);
  CHECK(constitutive::helmholtz(e, 1.0, 1.0, 1.0) == doctest::Approx(2.0));
  // renormalized combination vanishes at (rho_ref, 1)
  CHECK(constitutive::helmholtz_renormalized(e, e.rho_ref, 1.0, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-13));
  // coercivity on a grid scan
  const auto er = gas(2.0, 1.0);
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double rho = 0.25 * i;
      const double th = 0.25 * j;
      CHECK(constitutive::helmholtz_renormalized(er, rho, th, 1.0) >= -1e-12);
    }
  }
  // the renormalizing slope matches a finite-difference derivative of H
  const double fd = 1e-6;
  const double dH = (constitutive::helmholtz(er, er.rho_ref + fd, 1.0, 1.0) -
                     constitutive::helmholtz(er, er.rho_ref - fd, 1.0, 1.0)) /
                    (2.0 * fd);
  const double probe = 0.7;
  const double expected = constitutive::helmholtz(er, probe, 1.0, 1.0) -
                          dH * (probe - er.rho_ref) -
                          constitutive::helmholtz(er, er.rho_ref, 1.0, 1.0);
  CHECK(constitutive::helmholtz_renormalized(er, probe, 1.0, 1.0) ==
        doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("gibbs relation validates at the configured tolerance") {
  const auto res = validate::gibbs_relation(gas(2.0, 1.0));
  CHECK(res.pass);
}

TEST_CASE("monotonicity in temperature") {
  const auto e = gas(2.0, 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rho_d(0.1, 5.0);
  std::uniform_real_distribution<double> th_d(0.1, 5.0);
  for (int t = 0; t < 2000; ++t) {
    const double rho = rho_d(rng);
    const double th = th_d(rng);
    const double dth = 1e-4 * (1.0 + th);
    CHECK(constitutive::pressure(e, rho, th + dth, 1.0) > constitutive::pressure(e, rho, th, 1.0));
    CHECK(constitutive::internal_energy(e, rho, th + dth, 1.0) >
          constitutive::internal_energy(e, rho, th, 1.0));
    CHECK(constitutive::entropy(e, rho, th + dth, 1.0) > constitutive::entropy(e, rho, th, 1.0));
  }
}

TEST_CASE("stress positivity on random gradients") {
  const auto res = validate::stress_positivity(gas(2.0, 1.0), 5, 20000);
  CHECK(res.pass);
}

TEST_CASE("eos parameter invariants") {
  CHECK_THROWS_AS(gas(1.5, 1.0).validate(), ConfigError);         // gamma <= 5/3
  CHECK_THROWS_AS(gas(2.0, 1.0, 1.0).validate(), ConfigError);    // delta >= 1
  CHECK_THROWS_AS(gas(2.0, 1.0, 0.01, 3.0).validate(), ConfigError);  // beta < 4
  auto bad_xi = gas(2.0, 1.0);
  bad_xi.xi = 0.0;
  CHECK_THROWS_AS(bad_xi.validate(), ConfigError);
  CHECK_NOTHROW(gas(2.0, 1.0).validate());
}

TEST_CASE("sound speed hand value") {
  auto e = gas(2.0, 0.0, 1e-300);
  CHECK(constitutive::sound_speed(e, 1.0, 0.0, 0.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
