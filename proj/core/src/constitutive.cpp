#include "mhdshell/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhdshell/errors.hpp"

namespace mhdshell::constitutive {

void EosParams::validate() const {
  if (!(gamma > 5.0 / 3.0))
    throw ConfigError("eos.gamma must exceed 5/3 (got " + std::to_string(gamma) + ")");
  if (!(beta >= std::max(4.0, gamma)))
    throw ConfigError("eos.beta must satisfy beta >= max{4, gamma}");
  if (a < 0.0) throw ConfigError("eos.a must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("eos.delta must lie in (0,1)");
  if (!(xi > 0.0 && xi <= 1.0)) throw ConfigError("eos.xi must lie in (0,1]");
  if (!(mu_bar > 0.0)) throw ConfigError("eos.mu_bar must be positive");
  if (eta_bar < 0.0) throw ConfigError("eos.eta_bar must be nonnegative");
  if (!(kappa_bar > 0.0)) throw ConfigError("eos.kappa_bar must be positive");
  if (!(rho_ref > 0.0)) throw ConfigError("eos.rho_ref must be positive");
  if (!(theta_ref > 0.0)) throw ConfigError("eos.theta_ref must be positive");
}

double pressure(const EosParams& eos, double rho, double theta, double f_lambda) {
  const double th2 = theta * theta;
  return std::pow(rho, eos.gamma) + rho * theta + (eos.a * f_lambda / 3.0) * th2 * th2;
}

double total_pressure(const EosParams& eos, double rho, double b, double theta,
                      double f_lambda) {
  return pressure(eos, rho, theta, f_lambda) + 0.5 * b * b +
         eos.delta * std::pow(rho + b, eos.beta);
}

double internal_energy(const EosParams& eos, double rho, double theta, double f_lambda) {
  if (rho <= 0.0) throw DomainError("internal_energy: vacuum (rho <= 0)");
  const double th2 = theta * theta;
  return std::pow(rho, eos.gamma - 1.0) / (eos.gamma - 1.0) + theta +
         (eos.a * f_lambda / rho) * th2 * th2;
}

double entropy(const EosParams& eos, double rho, double theta, double f_lambda) {
  if (rho <= 0.0 || theta <= 0.0) throw DomainError("entropy: nonpositive rho or theta");
  return std::log(theta / rho) + (4.0 * eos.a * f_lambda / 3.0) * theta * theta * theta / rho;
}

Transport transport_coeffs(const EosParams& eos, double theta, double g, double h) {
  const double lin = 1.0 + theta;
  return {eos.mu_bar * lin * g, eos.eta_bar * lin * g,
          eos.kappa_bar * (1.0 + theta * theta * theta) * h};
}

Mat2 stress(const EosParams& eos, double theta, const Mat2& grad_u, double g) {
  const Transport tc = transport_coeffs(eos, theta, g, 1.0);
  const double div = grad_u[0] + grad_u[3];
  // deviatoric symmetric part: grad_u + grad_u^T - div I
  const double d00 = 2.0 * grad_u[0] - div;
  const double d01 = grad_u[1] + grad_u[2];
  const double d11 = 2.0 * grad_u[3] - div;
  return {tc.mu * d00 + tc.eta * div, tc.mu * d01, tc.mu * d01, tc.mu * d11 + tc.eta * div};
}

double stress_contraction(const EosParams& eos, double theta, const Mat2& grad_u, double g) {
  const Transport tc = transport_coeffs(eos, theta, g, 1.0);
  const double div = grad_u[0] + grad_u[3];
  const double d00 = 2.0 * grad_u[0] - div;
  const double d01 = grad_u[1] + grad_u[2];
  const double d11 = 2.0 * grad_u[3] - div;
  const double dd = d00 * d00 + 2.0 * d01 * d01 + d11 * d11;
  return 0.5 * tc.mu * dd + tc.eta * div * div;
}

double thermal_energy(const EosParams& eos, double rho, double theta, double f_lambda) {
  const double th2 = theta * theta;
  return rho * theta + eos.a * f_lambda * th2 * th2;
}

double recover_temperature(const EosParams& eos, double rho, double q_th, double f_lambda) {
  if (q_th <= 0.0) return 0.0;
  const double af = eos.a * f_lambda;
  if (af <= 0.0) return rho > 0.0 ? q_th / rho : 0.0;
  // Both summands of rho theta + af theta^4 are nonnegative, so each partial
  // inversion bounds the root from above.
  double hi = std::pow(q_th / af, 0.25);
  if (rho > 0.0) hi = std::min(hi, q_th / rho);
  hi *= 1.0 + 1e-12;
  double lo = 0.0;
  double theta = hi;  // Newton from above on a convex increasing map
  for (int it = 0; it < 200; ++it) {
    const double th2 = theta * theta;
    const double val = rho * theta + af * th2 * th2 - q_th;
    if (val > 0.0)
      hi = theta;
    else
      lo = theta;
    const double deriv = rho + 4.0 * af * th2 * theta;
    double next = (deriv > 0.0) ? theta - val / deriv : 0.5 * (lo + hi);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);  // bisection safeguard
    const double tol = 1e-12 * std::max(1.0, theta);
    if (std::abs(next - theta) <= tol) return next;
    theta = next;
  }
  return theta;
}

double helmholtz(const EosParams& eos, double rho, double theta, double f_lambda) {
  return rho * (internal_energy(eos, rho, theta, f_lambda) -
                eos.theta_ref * entropy(eos, rho, theta, f_lambda));
}

double helmholtz_renormalized(const EosParams& eos, double rho, double theta,
                              double f_lambda) {
  const double rr = eos.rho_ref;
  // dH/drho at (rho_ref, 1): gamma rho^{gamma-1}/(gamma-1) + theta
  //   - theta_ref (ln(theta/rho) - 1), evaluated there.
  const double dH = eos.gamma * std::pow(rr, eos.gamma - 1.0) / (eos.gamma - 1.0) + 1.0 -
                    eos.theta_ref * (std::log(1.0 / rr) - 1.0);
  return helmholtz(eos, rho, theta, f_lambda) - dH * (rho - rr) -
         helmholtz(eos, rr, 1.0, f_lambda);
}

double sound_speed(const EosParams& eos, double rho, double b, double theta,
                   double f_lambda) {
  (void)f_lambda;
  const double dp = eos.gamma * std::pow(std::max(rho, 0.0), eos.gamma - 1.0) + theta +
                    eos.delta * eos.beta * std::pow(std::max(rho + b, 0.0), eos.beta - 1.0);
  return std::sqrt(std::max(dp, 0.0));
}

}  // namespace mhdshell::constitutive
