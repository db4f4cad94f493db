#pragma once

#include <array>

namespace mhdshell::constitutive {

// Row-major 2x2 tensor.
using Mat2 = std::array<double, 4>;

struct EosParams {
  double gamma = 2.0;     // adiabatic index, > 5/3
  double a = 1.0;         // radiation constant
  double beta = 4.0;      // artificial-pressure exponent, >= max{4, gamma}
  double delta = 0.01;    // artificial-pressure weight / penalty weight, in (0,1)
  double mu_bar = 1.0;    // shear viscosity scale
  double eta_bar = 1.0;   // bulk viscosity scale
  double kappa_bar = 1.0; // conductivity scale
  double xi = 0.1;        // master small parameter, in (0,1]
  double rho_ref = 1.0;   // reference density for the Helmholtz renormalization
  double theta_ref = 1.0; // reference temperature

  void validate() const;  // throws ConfigError
};

// p = rho^gamma + rho theta + (a f_lambda / 3) theta^4
double pressure(const EosParams& eos, double rho, double theta, double f_lambda);

// pressure + b^2/2 + delta (rho + b)^beta
double total_pressure(const EosParams& eos, double rho, double b, double theta,
                      double f_lambda);

// e = rho^{gamma-1}/(gamma-1) + theta + (a f_lambda / rho) theta^4; throws on rho <= 0
double internal_energy(const EosParams& eos, double rho, double theta, double f_lambda);

// s = ln(theta/rho) + (4 a f_lambda / 3) theta^3 / rho; throws on nonpositive inputs
double entropy(const EosParams& eos, double rho, double theta, double f_lambda);

struct Transport {
  double mu;
  double eta;
  double kappa;
};

// mu = mu_bar (1+theta) g, eta = eta_bar (1+theta) g, kappa = kappa_bar (1+theta^3) h
Transport transport_coeffs(const EosParams& eos, double theta, double g, double h);

// S = mu (grad_u + grad_u^T - div u I) + eta div u I
Mat2 stress(const EosParams& eos, double theta, const Mat2& grad_u, double g);

// S : grad_u as the manifestly nonnegative sum (mu/2)|D|^2 + eta (div u)^2.
double stress_contraction(const EosParams& eos, double theta, const Mat2& grad_u, double g);

// Thermal energy density rho theta + a f_lambda theta^4.
double thermal_energy(const EosParams& eos, double rho, double theta, double f_lambda);

// Unique theta >= 0 with thermal_energy = q_th, by safeguarded Newton.
double recover_temperature(const EosParams& eos, double rho, double q_th, double f_lambda);

// H = rho (e - theta_ref s).
double helmholtz(const EosParams& eos, double rho, double theta, double f_lambda);

// H(rho,theta) - dH/drho(rho_ref,1) (rho - rho_ref) - H(rho_ref,1).
double helmholtz_renormalized(const EosParams& eos, double rho, double theta,
                              double f_lambda);

// sqrt(d total_pressure / d rho), for the advective CFL bound.
double sound_speed(const EosParams& eos, double rho, double b, double theta,
                   double f_lambda);

}  // namespace mhdshell::constitutive
