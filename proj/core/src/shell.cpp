#include "mhdshell/shell.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "mhdshell/errors.hpp"
#include "mhdshell/torus_field.hpp"

namespace mhdshell::shell {

void ShellParams::validate() const {
  if (n_nodes < 4 || (n_nodes % 2) != 0)
    throw ConfigError("shell.n_nodes must be an even number >= 4");
  if (alpha1 < 0.0 || alpha2 < 0.0)
    throw ConfigError("shell.alpha1 and shell.alpha2 must be nonnegative");
  if (substeps < 1) throw ConfigError("shell.substeps must be positive");
}

ShellState ShellState::zeros(std::size_t n) {
  ShellState s;
  s.w.assign(n, 0.0);
  s.v.assign(n, 0.0);
  s.theta.assign(n, 0.0);
  return s;
}

ShellForcing ShellForcing::zeros(std::size_t n) {
  ShellForcing f;
  f.f_n.assign(n, 0.0);
  f.q_s.assign(n, 0.0);
  f.v_target.assign(n, 0.0);
  return f;
}

double laplacian_symbol(int k) {
  const double f = 2.0 * std::numbers::pi * k;
  return -f * f;
}

ShellState shell_step(const ShellState& state, const ShellForcing& forcing, double tau,
                      double dt_window, double delta, double alpha1, double alpha2,
                      double bound_lo, double bound_hi) {
  const std::size_t n = state.size();
  using Spec = std::vector<std::complex<double>>;
  Spec wh, vh, th, fh, qh, gh;
  fft::forward_r2c(state.w, wh);
  fft::forward_r2c(state.v, vh);
  fft::forward_r2c(state.theta, th);
  fft::forward_r2c(forcing.f_n, fh);
  fft::forward_r2c(forcing.q_s, qh);
  fft::forward_r2c(forcing.v_target, gh);

  const double pen = (delta > 0.0) ? delta / dt_window : 0.0;
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k <= half; ++k) {
    const double s = laplacian_symbol(static_cast<int>(k));
    const double a11 = (1.0 - delta - alpha2 * s) / tau + s * s * tau - alpha1 * s + pen;
    const double a22 = 1.0 / tau - s;
    const double det = a11 * a22 + s * s;  // a12 = s, a21 = -s
    const std::complex<double> b1 =
        fh[k] + ((1.0 - delta) - alpha2 * s) * vh[k] / tau - s * s * wh[k] + pen * gh[k];
    const std::complex<double> b2 = qh[k] + th[k] / tau;
    const std::complex<double> vp = (b1 * a22 - s * b2) / det;
    const std::complex<double> tp = (a11 * b2 + s * b1) / det;
    vh[k] = vp;
    th[k] = tp;
    wh[k] += tau * vp;
  }

  ShellState next;
  next.t = state.t + tau;
  fft::inverse_c2r(wh, next.w, n);
  fft::inverse_c2r(vh, next.v, n);
  fft::inverse_c2r(th, next.theta, n);
  for (double wj : next.w) {
    if (!(wj > bound_lo && wj < bound_hi))
      throw DegeneracyError("shell displacement left the admissible range at t = " +
                            std::to_string(next.t));
  }
  return next;
}

namespace {

// Parseval weights for an unnormalized r2c spectrum of n real samples.
double spectral_norm2(const std::vector<std::complex<double>>& spec, std::size_t n,
                      double symbol_power_of_k(std::size_t)) {
  const std::size_t half = n / 2;
  double sum = symbol_power_of_k(0) * std::norm(spec[0]);
  for (std::size_t k = 1; k < half; ++k) sum += 2.0 * symbol_power_of_k(k) * std::norm(spec[k]);
  sum += symbol_power_of_k(half) * std::norm(spec[half]);
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

double one(std::size_t) { return 1.0; }
double k2(std::size_t k) {
  const double f = 2.0 * std::numbers::pi * static_cast<double>(k);
  return f * f;
}
double k4(std::size_t k) {
  const double f = k2(k);
  return f * f;
}

}  // namespace

double norm2_l2(const std::vector<double>& samples) {
  std::vector<std::complex<double>> spec;
  fft::forward_r2c(samples, spec);
  return spectral_norm2(spec, samples.size(), one);
}

double norm2_grad(const std::vector<double>& samples) {
  std::vector<std::complex<double>> spec;
  fft::forward_r2c(samples, spec);
  return spectral_norm2(spec, samples.size(), k2);
}

EnergyBreakdown shell_energy(const ShellState& state, double alpha2) {
  EnergyBreakdown e;
  const std::size_t n = state.size();
  std::vector<std::complex<double>> spec;
  fft::forward_r2c(state.v, spec);
  e.kinetic = 0.5 * spectral_norm2(spec, n, one);
  e.rotational = 0.5 * alpha2 * spectral_norm2(spec, n, k2);
  fft::forward_r2c(state.w, spec);
  e.bending = 0.5 * spectral_norm2(spec, n, k4);
  fft::forward_r2c(state.theta, spec);
  e.thermal = spectral_norm2(spec, n, one);
  return e;
}

}  // namespace mhdshell::shell
