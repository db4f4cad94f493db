#include "mhdshell/torus_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>
#include <numbers>

namespace mhdshell {

namespace fft {

// FFTW plan creation/destruction is not thread-safe; execution is.
static std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void forward_r2c(std::span<const double> in, std::vector<std::complex<double>>& out) {
  const std::size_t n = in.size();
  out.assign(n / 2 + 1, {});
  std::vector<double> buf(in.begin(), in.end());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

void inverse_c2r(std::span<const std::complex<double>> in, std::vector<double>& out,
                 std::size_t n) {
  assert(in.size() == n / 2 + 1);
  std::vector<std::complex<double>> buf(in.begin(), in.end());
  out.assign(n, 0.0);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(buf.data()), out.data(),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
}

}  // namespace fft

TorusField::TorusField(std::vector<double> samples) : samples_(std::move(samples)) {
  const std::size_t n = samples_.size();
  assert(n >= 2 && n % 2 == 0);
  std::vector<std::complex<double>> spec;
  fft::forward_r2c(samples_, spec);
  const std::size_t half = n / 2;
  cos_coef_.assign(half + 1, 0.0);
  sin_coef_.assign(half + 1, 0.0);
  cos_coef_[0] = spec[0].real() / n;
  for (std::size_t k = 1; k < half; ++k) {
    cos_coef_[k] = 2.0 * spec[k].real() / n;
    sin_coef_[k] = -2.0 * spec[k].imag() / n;
  }
  cos_coef_[half] = spec[half].real() / n;
}

TorusField TorusField::zeros(std::size_t n) {
  return TorusField(std::vector<double>(n, 0.0));
}

double TorusField::operator()(double y) const {
  const double two_pi_y = 2.0 * std::numbers::pi * y;
  const double c1 = std::cos(two_pi_y);
  const double s1 = std::sin(two_pi_y);
  double ck = 1.0;  // cos(2 pi k y), k = 0
  double sk = 0.0;
  double value = cos_coef_[0];
  const std::size_t half = samples_.size() / 2;
  for (std::size_t k = 1; k <= half; ++k) {
    const double cn = ck * c1 - sk * s1;  // rotate by one mode
    const double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    value += cos_coef_[k] * ck + sin_coef_[k] * sk;
  }
  return value;
}

double TorusField::min() const { return *std::min_element(samples_.begin(), samples_.end()); }

double TorusField::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

}  // namespace mhdshell
