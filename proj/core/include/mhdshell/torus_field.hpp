#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mhdshell {

namespace fft {

// Unnormalized forward real-to-complex transform; out receives n/2+1 bins.
void forward_r2c(std::span<const double> in, std::vector<std::complex<double>>& out);

// Inverse complex-to-real transform including the 1/n normalization.
void inverse_c2r(std::span<const std::complex<double>> in, std::vector<double>& out, std::size_t n);

}  // namespace fft

// Real periodic function on the unit torus Gamma = R/Z, held as uniform
// samples at y_j = j/N with trigonometric interpolation in between.
class TorusField {
public:
  TorusField() = default;
  explicit TorusField(std::vector<double> samples);
  static TorusField zeros(std::size_t n);

  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double sample(std::size_t j) const { return samples_[j]; }

  // Value of the interpolating trigonometric polynomial at y (any real).
  double operator()(double y) const;

  double min() const;
  double max() const;

private:
  std::vector<double> samples_;
  // One-sided real spectrum: value(y) = sum_k a_k cos(2 pi k y) + b_k sin(2 pi k y).
  std::vector<double> cos_coef_;
  std::vector<double> sin_coef_;
};

}  // namespace mhdshell
