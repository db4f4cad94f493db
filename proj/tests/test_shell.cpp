#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "mhdshell/errors.hpp"
#include "mhdshell/shell.hpp"

using namespace mhdshell;
using shell::ShellForcing;
using shell::ShellState;

namespace {

constexpr double kPi = std::numbers::pi;

ShellState single_mode(std::size_t n, int k, double w_amp, double v_amp, double th_amp) {
  ShellState s = ShellState::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = static_cast<double>(j) / n;
    s.w[j] = w_amp * std::sin(2.0 * kPi * k * y);
    s.v[j] = v_amp * std::sin(2.0 * kPi * k * y);
    s.theta[j] = th_amp * std::sin(2.0 * kPi * k * y);
  }
  return s;
}

// Dense per-mode reference for free vibration (no forcing, no penalty); the
// mode with symbol s = -(2 pi k)^2 obeys
//   w' = v,  (1 - a2 s) v' = -s^2 w - s th + a1 s v,  th' = s th + s v.
struct ModeOde {
  double s, a1, a2;
  std::array<double, 3> rhs(const std::array<double, 3>& x) const {
    const double denom = 1.0 - a2 * s;
    return {x[1], (-s * s * x[0] - s * x[2] + a1 * s * x[1]) / denom, s * x[2] + s * x[1]};
  }
  std::array<double, 3> rk4(std::array<double, 3> x, double h) const {
    auto add = [](std::array<double, 3> a, const std::array<double, 3>& b, double c) {
      for (int i = 0; i < 3; ++i) a[i] += c * b[i];
      return a;
    };
    const auto k1 = rhs(x);
    const auto k2 = rhs(add(x, k1, h / 2));
    const auto k3 = rhs(add(x, k2, h / 2));
    const auto k4 = rhs(add(x, k3, h));
    for (int i = 0; i < 3; ++i) x[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return x;
  }
};

}  // namespace

TEST_CASE("laplacian symbol") {
  CHECK(shell::laplacian_symbol(0) == 0.0);
  CHECK(shell::laplacian_symbol(1) == doctest::Approx(-4.0 * kPi * kPi).epsilon(1e-14));
  CHECK(shell::laplacian_symbol(3) == doctest::Approx(-36.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("spectral differentiation round trip on one mode") {
  const std::size_t n = 128;
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = std::cos(2.0 * kPi * j / n);
  CHECK(shell::norm2_l2(v) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(shell::norm2_grad(v) == doctest::Approx(0.5 * 4.0 * kPi * kPi).epsilon(1e-12));
}

TEST_CASE("zero state with zero forcing stays zero") {
  const auto s0 = ShellState::zeros(64);
  const auto f = ShellForcing::zeros(64);
  const auto s = shell::shell_step(s0, f, 1e-3, 1e-2, 0.1, 1.0, 1.0);
  for (std::size_t j = 0; j < 64; ++j) {
    CHECK(s.w[j] == 0.0);
    CHECK(s.v[j] == 0.0);
    CHECK(s.theta[j] == 0.0);
  }
  CHECK(s.t == doctest::Approx(1e-3));
}

TEST_CASE("dominant penalty pins the velocity to the target") {
  // delta/dt = 1e6: after one step v matches the target to relative 1e-3.
  const std::size_t n = 64;
  const auto s0 = ShellState::zeros(n);
  auto f = ShellForcing::zeros(n);
  const double c = 0.7;
  for (auto& t : f.v_target) t = c;
  const double delta = 0.5, dt = 5e-7, tau = 1e-3;
  const auto s = shell::shell_step(s0, f, tau, dt, delta, 1.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) CHECK(s.v[j] == doctest::Approx(c).epsilon(1e-3));
}

TEST_CASE("single-mode backward Euler matches a tiny-step dense reference") {
  const std::size_t n = 16;
  const int k = 1;
  const double a1 = 1.0, a2 = 1.0;
  const double t_final = 2e-3;
  const double tau = 2e-7;
  auto s = single_mode(n, k, 1.0, 0.0, 0.5);
  const auto f = ShellForcing::zeros(n);
  const long steps = std::lround(t_final / tau);
  for (long i = 0; i < steps; ++i) s = shell::shell_step(s, f, tau, 1.0, 0.0, a1, a2);

  const ModeOde ode{shell::laplacian_symbol(k), a1, a2};
  std::array<double, 3> x{1.0, 0.0, 0.5};
  const double href = tau / 100.0;
  const long rsteps = std::lround(t_final / href);
  for (long i = 0; i < rsteps; ++i) x = ode.rk4(x, href);

  const std::size_t crest = n / (4 * k);
  CHECK(s.w[crest] == doctest::Approx(x[0]).epsilon(1e-6));
  CHECK(s.v[crest] == doctest::Approx(x[1]).epsilon(1e-6));
  CHECK(s.theta[crest] == doctest::Approx(x[2]).epsilon(1e-6));
}

TEST_CASE("free vibration discrete energy is non-increasing") {
  const std::size_t n = 64;
  const double a1 = 0.5, a2 = 1.0;
  auto s = single_mode(n, 2, 0.8, 0.3, 0.2);
  const auto f = ShellForcing::zeros(n);
  double prev = shell::shell_energy(s, a2).total();
  for (int i = 0; i < 200; ++i) {
    s = shell::shell_step(s, f, 1e-4, 1.0, 0.0, a1, a2);
    const double e = shell::shell_energy(s, a2).total();
    CHECK(e <= prev * (1.0 + 1e-12));
    prev = e;
  }
}

TEST_CASE("shell energy closed forms") {
  const std::size_t n = 128;
  auto s = ShellState::zeros(n);
  SUBCASE("zero state") {
    const auto e = shell::shell_energy(s, 1.0);
    CHECK(e.kinetic == 0.0);
    CHECK(e.bending == 0.0);
    CHECK(e.rotational == 0.0);
    CHECK(e.thermal == 0.0);
  }
  SUBCASE("bending of sin(2 pi y)") {
    for (std::size_t j = 0; j < n; ++j) s.w[j] = std::sin(2.0 * kPi * j / n);
    const auto e = shell::shell_energy(s, 1.0);
    CHECK(e.bending == doctest::Approx(4.0 * std::pow(kPi, 4)).epsilon(1e-12));
  }
  SUBCASE("constant velocity has no rotational energy") {
    for (std::size_t j = 0; j < n; ++j) s.v[j] = 1.0;
    const auto e = shell::shell_energy(s, 1.0);
    CHECK(e.kinetic == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(e.rotational == doctest::Approx(0.0));
    CHECK(e.bending == 0.0);
  }
}

TEST_CASE("penalty work identity per step") {
  // The v+-weighted penalty equals the half-square telescoping combination.
  const std::size_t n = 64;
  auto s0 = single_mode(n, 1, 0.1, 0.2, 0.05);
  auto f = ShellForcing::zeros(n);
  for (std::size_t j = 0; j < n; ++j)
    f.v_target[j] = 0.3 * std::cos(2.0 * kPi * j / n) + 0.1;
  const double tau = 1e-3, dt = 4e-3, delta = 0.25;
  const auto s1 = shell::shell_step(s0, f, tau, dt, delta, 1.0, 1.0);
  double work = 0.0, target_sq = 0.0, vplus_sq = 0.0, diff_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    work += (s1.v[j] - f.v_target[j]) * s1.v[j];
    target_sq += f.v_target[j] * f.v_target[j];
    vplus_sq += s1.v[j] * s1.v[j];
    diff_sq += (s1.v[j] - f.v_target[j]) * (s1.v[j] - f.v_target[j]);
  }
  CHECK(work == doctest::Approx(0.5 * (diff_sq + vplus_sq - target_sq)).epsilon(1e-12));
}

TEST_CASE("mode-diagonal solve leaves other modes untouched") {
  const std::size_t n = 64;
  auto s = single_mode(n, 3, 0.5, 0.1, 0.0);
  const auto f = ShellForcing::zeros(n);
  const double mean_before =
      std::accumulate(s.w.begin(), s.w.end(), 0.0) / static_cast<double>(n);
  for (int i = 0; i < 50; ++i) s = shell::shell_step(s, f, 1e-4, 1.0, 0.0, 1.0, 1.0);
  const double mean_after =
      std::accumulate(s.w.begin(), s.w.end(), 0.0) / static_cast<double>(n);
  CHECK(mean_after == doctest::Approx(mean_before).epsilon(1e-12));
  double overlap_mode1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) overlap_mode1 += s.w[j] * std::sin(2.0 * kPi * j / n);
  CHECK(std::abs(overlap_mode1) < 1e-10);
}

TEST_CASE("theta stays positive under nonnegative entropy flux at tested steps") {
  const std::size_t n = 64;
  auto s = ShellState::zeros(n);
  for (auto& t : s.theta) t = 1.0;
  for (std::size_t j = 0; j < n; ++j) s.v[j] = 0.2 * std::sin(2.0 * kPi * j / n);
  auto f = ShellForcing::zeros(n);
  for (auto& q : f.q_s) q = 0.1;
  for (int i = 0; i < 100; ++i) {
    s = shell::shell_step(s, f, 1e-3, 1.0, 0.0, 1.0, 1.0);
    for (double th : s.theta) CHECK(th > 0.0);
  }
}

TEST_CASE("displacement bound violation raises a degeneracy error") {
  const std::size_t n = 32;
  auto s = ShellState::zeros(n);
  auto f = ShellForcing::zeros(n);
  for (auto& fn : f.f_n) fn = 1e4;
  auto push = [&] {
    for (int i = 0; i < 1000; ++i)
      s = shell::shell_step(s, f, 1e-3, 1.0, 0.0, 1.0, 1.0, -0.45, 0.45);
  };
  CHECK_THROWS_AS(push(), DegeneracyError);
}
