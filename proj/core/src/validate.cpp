#include "mhdshell/validate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mhdshell/fluid.hpp"
#include "mhdshell/torus_field.hpp"

namespace mhdshell::validate {

using constitutive::EosParams;
using geometry::GeometryConfig;

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Random admissible displacement: a few low modes with total amplitude well
// inside the ray-injectivity limit of the cutoff ramps (|w| < width / 1.5).
TorusField random_displacement(const GeometryConfig& cfg, std::mt19937_64& rng,
                               std::size_t nodes = 64) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double width = std::min(cfg.m1 - cfg.m2, cfg.M2 - cfg.M1);
  const double amp = 0.3 * width;
  const double a0 = 0.5 * amp * unit(rng);
  const double a1 = 0.25 * amp * unit(rng);
  const double b1 = 0.125 * amp * unit(rng);
  const double a3 = 0.125 * amp * unit(rng);
  std::vector<double> samples(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const double y = 2.0 * std::numbers::pi * static_cast<double>(j) / nodes;
    samples[j] = a0 + a1 * std::cos(y) + b1 * std::sin(y) + a3 * std::sin(3.0 * y);
  }
  return TorusField(samples);
}

}  // namespace

CheckResult gibbs_relation(const EosParams& eos) {
  CheckResult r{"gibbs-relation", true, ""};
  const double fd = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double rho = 0.1 + (5.0 - 0.1) * i / 49.0;
      const double th = 0.1 + (5.0 - 0.1) * j / 49.0;
      const double ds_dth = (constitutive::entropy(eos, rho, th + fd, 1.0) -
                             constitutive::entropy(eos, rho, th - fd, 1.0)) /
                            (2.0 * fd);
      const double de_dth = (constitutive::internal_energy(eos, rho, th + fd, 1.0) -
                             constitutive::internal_energy(eos, rho, th - fd, 1.0)) /
                            (2.0 * fd);
      const double r1 = std::abs(th * ds_dth - de_dth) / std::abs(de_dth);
      const double ds_drho = (constitutive::entropy(eos, rho + fd, th, 1.0) -
                              constitutive::entropy(eos, rho - fd, th, 1.0)) /
                             (2.0 * fd);
      const double de_drho = (constitutive::internal_energy(eos, rho + fd, th, 1.0) -
                              constitutive::internal_energy(eos, rho - fd, th, 1.0)) /
                             (2.0 * fd);
      const double prho2 = constitutive::pressure(eos, rho, th, 1.0) / (rho * rho);
      const double r2 =
          std::abs(th * ds_drho - (de_drho - prho2)) / std::max(1.0, std::abs(prho2));
      worst = std::max(worst, std::max(r1, r2));
      if (worst > 1e-6) {
        r.pass = false;
        r.detail = "relative error " + num(worst) + " at rho=" + num(rho) + " theta=" + num(th);
        return r;
      }
    }
  }
  r.detail = "max relative error " + num(worst);
  return r;
}

CheckResult stress_positivity(const EosParams& eos, std::uint64_t seed, int trials) {
  CheckResult r{"stress-positivity", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> g(-10.0, 10.0);
  std::uniform_real_distribution<double> th(0.0, 10.0);
  double min_val = 0.0;
  double worst_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    const constitutive::Mat2 gu{g(rng), g(rng), g(rng), g(rng)};
    const double theta = th(rng);
    const double form = constitutive::stress_contraction(eos, theta, gu, 1.0);
    if (form < 0.0) {
      r.pass = false;
      r.detail = "sum-of-squares form went negative: " + num(form);
      return r;
    }
    const constitutive::Mat2 st = constitutive::stress(eos, theta, gu, 1.0);
    const double direct = st[0] * gu[0] + st[1] * gu[1] + st[2] * gu[2] + st[3] * gu[3];
    const double gap = std::abs(direct - form) / std::max(1.0, form);
    worst_gap = std::max(worst_gap, gap);
    min_val = std::min(min_val, form);
    if (gap > 1e-10) {
      r.pass = false;
      r.detail = "direct contraction disagrees with the quadratic form by " + num(gap);
      return r;
    }
  }
  r.detail = "min S:grad u = " + num(min_val) + ", max form gap " + num(worst_gap);
  return r;
}

CheckResult geometry_roundtrip(const GeometryConfig& cfg, std::uint64_t seed, int samples) {
  CheckResult r{"geometry-roundtrip", true, ""};
  // Analytic circle oracles.
  const double R = cfg.radius;
  if (std::abs(geometry::signed_distance(cfg, {2.0 * R, 0.0}) - R) > 1e-14 * R ||
      std::abs(geometry::signed_distance(cfg, {0.0, 0.0}) + R) > 1e-14 * R ||
      std::abs(geometry::signed_distance(cfg, {0.6 * R, 0.8 * R})) > 1e-14 * R) {
    r.pass = false;
    r.detail = "signed distance oracle failed";
    return r;
  }
  const Vec2 pr = geometry::project(cfg, {0.3 * R, 0.4 * R});
  if (std::abs(pr.x - 0.6 * R) > 1e-14 * R || std::abs(pr.y - 0.8 * R) > 1e-14 * R) {
    r.pass = false;
    r.detail = "projection oracle failed";
    return r;
  }
  // sigma_w at rest.
  const TorusField zero = TorusField::zeros(64);
  double worst_sigma = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double s = geometry::jacobian_sigma(cfg, zero, k / 8.0);
    worst_sigma = std::max(worst_sigma, std::abs(s - 1.0));
  }
  if (worst_sigma > 1e-8) {
    r.pass = false;
    r.detail = "sigma_w(w=0) deviates from 1 by " + num(worst_sigma);
    return r;
  }
  // Round trip on random admissible samples.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-cfg.box_halfwidth, cfg.box_halfwidth);
  double worst = 0.0;
  TorusField w = random_displacement(cfg, rng);
  for (int t = 0; t < samples; ++t) {
    if (t % 100 == 0) w = random_displacement(cfg, rng);
    const Vec2 x{box(rng), box(rng)};
    const Vec2 z = geometry::flow_map(cfg, w, x);
    const Vec2 back = geometry::inverse_flow_map(cfg, w, z);
    worst = std::max(worst, (back - x).norm());
  }
  if (worst > 1e-10 * R) {
    r.pass = false;
    r.detail = "round-trip error " + num(worst);
    return r;
  }
  r.detail = "max round-trip error " + num(worst) + ", sigma deviation " + num(worst_sigma);
  return r;
}

CheckResult transport_conservation(std::uint64_t seed, int trials) {
  CheckResult r{"transport-conservation", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const geometry::Grid grid{32, 1.0};
  for (int t = 0; t < trials; ++t) {
    std::vector<double> f(grid.cells());
    std::vector<double> ux(grid.cells(), 0.0), uy(grid.cells(), 0.0);
    for (std::size_t c = 0; c < f.size(); ++c) f[c] = unit(rng);
    for (int j = 1; j < grid.n - 1; ++j) {
      for (int i = 1; i < grid.n - 1; ++i) {
        ux[grid.idx(i, j)] = sym(rng);
        uy[grid.idx(i, j)] = sym(rng);
      }
    }
    const double tau = 0.4 * grid.h() / 2.0;  // |ux|+|uy| <= 2
    const auto out = fluid::transport_step(grid, f, ux, uy, tau);
    double before = 0.0, after = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) {
      before += f[c];
      after += out[c];
      if (out[c] < 0.0) {
        r.pass = false;
        r.detail = "negative cell after transport: " + num(out[c]);
        return r;
      }
    }
    const double drift = std::abs(after - before) / before;
    if (drift > 1e-14) {
      r.pass = false;
      r.detail = "conservation drift " + num(drift);
      return r;
    }
  }
  r.detail = num(trials) + " random transports conservative and nonnegative";
  return r;
}

CheckResult temperature_roundtrip(const EosParams& eos, std::uint64_t seed, int trials) {
  CheckResult r{"temperature-roundtrip", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rho_d(1e-3, 10.0);
  std::uniform_real_distribution<double> th_d(0.0, 10.0);
  std::uniform_real_distribution<double> f_d(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double rho = rho_d(rng);
    const double theta = th_d(rng);
    const double fl = f_d(rng);
    const double q = constitutive::thermal_energy(eos, rho, theta, fl);
    const double back = constitutive::recover_temperature(eos, rho, q, fl);
    worst = std::max(worst, std::abs(back - theta) / std::max(1.0, theta));
  }
  r.pass = worst <= 1e-10;
  r.detail = "max relative inversion error " + num(worst);
  return r;
}

CheckResult g_field_smallness(const GeometryConfig& cfg) {
  CheckResult r{"g-field-smallness", true, ""};
  const geometry::Grid grid{96, cfg.box_halfwidth};
  const TorusField w = TorusField::zeros(32);
  const double band = 3.0 * grid.h();
  const double h2 = grid.h() * grid.h();
  double norm_ref = 0.0;
  for (double omega : {1.0, 0.5, 0.1, 0.01}) {
    const auto cf = geometry::coefficient_fields(cfg, grid, w, omega, omega, omega, band);
    double acc = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      for (int i = 0; i < grid.n; ++i) {
        const std::size_t c = grid.idx(i, j);
        const Vec2 p{grid.x(i), grid.y(j)};
        if (p.norm() <= cfg.radius + band) continue;  // exterior beyond the blend band
        acc += std::pow(cf.g[c], 5.0 / 3.0) * h2;
        if (cf.g[c] < omega || cf.g[c] > 1.0) {
          r.pass = false;
          r.detail = "g out of [omega, 1]";
          return r;
        }
      }
    }
    const double lp = std::pow(acc, 3.0 / 5.0);
    if (omega == 1.0)
      norm_ref = lp;
    else if (lp > 1.5 * norm_ref * omega) {
      r.pass = false;
      r.detail = "L^{5/3} exterior norm " + num(lp) + " not O(omega) at omega=" + num(omega);
      return r;
    }
  }
  r.detail = "exterior L^{5/3} norm scales linearly with omega";
  return r;
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
  EosParams eos;
  GeometryConfig gcfg;
  std::vector<CheckResult> out;
  out.push_back(gibbs_relation(eos));
  out.push_back(stress_positivity(eos, seed, 100000));
  out.push_back(geometry_roundtrip(gcfg, seed + 1, 10000));
  out.push_back(transport_conservation(seed + 2, 50));
  out.push_back(temperature_roundtrip(eos, seed + 3, 10000));
  out.push_back(g_field_smallness(gcfg));
  return out;
}

}  // namespace mhdshell::validate
