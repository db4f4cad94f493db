#include "mhdshell/diagnostics.hpp"

#include <cmath>
#include <ostream>

#include "mhdshell/errors.hpp"

namespace mhdshell::diagnostics {

MonitorExponents MonitorExponents::defaults(double gamma) {
  // Stated ranges with p = 20.
  const double p = 20.0;
  MonitorExponents e;
  e.theta1 = std::min((gamma - 1.0) / 2.0 - gamma / p, gamma / 4.0);
  e.theta2 = std::min((gamma - 1.0) / gamma - 2.0 / p, 0.5);
  return e;
}

const std::vector<std::string>& ledger_columns() {
  static const std::vector<std::string> cols = {
      "time",         "fluid_kinetic",  "magnetic",
      "internal",     "artificial",     "shell_kinetic",
      "shell_bending", "shell_rotational", "shell_thermal",
      "shell_dissipation_cum", "fluid_dissipation_cum", "sink_cum",
      "mass",         "magnetic_total", "interface_mismatch",
      "hi_rho",       "hi_b",           "margin_lo",
      "margin_hi",    "sigma_min",      "leak_fraction",
      "total",        "budget"};
  return cols;
}

void write_ledger_header(std::ostream& os) {
  const auto& cols = ledger_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
}

void write_ledger_record(std::ostream& os, const LedgerRecord& r) {
  const double vals[] = {r.time,
                         r.fluid_kinetic,
                         r.magnetic,
                         r.internal,
                         r.artificial,
                         r.shell_kinetic,
                         r.shell_bending,
                         r.shell_rotational,
                         r.shell_thermal,
                         r.shell_dissipation_cum,
                         r.fluid_dissipation_cum,
                         r.sink_cum,
                         r.mass,
                         r.magnetic_total,
                         r.interface_mismatch,
                         r.hi_rho,
                         r.hi_b,
                         r.margin_lo,
                         r.margin_hi,
                         r.sigma_min,
                         r.leak_fraction,
                         r.total,
                         r.budget};
  char buf[32];
  bool first = true;
  for (double v : vals) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << (first ? "" : ",") << buf;
    first = false;
  }
  os << "\n";
}

LedgerRecord total_energy(const fluid::FluidState& fs, const shell::ShellState& ss,
                          const constitutive::EosParams& eos, double alpha1, double alpha2,
                          double eps_v, const MonitorExponents& exps) {
  (void)alpha1;
  LedgerRecord r;
  r.time = fs.t;
  const double h2 = fs.grid.h() * fs.grid.h();
  std::vector<double> ux, uy;
  fluid::velocity(fs, eps_v, ux, uy);
  double ekin = 0.0, emag = 0.0, eint = 0.0, eart = 0.0, hi_rho = 0.0, hi_b = 0.0;
  for (std::size_t c = 0; c < fs.rho.size(); ++c) {
    const double rho = fs.rho[c];
    ekin += 0.5 * rho * (ux[c] * ux[c] + uy[c] * uy[c]);
    emag += 0.5 * fs.b[c] * fs.b[c];
    eint += std::pow(rho, eos.gamma) / (eos.gamma - 1.0) + fs.qth[c];
    eart += (eos.delta / (eos.beta - 1.0)) * std::pow(rho + fs.b[c], eos.beta);
    if (rho > 0.0) hi_rho += std::pow(rho, eos.gamma + exps.theta1);
    if (fs.b[c] > 0.0) hi_b += std::pow(fs.b[c], 2.0 + exps.theta2);
  }
  r.fluid_kinetic = ekin * h2;
  r.magnetic = emag * h2;
  r.internal = eint * h2;
  r.artificial = eart * h2;
  r.hi_rho = hi_rho * h2;
  r.hi_b = hi_b * h2;

  const shell::EnergyBreakdown se = shell::shell_energy(ss, alpha2);
  r.shell_kinetic = (1.0 - eos.delta) * se.kinetic;  // (1-delta)/2 ||w_t||^2
  r.shell_bending = se.bending;
  r.shell_rotational = se.rotational;
  r.shell_thermal = se.thermal;

  const auto totals = fluid::conservation_totals(fs);
  r.mass = totals.mass;
  r.magnetic_total = totals.magnetic;
  r.total = r.fluid_kinetic + r.magnetic + r.internal + r.artificial + r.shell_kinetic +
            r.shell_bending + r.shell_rotational + r.shell_thermal;
  return r;
}

std::vector<double> entropy_production_density(const fluid::FluidState& fs,
                                               const constitutive::EosParams& eos,
                                               const geometry::CoefficientFields& coeffs,
                                               const std::vector<double>& ux,
                                               const std::vector<double>& uy,
                                               const std::vector<double>& theta) {
  const auto& g = fs.grid;
  const double h = g.h();
  std::vector<double> out(g.cells(), 0.0);
  auto d = [&](const std::vector<double>& f, int i, int j, bool xdir) {
    if (xdir) {
      if (i == 0) return (f[g.idx(1, j)] - f[g.idx(0, j)]) / h;
      if (i == g.n - 1) return (f[g.idx(g.n - 1, j)] - f[g.idx(g.n - 2, j)]) / h;
      return (f[g.idx(i + 1, j)] - f[g.idx(i - 1, j)]) / (2.0 * h);
    }
    if (j == 0) return (f[g.idx(i, 1)] - f[g.idx(i, 0)]) / h;
    if (j == g.n - 1) return (f[g.idx(i, g.n - 1)] - f[g.idx(i, g.n - 2)]) / h;
    return (f[g.idx(i, j + 1)] - f[g.idx(i, j - 1)]) / (2.0 * h);
  };
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t c = g.idx(i, j);
      const constitutive::Mat2 gu{d(ux, i, j, true), d(ux, i, j, false), d(uy, i, j, true),
                                  d(uy, i, j, false)};
      const double heat = constitutive::stress_contraction(eos, theta[c], gu, coeffs.g[c]);
      const double gx = d(theta, i, j, true);
      const double gy = d(theta, i, j, false);
      const double grad2 = gx * gx + gy * gy;
      if (heat == 0.0 && grad2 == 0.0) continue;
      const double th = std::max(theta[c], 1e-12);
      const double kap = constitutive::transport_coeffs(eos, th, 1.0, coeffs.h[c]).kappa;
      out[c] = (heat + kap * grad2 / th) / th;
    }
  }
  return out;
}

DissipationSplit entropy_production_split(const fluid::FluidState& fs,
                                          const std::vector<double>& density,
                                          const std::vector<char>& mask) {
  DissipationSplit s;
  const double h2 = fs.grid.h() * fs.grid.h();
  for (std::size_t c = 0; c < density.size(); ++c) {
    if (mask[c])
      s.interior += density[c];
    else
      s.exterior += density[c];
  }
  s.interior *= h2;
  s.exterior *= h2;
  return s;
}

double interface_mismatch(const fluid::Grid& grid, const std::vector<double>& ux,
                          const std::vector<double>& uy, const fluid::MarkerGeometry& markers,
                          const std::vector<double>& shell_v_at_markers) {
  double sum = 0.0;
  for (std::size_t m = 0; m < markers.pos.size(); ++m) {
    const Vec2 u{fluid::sample_bilinear(grid, ux, markers.pos[m]),
                 fluid::sample_bilinear(grid, uy, markers.pos[m])};
    const Vec2 diff = u - markers.normal[m] * shell_v_at_markers[m];
    sum += diff.norm2() * markers.weight[m];
  }
  return sum;
}

double interface_mismatch(const fluid::FluidState& fs, const fluid::MarkerGeometry& markers,
                          const std::vector<double>& shell_v_at_markers, double eps_v) {
  std::vector<double> ux, uy;
  fluid::velocity(fs, eps_v, ux, uy);
  return interface_mismatch(fs.grid, ux, uy, markers, shell_v_at_markers);
}

DegeneracyReport degeneracy_check(const shell::ShellState& ss,
                                  const geometry::GeometryConfig& cfg, double sigma_min) {
  DegeneracyReport r;
  double wmin = ss.w[0], wmax = ss.w[0];
  for (double wj : ss.w) {
    wmin = std::min(wmin, wj);
    wmax = std::max(wmax, wj);
  }
  r.margin_lo = wmin - cfg.alpha_bound;
  r.margin_hi = cfg.beta_bound - wmax;
  r.sigma_min = sigma_min;
  r.halt = r.margin_lo <= 0.0 || r.margin_hi <= 0.0 || sigma_min <= 0.0;
  return r;
}

double leakage_fraction(const fluid::FluidState& fs, const geometry::GeometryConfig& cfg,
                        const TorusField& w, double band) {
  const auto& g = fs.grid;
  double outside = 0.0, total = 0.0;
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const double m = fs.rho[g.idx(i, j)];
      if (m <= 0.0) continue;
      total += m;
      const Vec2 p{g.x(i), g.y(j)};
      const double r = p.norm();
      const double rw = (r == 0.0) ? geometry::deformed_radius(cfg, w, 0.0)
                                   : geometry::deformed_radius(
                                         cfg, w, geometry::boundary_coordinate(p));
      if (r - rw > band) outside += m;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

std::vector<char> inside_mask(const fluid::Grid& grid, const geometry::GeometryConfig& cfg,
                              const TorusField& w) {
  std::vector<char> mask(grid.cells(), 0);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const Vec2 p{grid.x(i), grid.y(j)};
      const double r = p.norm();
      const double rw = (r == 0.0) ? geometry::deformed_radius(cfg, w, 0.0)
                                   : geometry::deformed_radius(
                                         cfg, w, geometry::boundary_coordinate(p));
      mask[grid.idx(i, j)] = (r <= rw) ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace mhdshell::diagnostics
