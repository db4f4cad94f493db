#include "mhdshell/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mhdshell/errors.hpp"

namespace mhdshell::io {

namespace {

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

splitting::CoupledState synthesize_initial_data(const RunConfig& config) {
  const auto& gcfg = config.geometry;
  const geometry::Grid grid{config.fluid.nx, config.geometry.box_halfwidth};
  const double h = grid.h();
  const double theta0 = 1.0;
  const double lambda = [&] {
    const double x2 = config.eos.xi * config.eos.xi;
    return x2 * x2 * x2;
  }();

  splitting::CoupledState st;
  st.fluid = fluid::FluidState::zeros(grid);
  st.shell = shell::ShellState::zeros(config.shell.n_nodes);
  for (auto& th : st.shell.theta) th = theta0;

  const std::string& recipe = config.run.recipe;
  const bool uniform_box = (recipe == "equilibrium");

  // Mollified indicator of Omega_w(0) with a vacuum margin near the interface
  // (at least the 2h the support condition requires) and a resolvable ramp.
  const double margin = 2.5 * h;
  const double ramp =
      std::min(std::max(4.0 * h, 0.1 * gcfg.radius), 0.3 * (gcfg.radius - margin));
  if (!uniform_box && gcfg.radius - margin - ramp <= 0.2 * gcfg.radius)
    throw ConfigError("initial data recipe infeasible: grid too coarse for the interface margin");

  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const std::size_t c = grid.idx(i, j);
      const Vec2 p{grid.x(i), grid.y(j)};
      const double s = p.norm();
      double rho = 0.0, b = 0.0, f_lam = lambda;
      if (uniform_box) {
        rho = 1.0;
        b = 0.0;
        f_lam = (s <= gcfg.radius) ? 1.0 : lambda;
      } else {
        // w0 = 0 for every shipped recipe, so the interface sits at R0.
        const double support = gcfg.radius - margin;
        const double chi = smoothstep((support - s) / ramp);
        f_lam = (s <= gcfg.radius) ? 1.0 : lambda;
        if (recipe == "magnetic-bump") {
          rho = 0.8 * chi;
          b = 0.5 * std::exp(-(s * s) / (0.3 * 0.3)) * chi;
        } else {  // density-bump, shell-kick, collapse
          rho = (0.8 + 0.4 * std::exp(-(s * s) / (0.35 * 0.35))) * chi;
          b = 0.1 * chi;
        }
      }
      st.fluid.rho[c] = rho;
      st.fluid.b[c] = b;
      st.fluid.qth[c] = constitutive::thermal_energy(config.eos, rho, theta0, f_lam);
    }
  }

  const std::size_t ns = config.shell.n_nodes;
  if (recipe == "shell-kick") {
    for (std::size_t k = 0; k < ns; ++k) {
      const double y = static_cast<double>(k) / static_cast<double>(ns);
      st.shell.v[k] = 0.1 * std::sin(2.0 * std::numbers::pi * y);
    }
  } else if (recipe == "collapse") {
    for (std::size_t k = 0; k < ns; ++k) st.shell.v[k] = -2.0;
  }

  // Buffer holds v0 n for the first window.
  const TorusField v0(st.shell.v);
  st.buffer.marker_vn.resize(config.fluid.markers);
  for (std::size_t m = 0; m < config.fluid.markers; ++m) {
    const double y = static_cast<double>(m) / static_cast<double>(config.fluid.markers);
    st.buffer.marker_vn[m] = v0(y);
  }
  return st;
}

}  // namespace mhdshell::io
