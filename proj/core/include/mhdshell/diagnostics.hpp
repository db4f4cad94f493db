#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mhdshell/constitutive.hpp"
#include "mhdshell/fluid.hpp"
#include "mhdshell/geometry.hpp"
#include "mhdshell/shell.hpp"

namespace mhdshell::diagnostics {

// Monitor exponents for the higher-integrability norms, defaults per the
// stated ranges with p = 20.
struct MonitorExponents {
  double theta1 = 0.25;
  double theta2 = 0.4;
  static MonitorExponents defaults(double gamma);
};

// One CSV row of the run ledger. Cumulative columns are integrated by the
// orchestrator and passed in; everything else is a pure reduction of the state.
struct LedgerRecord {
  double time = 0.0;
  double fluid_kinetic = 0.0;
  double magnetic = 0.0;
  double internal = 0.0;
  double artificial = 0.0;
  double shell_kinetic = 0.0;
  double shell_bending = 0.0;
  double shell_rotational = 0.0;
  double shell_thermal = 0.0;
  double shell_dissipation_cum = 0.0;
  double fluid_dissipation_cum = 0.0;
  double sink_cum = 0.0;
  double mass = 0.0;
  double magnetic_total = 0.0;
  double interface_mismatch = 0.0;
  double hi_rho = 0.0;
  double hi_b = 0.0;
  double margin_lo = 0.0;
  double margin_hi = 0.0;
  double sigma_min = 0.0;
  double leak_fraction = 0.0;
  double total = 0.0;   // sum of the eight energy columns
  double budget = 0.0;  // total + shell_dissipation_cum + sink_cum
};

const std::vector<std::string>& ledger_columns();
void write_ledger_header(std::ostream& os);
void write_ledger_record(std::ostream& os, const LedgerRecord& r);

// Instantaneous energy columns plus conservation totals and monitors.
LedgerRecord total_energy(const fluid::FluidState& fs, const shell::ShellState& ss,
                          const constitutive::EosParams& eos, double alpha1, double alpha2,
                          double eps_v, const MonitorExponents& exps);

// (1/theta)(S:grad u + kappa |grad theta|^2 / theta) per cell; zero where there
// is neither motion nor a temperature gradient.
std::vector<double> entropy_production_density(const fluid::FluidState& fs,
                                               const constitutive::EosParams& eos,
                                               const geometry::CoefficientFields& coeffs,
                                               const std::vector<double>& ux,
                                               const std::vector<double>& uy,
                                               const std::vector<double>& theta);

// Integrals of the entropy production inside / outside the deformed domain.
struct DissipationSplit {
  double interior = 0.0;
  double exterior = 0.0;
};
DissipationSplit entropy_production_split(const fluid::FluidState& fs,
                                          const std::vector<double>& density,
                                          const std::vector<char>& inside_mask);

// Sum over markers of |u(phi_w(y_j)) - w_t(y_j) n_j|^2 weight_j.
double interface_mismatch(const fluid::FluidState& fs, const fluid::MarkerGeometry& markers,
                          const std::vector<double>& shell_v_at_markers, double eps_v);

// Same, with the velocity field already at hand.
double interface_mismatch(const fluid::Grid& grid, const std::vector<double>& ux,
                          const std::vector<double>& uy, const fluid::MarkerGeometry& markers,
                          const std::vector<double>& shell_v_at_markers);

struct DegeneracyReport {
  double margin_lo = 0.0;  // min_j (w_j - alpha)
  double margin_hi = 0.0;  // min_j (beta - w_j)
  double sigma_min = 0.0;
  bool halt = false;
};
DegeneracyReport degeneracy_check(const shell::ShellState& ss,
                                  const geometry::GeometryConfig& cfg, double sigma_min);

// Fraction of total mass beyond the inflated interface band (radial gap > band).
double leakage_fraction(const fluid::FluidState& fs, const geometry::GeometryConfig& cfg,
                        const TorusField& w, double band);

// Cell mask of the deformed domain.
std::vector<char> inside_mask(const fluid::Grid& grid, const geometry::GeometryConfig& cfg,
                              const TorusField& w);

}  // namespace mhdshell::diagnostics
