#pragma once

#include <cstddef>
#include <vector>

#include "mhdshell/constitutive.hpp"
#include "mhdshell/geometry.hpp"
#include "mhdshell/torus_field.hpp"
#include "mhdshell/vec2.hpp"

namespace mhdshell::fluid {

using geometry::CoefficientFields;
using geometry::Grid;
using geometry::InterfaceMarkers;

struct FluidParams {
  int nx = 128;
  double cfl = 0.4;
  double eps_vacuum = 1e-8;
  int kernel_halfwidth = 2;  // cosine-hat support in cells
  std::size_t markers = 256;

  void validate() const;
};

// Cell-centered conserved fields on the fixed box B.
struct FluidState {
  Grid grid;
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> b;
  std::vector<double> mom_x;
  std::vector<double> mom_y;
  std::vector<double> qth;

  static FluidState zeros(const Grid& grid);
  void check_finite() const;  // throws NanError
};

// Vacuum-regularized velocity u = m rho / (rho^2 + eps^2), zero on the rim of B.
void velocity(const FluidState& s, double eps_v, std::vector<double>& ux,
              std::vector<double>& uy);

// Per-cell temperature recovered from qth.
std::vector<double> recover_temperature_field(const FluidState& s,
                                              const constitutive::EosParams& eos,
                                              const CoefficientFields& coeffs);

// Conservative first-order upwind update of d_t f + div(f u) = 0 with face
// velocities averaged from cell centers. Throws CflError.
std::vector<double> transport_step(const Grid& grid, const std::vector<double>& field,
                                   const std::vector<double>& ux,
                                   const std::vector<double>& uy, double tau);

// Deformed marker data for one window: positions phi_w(y_j), outward normals
// from the flow-map Jacobian, and arclength weights sigma_w |dOmega| / N.
struct MarkerGeometry {
  std::vector<Vec2> pos;
  std::vector<Vec2> normal;
  std::vector<double> weight;
  double sigma_min = 1.0;
};
MarkerGeometry deform_markers(const geometry::GeometryConfig& cfg,
                              const InterfaceMarkers& markers, const TorusField& w);

// Bilinear sample of a cell field at point p (throws if outside the grid interior).
double sample_bilinear(const Grid& grid, const std::vector<double>& field, Vec2 p);

// Marker-sampled velocity, traction -[(p_tot I - S) n_w].n_w and entropy flux
// -(kappa grad theta / theta).n_w at the deformed interface.
struct InterfaceCoupling {
  std::vector<Vec2> velocity;
  std::vector<double> traction_n;
  std::vector<double> entropy_flux_n;
};
InterfaceCoupling interface_sample(const FluidState& s, const constitutive::EosParams& eos,
                                   const CoefficientFields& coeffs,
                                   const MarkerGeometry& markers, double eps_v);

// Spread per-marker force densities (per unit arclength) onto the grid with the
// cosine-hat kernel; sum over cells of result * h^2 equals sum of force * weight.
struct ForceField {
  std::vector<double> fx;
  std::vector<double> fy;
};
ForceField spread_penalty(const Grid& grid, const MarkerGeometry& markers,
                          const std::vector<Vec2>& force, int kernel_halfwidth);

// Sum of the marker kernel footprints, used for the semi-implicit penalty update.
std::vector<double> kernel_density(const Grid& grid, const MarkerGeometry& markers,
                                   int kernel_halfwidth);

// Penalty coupling data for one window: target velocity w_t n per marker,
// coefficient delta/dt.
struct PenaltyCoupling {
  const MarkerGeometry* markers = nullptr;
  std::vector<double> target_vn;  // shell velocity samples at marker nodes
  double coefficient = 0.0;       // delta / dt_window
  int kernel_halfwidth = 2;
};

// One explicit momentum update: upwind advection of m, central total-pressure
// gradient, divergence of the viscous stress, and the interface penalty applied
// as a per-cell implicit relaxation. Velocity forced to zero on the rim.
void momentum_step(FluidState& s, const constitutive::EosParams& eos,
                   const CoefficientFields& coeffs, const PenaltyCoupling& penalty,
                   const std::vector<double>& ux, const std::vector<double>& uy,
                   const std::vector<double>& theta, double eps_v, double tau);

// Thermal energy update: upwind advection, flux-limited explicit diffusion with
// substepping, pressure work, viscous heating, implicit xi theta^5 sink.
struct ThermalReport {
  double sink_energy = 0.0;     // xi integral theta^5 released this step
  double floored_energy = 0.0;  // energy injected by the vacuum temperature floor
  int substeps = 1;
};
ThermalReport thermal_step(FluidState& s, const constitutive::EosParams& eos,
                           const CoefficientFields& coeffs,
                           const std::vector<double>& ux, const std::vector<double>& uy,
                           const std::vector<double>& theta, double xi, double tau);

// Advective/diffusive stable step, C_cfl * min(h/(|u|+c_s), rho h^2 / (2 kappa)).
double cfl_dt(const FluidState& s, const constitutive::EosParams& eos,
              const CoefficientFields& coeffs, const std::vector<double>& ux,
              const std::vector<double>& uy, const std::vector<double>& theta,
              double c_cfl);

// Totals (sum * h^2) of rho and b.
struct ConservationTotals {
  double mass = 0.0;
  double magnetic = 0.0;
};
ConservationTotals conservation_totals(const FluidState& s);

}  // namespace mhdshell::fluid
