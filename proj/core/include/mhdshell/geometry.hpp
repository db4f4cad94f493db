#pragma once

#include <cstddef>
#include <vector>

#include "mhdshell/torus_field.hpp"
#include "mhdshell/vec2.hpp"

namespace mhdshell::geometry {

// Reference boundary is the circle of radius `radius` parameterized by
// phi(y) = R0 (cos 2 pi y, sin 2 pi y), y on the unit torus.
struct GeometryConfig {
  double radius = 1.0;
  // Cutoff breakpoints: support (m2, M2), plateau [m1, M1], m2 < m1 < 0 < M1 < M2.
  // Ramp widths bound the ray-injective displacement range: |w| < width / 1.5.
  double m2 = -0.35;
  double m1 = -0.05;
  double M1 = 0.05;
  double M2 = 0.35;
  // Admissible displacement range (alpha_bound, beta_bound).
  double alpha_bound = -0.45;
  double beta_bound = 0.45;
  // Fixed computational box B = [-box_halfwidth, box_halfwidth]^2.
  double box_halfwidth = 2.0;

  void validate() const;  // throws ConfigError on a violated invariant
};

// Signed distance to the reference circle, negative inside.
double signed_distance(const GeometryConfig& cfg, Vec2 p);

// Closest point on the reference boundary. Throws DegeneracyError at the origin.
Vec2 project(const GeometryConfig& cfg, Vec2 p);

// Outward unit normal at the projection of p.
Vec2 unit_normal(Vec2 p);

// Torus coordinate of the projection, phi^{-1}(pi(p)) in [0,1).
double boundary_coordinate(Vec2 p);

// phi(y) on the reference circle.
Vec2 boundary_point(const GeometryConfig& cfg, double y);

// C^1 cutoff: 0 outside (m2, M2), 1 on [m1, M1], Hermite smoothstep ramps.
double cutoff(const GeometryConfig& cfg, double d);
double cutoff_derivative(const GeometryConfig& cfg, double d);

// Flow map p -> p + cutoff(d(p)) w(y(p)) n(p); identity wherever the cutoff vanishes.
Vec2 flow_map(const GeometryConfig& cfg, const TorusField& w, Vec2 p);

// Inverse of the flow map by 1D Newton along the ray through z.
// Throws NoConvergenceError after 50 iterations.
Vec2 inverse_flow_map(const GeometryConfig& cfg, const TorusField& w, Vec2 z);

// Radius of the deformed boundary along direction y: |flow_map(phi(y))|.
double deformed_radius(const GeometryConfig& cfg, const TorusField& w, double y);

// Surface element and deformed outward normal from centered finite differences
// of the flow map at phi(y): sigma_w = det(J) |J^{-1} n|, n_w = J^{-1} n normalized.
struct BoundaryJacobian {
  double sigma = 1.0;
  Vec2 normal;
};
BoundaryJacobian boundary_jacobian(const GeometryConfig& cfg, const TorusField& w, double y);

// sigma_w alone. Throws DegeneracyError if <= 0.
double jacobian_sigma(const GeometryConfig& cfg, const TorusField& w, double y);

// True iff p lies in the deformed domain Omega_w.
bool inside(const GeometryConfig& cfg, const TorusField& w, Vec2 p);

// Uniform interface markers on the torus with reference arclength weights.
struct InterfaceMarkers {
  std::size_t count = 0;
  std::vector<double> y;         // torus coordinates j/N
  std::vector<Vec2> ref_point;   // phi(y_j)
  std::vector<Vec2> ref_normal;  // n(y_j)
  std::vector<double> weight;    // |dOmega| / N, sums to 2 pi R0
};
InterfaceMarkers make_markers(const GeometryConfig& cfg, std::size_t count);

// Cell-centered square grid over B; i is the x index, row-major.
struct Grid {
  int n = 0;
  double halfwidth = 0.0;

  double h() const { return 2.0 * halfwidth / n; }
  double x(int i) const { return -halfwidth + (i + 0.5) * h(); }
  double y(int j) const { return -halfwidth + (j + 0.5) * h(); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n + i; }
  std::size_t cells() const { return static_cast<std::size_t>(n) * n; }
  bool on_rim(int i, int j) const { return i == 0 || j == 0 || i == n - 1 || j == n - 1; }
};

// Extended coefficient fields on the grid: g in [omega,1] with a linear blend
// of width `band` outside the interface, h and f sharp indicator-valued.
struct CoefficientFields {
  std::vector<double> g;
  std::vector<double> h;
  std::vector<double> f;
};
CoefficientFields coefficient_fields(const GeometryConfig& cfg, const Grid& grid,
                                     const TorusField& w, double omega, double zeta,
                                     double lambda, double band);

}  // namespace mhdshell::geometry
