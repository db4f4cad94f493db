#include "mhdshell/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mhdshell/errors.hpp"

namespace mhdshell::geometry {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }
double smoothstep_deriv(double t) { return 6.0 * t * (1.0 - t); }
}  // namespace

void GeometryConfig::validate() const {
  if (radius <= 0.0) throw ConfigError("geometry.radius must be positive");
  if (!(m2 < m1 && m1 < 0.0 && 0.0 < M1 && M1 < M2))
    throw ConfigError("geometry.cutoff breakpoints must satisfy m2 < m1 < 0 < M1 < M2");
  if (!(alpha_bound < m2))
    throw ConfigError("geometry.bounds.alpha must lie below the cutoff support edge m2");
  if (!(M2 < beta_bound))
    throw ConfigError("geometry.bounds.beta must lie above the cutoff support edge M2");
  if (!(alpha_bound > -radius))
    throw ConfigError("geometry.bounds.alpha must stay above -radius (tubular injectivity)");
  if (!(box_halfwidth >= radius + beta_bound))
    throw ConfigError("geometry.box_halfwidth too small: the box must contain every deformed domain");
}

double signed_distance(const GeometryConfig& cfg, Vec2 p) { return p.norm() - cfg.radius; }

Vec2 project(const GeometryConfig& cfg, Vec2 p) {
  const double r = p.norm();
  if (r == 0.0) throw DegeneracyError("projection undefined at the circle center");
  return p * (cfg.radius / r);
}

Vec2 unit_normal(Vec2 p) {
  const double r = p.norm();
  return {p.x / r, p.y / r};
}

double boundary_coordinate(Vec2 p) {
  double y = std::atan2(p.y, p.x) / kTwoPi;
  if (y < 0.0) y += 1.0;
  return y;
}

Vec2 boundary_point(const GeometryConfig& cfg, double y) {
  return {cfg.radius * std::cos(kTwoPi * y), cfg.radius * std::sin(kTwoPi * y)};
}

double cutoff(const GeometryConfig& cfg, double d) {
  if (d <= cfg.m2 || d >= cfg.M2) return 0.0;
  if (d < cfg.m1) return smoothstep((d - cfg.m2) / (cfg.m1 - cfg.m2));
  if (d <= cfg.M1) return 1.0;
  return 1.0 - smoothstep((d - cfg.M1) / (cfg.M2 - cfg.M1));
}

double cutoff_derivative(const GeometryConfig& cfg, double d) {
  if (d <= cfg.m2 || d >= cfg.M2) return 0.0;
  if (d < cfg.m1) {
    const double width = cfg.m1 - cfg.m2;
    return smoothstep_deriv((d - cfg.m2) / width) / width;
  }
  if (d <= cfg.M1) return 0.0;
  const double width = cfg.M2 - cfg.M1;
  return -smoothstep_deriv((d - cfg.M1) / width) / width;
}

Vec2 flow_map(const GeometryConfig& cfg, const TorusField& w, Vec2 p) {
  const double f = cutoff(cfg, signed_distance(cfg, p));
  if (f == 0.0) return p;
  const Vec2 n = unit_normal(p);  // radial; p != 0 since cutoff(-R0) = 0
  const double wy = w(boundary_coordinate(p));
  return p + f * wy * n;
}

Vec2 inverse_flow_map(const GeometryConfig& cfg, const TorusField& w, Vec2 z) {
  const double rho = z.norm();
  if (rho == 0.0) return z;  // cutoff vanishes at the center
  const double y = boundary_coordinate(z);
  const double wy = w(y);
  if (wy == 0.0) return z;
  // Solve r + cutoff(r - R0) wy = rho along the ray through z.
  double r = rho - cutoff(cfg, rho - cfg.radius) * wy;  // closed form where f is flat
  const double tol = 1e-10 * cfg.radius;
  for (int it = 0; it < 50; ++it) {
    const double d = r - cfg.radius;
    const double g = r + cutoff(cfg, d) * wy - rho;
    if (std::abs(g) <= 0.1 * tol) {
      const Vec2 n = unit_normal(z);
      return n * r;
    }
    const double dg = 1.0 + cutoff_derivative(cfg, d) * wy;
    double step = (dg > 1e-12) ? g / dg : g;
    // Keep the iterate on the admissible side of the ray.
    if (r - step < 0.0) step = r / 2.0;
    r -= step;
  }
  throw NoConvergenceError("inverse flow map: Newton failed after 50 iterations (near-degenerate map)");
}

double deformed_radius(const GeometryConfig& cfg, const TorusField& w, double y) {
  // The boundary point maps radially: |phi(y)| = R0, cutoff(0) = 1.
  return cfg.radius + w(y);
}

BoundaryJacobian boundary_jacobian(const GeometryConfig& cfg, const TorusField& w, double y) {
  const Vec2 p = boundary_point(cfg, y);
  const double hg = 1e-6 * cfg.radius;
  const Vec2 fx = (flow_map(cfg, w, {p.x + hg, p.y}) - flow_map(cfg, w, {p.x - hg, p.y})) / (2.0 * hg);
  const Vec2 fy = (flow_map(cfg, w, {p.x, p.y + hg}) - flow_map(cfg, w, {p.x, p.y - hg})) / (2.0 * hg);
  const double det = fx.x * fy.y - fy.x * fx.y;
  if (det <= 0.0) throw DegeneracyError("sigma_w: flow map Jacobian not orientation-preserving");
  // J^{-1} n via the adjugate.
  const Vec2 n = unit_normal(p);
  const Vec2 jin{(fy.y * n.x - fy.x * n.y) / det, (-fx.y * n.x + fx.x * n.y) / det};
  const double len = jin.norm();
  const double sigma = det * len;
  if (sigma <= 0.0) throw DegeneracyError("sigma_w <= 0: surface element degenerated");
  return {sigma, jin / len};
}

double jacobian_sigma(const GeometryConfig& cfg, const TorusField& w, double y) {
  return boundary_jacobian(cfg, w, y).sigma;
}

bool inside(const GeometryConfig& cfg, const TorusField& w, Vec2 p) {
  return inverse_flow_map(cfg, w, p).norm() < cfg.radius;
}

InterfaceMarkers make_markers(const GeometryConfig& cfg, std::size_t count) {
  InterfaceMarkers m;
  m.count = count;
  m.y.resize(count);
  m.ref_point.resize(count);
  m.ref_normal.resize(count);
  m.weight.resize(count);
  const double arc = kTwoPi * cfg.radius / static_cast<double>(count);
  for (std::size_t j = 0; j < count; ++j) {
    m.y[j] = static_cast<double>(j) / static_cast<double>(count);
    m.ref_point[j] = boundary_point(cfg, m.y[j]);
    m.ref_normal[j] = unit_normal(m.ref_point[j]);
    m.weight[j] = arc;
  }
  return m;
}

CoefficientFields coefficient_fields(const GeometryConfig& cfg, const Grid& grid,
                                     const TorusField& w, double omega, double zeta,
                                     double lambda, double band) {
  CoefficientFields out;
  out.g.assign(grid.cells(), 1.0);
  out.h.assign(grid.cells(), 1.0);
  out.f.assign(grid.cells(), 1.0);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const Vec2 p{grid.x(i), grid.y(j)};
      const double r = p.norm();
      // Signed radial gap to the deformed boundary; the flow map is radial.
      const double gap = (r == 0.0) ? -deformed_radius(cfg, w, 0.0)
                                    : r - deformed_radius(cfg, w, boundary_coordinate(p));
      const std::size_t c = grid.idx(i, j);
      if (gap <= 0.0) continue;  // interior keeps (1, 1, 1)
      out.h[c] = zeta;
      out.f[c] = lambda;
      out.g[c] = (gap >= band) ? omega : 1.0 + (omega - 1.0) * (gap / band);
    }
  }
  return out;
}

}  // namespace mhdshell::geometry
