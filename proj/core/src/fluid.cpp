#include "mhdshell/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mhdshell/errors.hpp"

namespace mhdshell::fluid {

using constitutive::EosParams;

void FluidParams::validate() const {
  if (nx < 8) throw ConfigError("fluid.nx must be at least 8");
  if (!(cfl > 0.0 && cfl <= 0.9)) throw ConfigError("fluid.cfl must lie in (0, 0.9]");
  if (!(eps_vacuum > 0.0)) throw ConfigError("fluid.eps_vacuum must be positive");
  if (kernel_halfwidth < 1 || kernel_halfwidth > 4)
    throw ConfigError("fluid.kernel_halfwidth must be 1..4 cells");
  if (markers < 8) throw ConfigError("fluid.markers must be at least 8");
}

FluidState FluidState::zeros(const Grid& grid) {
  FluidState s;
  s.grid = grid;
  s.rho.assign(grid.cells(), 0.0);
  s.b.assign(grid.cells(), 0.0);
  s.mom_x.assign(grid.cells(), 0.0);
  s.mom_y.assign(grid.cells(), 0.0);
  s.qth.assign(grid.cells(), 0.0);
  return s;
}

void FluidState::check_finite() const {
  auto scan = [](const std::vector<double>& v, const char* name) {
    for (double x : v)
      if (!std::isfinite(x)) throw NanError(std::string("non-finite value in field ") + name);
  };
  scan(rho, "rho");
  scan(b, "b");
  scan(mom_x, "mom_x");
  scan(mom_y, "mom_y");
  scan(qth, "qth");
}

void velocity(const FluidState& s, double eps_v, std::vector<double>& ux,
              std::vector<double>& uy) {
  const Grid& g = s.grid;
  ux.assign(g.cells(), 0.0);
  uy.assign(g.cells(), 0.0);
  const double e2 = eps_v * eps_v;
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t c = g.idx(i, j);
      if (g.on_rim(i, j)) continue;  // u = 0 on the rim of B
      const double r = s.rho[c];
      const double f = r / (r * r + e2);
      ux[c] = s.mom_x[c] * f;
      uy[c] = s.mom_y[c] * f;
    }
  }
}

std::vector<double> recover_temperature_field(const FluidState& s, const EosParams& eos,
                                              const CoefficientFields& coeffs) {
  std::vector<double> theta(s.grid.cells());
  for (std::size_t c = 0; c < theta.size(); ++c)
    theta[c] = constitutive::recover_temperature(eos, s.rho[c], s.qth[c], coeffs.f[c]);
  return theta;
}

std::vector<double> transport_step(const Grid& g, const std::vector<double>& field,
                                   const std::vector<double>& ux,
                                   const std::vector<double>& uy, double tau) {
  const double h = g.h();
  double umax = 0.0;
  for (std::size_t c = 0; c < field.size(); ++c)
    umax = std::max(umax, std::abs(ux[c]) + std::abs(uy[c]));
  if (tau * umax / h > 1.0 + 1e-12)
    throw CflError("transport_step: advective CFL violated (tau |u| / h = " +
                   std::to_string(tau * umax / h) + ")");

  std::vector<double> out = field;
  const double lam = tau / h;
  // x faces: flux between (i,j) and (i+1,j); domain boundary faces carry none.
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i + 1 < g.n; ++i) {
      const std::size_t cl = g.idx(i, j), cr = g.idx(i + 1, j);
      const double uf = 0.5 * (ux[cl] + ux[cr]);
      const double flux = uf * (uf >= 0.0 ? field[cl] : field[cr]);
      out[cl] -= lam * flux;
      out[cr] += lam * flux;
    }
  }
  for (int j = 0; j + 1 < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t cl = g.idx(i, j), cr = g.idx(i, j + 1);
      const double uf = 0.5 * (uy[cl] + uy[cr]);
      const double flux = uf * (uf >= 0.0 ? field[cl] : field[cr]);
      out[cl] -= lam * flux;
      out[cr] += lam * flux;
    }
  }
  return out;
}

MarkerGeometry deform_markers(const geometry::GeometryConfig& cfg,
                              const InterfaceMarkers& markers, const TorusField& w) {
  MarkerGeometry m;
  m.pos.resize(markers.count);
  m.normal.resize(markers.count);
  m.weight.resize(markers.count);
  m.sigma_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < markers.count; ++j) {
    const double rj = cfg.radius + w(markers.y[j]);
    m.pos[j] = markers.ref_normal[j] * rj;
    const auto bj = geometry::boundary_jacobian(cfg, w, markers.y[j]);
    m.normal[j] = bj.normal;
    m.weight[j] = markers.weight[j] * bj.sigma;
    m.sigma_min = std::min(m.sigma_min, bj.sigma);
  }
  return m;
}

double sample_bilinear(const Grid& g, const std::vector<double>& field, Vec2 p) {
  const double h = g.h();
  const double fx = (p.x + g.halfwidth) / h - 0.5;
  const double fy = (p.y + g.halfwidth) / h - 0.5;
  const int i0 = static_cast<int>(std::floor(fx));
  const int j0 = static_cast<int>(std::floor(fy));
  if (i0 < 0 || j0 < 0 || i0 + 1 >= g.n || j0 + 1 >= g.n)
    throw DegeneracyError("bilinear sample outside the grid interior");
  const double ax = fx - i0;
  const double ay = fy - j0;
  const double f00 = field[g.idx(i0, j0)], f10 = field[g.idx(i0 + 1, j0)];
  const double f01 = field[g.idx(i0, j0 + 1)], f11 = field[g.idx(i0 + 1, j0 + 1)];
  return (1 - ax) * (1 - ay) * f00 + ax * (1 - ay) * f10 + (1 - ax) * ay * f01 +
         ax * ay * f11;
}

namespace {

// Cosine-hat kernel on K cells per side; sums to one over the integer lattice.
inline double hat(double r, int k) {
  const double a = std::abs(r);
  if (a >= k) return 0.0;
  return (1.0 + std::cos(std::numbers::pi * r / k)) / (2.0 * k);
}

// Gradient of a cell field by centered differences, one-sided on the rim.
void gradient(const Grid& g, const std::vector<double>& f, std::vector<double>& dx,
              std::vector<double>& dy) {
  const double h = g.h();
  dx.assign(g.cells(), 0.0);
  dy.assign(g.cells(), 0.0);
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t c = g.idx(i, j);
      if (i == 0)
        dx[c] = (f[g.idx(1, j)] - f[c]) / h;
      else if (i == g.n - 1)
        dx[c] = (f[c] - f[g.idx(g.n - 2, j)]) / h;
      else
        dx[c] = (f[g.idx(i + 1, j)] - f[g.idx(i - 1, j)]) / (2.0 * h);
      if (j == 0)
        dy[c] = (f[g.idx(i, 1)] - f[c]) / h;
      else if (j == g.n - 1)
        dy[c] = (f[c] - f[g.idx(i, g.n - 2)]) / h;
      else
        dy[c] = (f[g.idx(i, j + 1)] - f[g.idx(i, j - 1)]) / (2.0 * h);
    }
  }
}

struct KernelFoot {
  int i0, i1, j0, j1;
};

KernelFoot footprint(const Grid& g, Vec2 p, int k) {
  const double h = g.h();
  const double fx = (p.x + g.halfwidth) / h - 0.5;
  const double fy = (p.y + g.halfwidth) / h - 0.5;
  KernelFoot f;
  f.i0 = std::max(0, static_cast<int>(std::ceil(fx - k)));
  f.i1 = std::min(g.n - 1, static_cast<int>(std::floor(fx + k)));
  f.j0 = std::max(0, static_cast<int>(std::ceil(fy - k)));
  f.j1 = std::min(g.n - 1, static_cast<int>(std::floor(fy + k)));
  return f;
}

}  // namespace

ForceField spread_penalty(const Grid& g, const MarkerGeometry& markers,
                          const std::vector<Vec2>& force, int kernel_halfwidth) {
  ForceField out;
  out.fx.assign(g.cells(), 0.0);
  out.fy.assign(g.cells(), 0.0);
  const double h = g.h();
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t m = 0; m < markers.pos.size(); ++m) {
    const Vec2 p = markers.pos[m];
    const Vec2 f = force[m] * markers.weight[m];
    const KernelFoot foot = footprint(g, p, kernel_halfwidth);
    for (int j = foot.j0; j <= foot.j1; ++j) {
      const double wy = hat((g.y(j) - p.y) / h, kernel_halfwidth);
      if (wy == 0.0) continue;
      for (int i = foot.i0; i <= foot.i1; ++i) {
        const double wx = hat((g.x(i) - p.x) / h, kernel_halfwidth);
        if (wx == 0.0) continue;
        const std::size_t c = g.idx(i, j);
        const double k2d = wx * wy * inv_h2;
        out.fx[c] += f.x * k2d;
        out.fy[c] += f.y * k2d;
      }
    }
  }
  return out;
}

std::vector<double> kernel_density(const Grid& g, const MarkerGeometry& markers,
                                   int kernel_halfwidth) {
  std::vector<double> out(g.cells(), 0.0);
  const double h = g.h();
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t m = 0; m < markers.pos.size(); ++m) {
    const Vec2 p = markers.pos[m];
    const KernelFoot foot = footprint(g, p, kernel_halfwidth);
    for (int j = foot.j0; j <= foot.j1; ++j) {
      const double wy = hat((g.y(j) - p.y) / h, kernel_halfwidth);
      for (int i = foot.i0; i <= foot.i1; ++i) {
        const double wx = hat((g.x(i) - p.x) / h, kernel_halfwidth);
        out[g.idx(i, j)] += markers.weight[m] * wx * wy * inv_h2;
      }
    }
  }
  return out;
}

InterfaceCoupling interface_sample(const FluidState& s, const EosParams& eos,
                                   const CoefficientFields& coeffs,
                                   const MarkerGeometry& markers, double eps_v) {
  const Grid& g = s.grid;
  std::vector<double> ux, uy;
  velocity(s, eps_v, ux, uy);
  std::vector<double> theta(g.cells());
  std::vector<double> ptot(g.cells());
  for (std::size_t c = 0; c < theta.size(); ++c) {
    theta[c] = constitutive::recover_temperature(eos, s.rho[c], s.qth[c], coeffs.f[c]);
    ptot[c] = constitutive::total_pressure(eos, s.rho[c], s.b[c], theta[c], coeffs.f[c]);
  }
  std::vector<double> dux_dx, dux_dy, duy_dx, duy_dy, dth_dx, dth_dy;
  gradient(g, ux, dux_dx, dux_dy);
  gradient(g, uy, duy_dx, duy_dy);
  gradient(g, theta, dth_dx, dth_dy);
  std::vector<double> s00(g.cells()), s01(g.cells()), s11(g.cells());
  for (std::size_t c = 0; c < s00.size(); ++c) {
    const constitutive::Mat2 gu{dux_dx[c], dux_dy[c], duy_dx[c], duy_dy[c]};
    const constitutive::Mat2 st = constitutive::stress(eos, theta[c], gu, coeffs.g[c]);
    s00[c] = st[0];
    s01[c] = st[1];
    s11[c] = st[3];
  }

  InterfaceCoupling out;
  const std::size_t nm = markers.pos.size();
  out.velocity.resize(nm);
  out.traction_n.resize(nm);
  out.entropy_flux_n.resize(nm);
  for (std::size_t m = 0; m < nm; ++m) {
    const Vec2 p = markers.pos[m];
    const Vec2 nw = markers.normal[m];
    out.velocity[m] = {sample_bilinear(g, ux, p), sample_bilinear(g, uy, p)};
    const double pm = sample_bilinear(g, ptot, p);
    const double t00 = sample_bilinear(g, s00, p);
    const double t01 = sample_bilinear(g, s01, p);
    const double t11 = sample_bilinear(g, s11, p);
    // F = -[(p_tot I - S) n_w]; report the n_w component.
    const Vec2 fvec{-(pm * nw.x - (t00 * nw.x + t01 * nw.y)),
                    -(pm * nw.y - (t01 * nw.x + t11 * nw.y))};
    out.traction_n[m] = fvec.dot(nw);
    const double th = std::max(sample_bilinear(g, theta, p), 1e-12);
    const double hm = sample_bilinear(g, coeffs.h, p);
    const double kap = constitutive::transport_coeffs(eos, th, 1.0, hm).kappa;
    const Vec2 gth{sample_bilinear(g, dth_dx, p), sample_bilinear(g, dth_dy, p)};
    out.entropy_flux_n[m] = -(kap / th) * gth.dot(nw);
  }
  return out;
}

void momentum_step(FluidState& s, const EosParams& eos, const CoefficientFields& coeffs,
                   const PenaltyCoupling& penalty, const std::vector<double>& ux,
                   const std::vector<double>& uy, const std::vector<double>& theta,
                   double eps_v, double tau) {
  const Grid& g = s.grid;

  // (i) upwind advection of momentum
  std::vector<double> mx = transport_step(g, s.mom_x, ux, uy, tau);
  std::vector<double> my = transport_step(g, s.mom_y, ux, uy, tau);

  // (ii) total pressure gradient, centered
  std::vector<double> ptot(g.cells());
  for (std::size_t c = 0; c < ptot.size(); ++c)
    ptot[c] = constitutive::total_pressure(eos, s.rho[c], s.b[c], theta[c], coeffs.f[c]);
  std::vector<double> dpx, dpy;
  gradient(g, ptot, dpx, dpy);

  // (iii) divergence of the viscous stress
  std::vector<double> dux_dx, dux_dy, duy_dx, duy_dy;
  gradient(g, ux, dux_dx, dux_dy);
  gradient(g, uy, duy_dx, duy_dy);
  std::vector<double> s00(g.cells()), s01(g.cells()), s11(g.cells());
  for (std::size_t c = 0; c < s00.size(); ++c) {
    const constitutive::Mat2 gu{dux_dx[c], dux_dy[c], duy_dx[c], duy_dy[c]};
    const constitutive::Mat2 st = constitutive::stress(eos, theta[c], gu, coeffs.g[c]);
    s00[c] = st[0];
    s01[c] = st[1];
    s11[c] = st[3];
  }
  std::vector<double> d00x, d00y, d01x, d01y, d11x, d11y;
  gradient(g, s00, d00x, d00y);
  gradient(g, s01, d01x, d01y);
  gradient(g, s11, d11x, d11y);

  for (std::size_t c = 0; c < mx.size(); ++c) {
    mx[c] += tau * (-dpx[c] + d00x[c] + d01y[c]);
    my[c] += tau * (-dpy[c] + d01x[c] + d11y[c]);
  }

  // (iv) interface penalty, spread from the markers and applied with a per-cell
  // implicit relaxation factor so stiff delta/dt cannot destabilize the step
  if (penalty.markers != nullptr && penalty.coefficient > 0.0) {
    const MarkerGeometry& mk = *penalty.markers;
    std::vector<Vec2> force(mk.pos.size());
    for (std::size_t m = 0; m < mk.pos.size(); ++m) {
      const Vec2 usample{sample_bilinear(g, ux, mk.pos[m]),
                         sample_bilinear(g, uy, mk.pos[m])};
      const Vec2 mismatch = usample - mk.normal[m] * penalty.target_vn[m];
      force[m] = mismatch * (-penalty.coefficient);
    }
    const ForceField ff = spread_penalty(g, mk, force, penalty.kernel_halfwidth);
    const std::vector<double> dens = kernel_density(g, mk, penalty.kernel_halfwidth);
    const double e2 = eps_v * eps_v;
    for (std::size_t c = 0; c < mx.size(); ++c) {
      if (dens[c] == 0.0) continue;
      const double r = s.rho[c];
      const double rate = penalty.coefficient * dens[c] * r / (r * r + e2);
      const double relax = 1.0 / (1.0 + tau * rate);
      mx[c] += tau * ff.fx[c] * relax;
      my[c] += tau * ff.fy[c] * relax;
    }
  }

  // velocity pinned to zero on the rim; momentum in exact vacuum is meaningless
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t c = g.idx(i, j);
      if (g.on_rim(i, j) || s.rho[c] == 0.0) {
        mx[c] = 0.0;
        my[c] = 0.0;
      }
    }
  }
  s.mom_x = std::move(mx);
  s.mom_y = std::move(my);
}

ThermalReport thermal_step(FluidState& s, const EosParams& eos,
                           const CoefficientFields& coeffs, const std::vector<double>& ux,
                           const std::vector<double>& uy, const std::vector<double>& theta,
                           double xi, double tau) {
  const Grid& g = s.grid;
  const double h = g.h();
  ThermalReport rep;

  // advection
  std::vector<double> q = transport_step(g, s.qth, ux, uy, tau);

  // pressure work and viscous heating at start-of-step values
  std::vector<double> dux_dx, dux_dy, duy_dx, duy_dy;
  gradient(g, ux, dux_dx, dux_dy);
  gradient(g, uy, duy_dx, duy_dy);
  for (std::size_t c = 0; c < q.size(); ++c) {
    const double divu = dux_dx[c] + duy_dy[c];
    const double th2 = theta[c] * theta[c];
    const double pth = s.rho[c] * theta[c] + (eos.a * coeffs.f[c] / 3.0) * th2 * th2;
    const constitutive::Mat2 gu{dux_dx[c], dux_dy[c], duy_dx[c], duy_dy[c]};
    const double heat = constitutive::stress_contraction(eos, theta[c], gu, coeffs.g[c]);
    q[c] += tau * (-pth * divu + heat);
    if (q[c] < 0.0) {
      rep.floored_energy += -q[c] * h * h;
      q[c] = 0.0;
    }
  }

  // explicit diffusion with substepping; fluxes limited so near-vacuum cells
  // with tiny heat capacity cannot overdraw
  double max_rate = 0.0;
  std::vector<double> th(g.cells());
  for (std::size_t c = 0; c < th.size(); ++c) {
    th[c] = constitutive::recover_temperature(eos, s.rho[c], q[c], coeffs.f[c]);
    const double kap = constitutive::transport_coeffs(eos, th[c], 1.0, coeffs.h[c]).kappa;
    const double cap = std::max(s.rho[c] + 4.0 * eos.a * coeffs.f[c] * th[c] * th[c] * th[c], 1e-3);
    max_rate = std::max(max_rate, kap / (cap * h * h));
  }
  int nsub = std::max(1, static_cast<int>(std::ceil(tau * max_rate / 0.4)));
  if (nsub > 10000) throw CflError("thermal_step: diffusion substep limit exceeded");
  rep.substeps = nsub;
  const double ts = tau / nsub;
  std::vector<double> kap(g.cells());
  for (int sub = 0; sub < nsub; ++sub) {
    if (sub > 0)
      for (std::size_t c = 0; c < th.size(); ++c)
        th[c] = constitutive::recover_temperature(eos, s.rho[c], q[c], coeffs.f[c]);
    for (std::size_t c = 0; c < kap.size(); ++c)
      kap[c] = constitutive::transport_coeffs(eos, th[c], 1.0, coeffs.h[c]).kappa;
    std::vector<double> dq(g.cells(), 0.0);
    auto face = [&](std::size_t cl, std::size_t cr) {
      const double kf = 0.5 * (kap[cl] + kap[cr]);
      double flux = kf * (th[cr] - th[cl]) / h;  // energy / length / time
      const double cap_flux = 0.2 * h * std::min(q[cl], q[cr]) / ts;
      flux = std::clamp(flux, -cap_flux, cap_flux);
      dq[cl] += flux;
      dq[cr] -= flux;
    };
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i + 1 < g.n; ++i) face(g.idx(i, j), g.idx(i + 1, j));
    for (int j = 0; j + 1 < g.n; ++j)
      for (int i = 0; i < g.n; ++i) face(g.idx(i, j), g.idx(i, j + 1));
    for (std::size_t c = 0; c < q.size(); ++c) q[c] += ts * dq[c] / h;
  }

  // implicit xi theta^5 sink: solve rho t + a f t^4 + tau xi t^5 = q per cell
  const double h2 = h * h;
  if (xi > 0.0) {
    for (std::size_t c = 0; c < q.size(); ++c) {
      if (q[c] <= 0.0) continue;
      const double af = eos.a * coeffs.f[c];
      const double rho = s.rho[c];
      double lo = 0.0;
      double hi = constitutive::recover_temperature(eos, rho, q[c], coeffs.f[c]);
      double t = hi;
      for (int it = 0; it < 200; ++it) {
        const double t2 = t * t;
        const double t4 = t2 * t2;
        const double val = rho * t + af * t4 + tau * xi * t4 * t - q[c];
        if (val > 0.0)
          hi = t;
        else
          lo = t;
        const double deriv = rho + 4.0 * af * t * t2 + 5.0 * tau * xi * t4;
        double next = (deriv > 0.0) ? t - val / deriv : 0.5 * (lo + hi);
        if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-14 * std::max(1.0, t)) {
          t = next;
          break;
        }
        t = next;
      }
      const double t4 = t * t * t * t;
      const double released = tau * xi * t4 * t;
      q[c] -= released;
      if (q[c] < 0.0) q[c] = 0.0;
      rep.sink_energy += released * h2;
    }
  }

  // temperature floor where matter is present
  for (std::size_t c = 0; c < q.size(); ++c) {
    if (s.rho[c] > 0.0) {
      const double qmin = s.rho[c] * 1e-10;
      if (q[c] < qmin) {
        rep.floored_energy += (qmin - q[c]) * h2;
        q[c] = qmin;
      }
    }
  }

  s.qth = std::move(q);
  return rep;
}

double cfl_dt(const FluidState& s, const EosParams& eos, const CoefficientFields& coeffs,
              const std::vector<double>& ux, const std::vector<double>& uy,
              const std::vector<double>& theta, double c_cfl) {
  const Grid& g = s.grid;
  const double h = g.h();
  double dt = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < ux.size(); ++c) {
    if (!std::isfinite(s.rho[c]) || !std::isfinite(ux[c]) || !std::isfinite(uy[c]))
      throw NanError("cfl_dt: non-finite state");
    const double cs = constitutive::sound_speed(eos, s.rho[c], s.b[c], theta[c], coeffs.f[c]);
    const double speed = std::hypot(ux[c], uy[c]) + cs;
    if (speed > 0.0) dt = std::min(dt, h / speed);
    // Diffusive bound where matter carries the heat; near-vacuum cells are
    // governed by thermal_step's own substepping and flux limiter.
    if (s.rho[c] > 1e-3) {
      const double kap = constitutive::transport_coeffs(eos, theta[c], 1.0, coeffs.h[c]).kappa;
      if (kap > 0.0) dt = std::min(dt, s.rho[c] * h * h / (2.0 * kap));
    }
  }
  return c_cfl * dt;
}

ConservationTotals conservation_totals(const FluidState& s) {
  // Kahan sums: the acceptance drift bound sits near double roundoff.
  auto ksum = [](const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
      const double y = x - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    return sum;
  };
  const double h2 = s.grid.h() * s.grid.h();
  return {ksum(s.rho) * h2, ksum(s.b) * h2};
}

}  // namespace mhdshell::fluid
