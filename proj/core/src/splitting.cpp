#include "mhdshell/splitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "mhdshell/checkpoint.hpp"
#include "mhdshell/errors.hpp"
#include "mhdshell/initial_data.hpp"

namespace mhdshell::splitting {

std::string to_string(HaltReason r) {
  return r == HaltReason::completed ? "completed" : "degeneracy";
}

namespace {

std::vector<double> resample_to(const TorusField& f, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j)
    out[j] = f(static_cast<double>(j) / static_cast<double>(count));
  return out;
}

}  // namespace

WindowStats march_window(CoupledState& st, const geometry::GeometryConfig& gcfg,
                         const fluid::FluidParams& fparams, const shell::ShellParams& sparams,
                         const ParameterLadder& ladder) {
  WindowStats stats;
  const double dt = ladder.dt;
  const auto& eos = ladder.eos;

  // --- structure substeps, penalty target from the one-window-lagged buffer
  const std::size_t ns = st.shell.size();
  shell::ShellForcing forcing = shell::ShellForcing::zeros(ns);
  {
    const TorusField vn(st.buffer.marker_vn);
    forcing.v_target = resample_to(vn, ns);
  }
  const double tau_s = dt / sparams.substeps;
  for (int k = 0; k < sparams.substeps; ++k) {
    st.shell = shell::shell_step(st.shell, forcing, tau_s, dt, eos.delta, ladder.alpha1,
                                 ladder.alpha2);
    stats.shell_dissipation +=
        tau_s * (ladder.alpha1 * shell::norm2_grad(st.shell.v) +
                 shell::norm2_grad(st.shell.theta));
  }

  // --- geometry of the freshly moved interface
  const TorusField w_new(st.shell.w);
  const TorusField v_new(st.shell.v);
  const geometry::InterfaceMarkers ref_markers = geometry::make_markers(gcfg, fparams.markers);
  const fluid::MarkerGeometry mk = fluid::deform_markers(gcfg, ref_markers, w_new);
  stats.sigma_min = mk.sigma_min;
  const double band = 3.0 * st.fluid.grid.h();
  const geometry::CoefficientFields coeffs = geometry::coefficient_fields(
      gcfg, st.fluid.grid, w_new, ladder.omega(), ladder.zeta(), ladder.lambda(), band);
  const std::vector<char> mask = diagnostics::inside_mask(st.fluid.grid, gcfg, w_new);

  fluid::PenaltyCoupling pen;
  pen.markers = &mk;
  pen.coefficient = eos.delta / dt;
  pen.kernel_halfwidth = fparams.kernel_halfwidth;
  pen.target_vn.resize(mk.pos.size());
  for (std::size_t m = 0; m < mk.pos.size(); ++m) pen.target_vn[m] = v_new(ref_markers.y[m]);

  // --- fluid substeps across the window
  const double t_end = st.fluid.t + dt;
  std::vector<double> ux, uy;
  while (st.fluid.t < t_end - 1e-13 * dt) {
    fluid::velocity(st.fluid, fparams.eps_vacuum, ux, uy);
    const std::vector<double> theta =
        fluid::recover_temperature_field(st.fluid, eos, coeffs);
    double tau = fluid::cfl_dt(st.fluid, eos, coeffs, ux, uy, theta, fparams.cfl);
    if (!(tau > 0.0)) throw CflError("fluid substep collapsed to zero");
    tau = std::min(tau, t_end - st.fluid.t);

    // diagnostics sampled at substep start
    const double mis = diagnostics::interface_mismatch(st.fluid.grid, ux, uy, mk, pen.target_vn);
    stats.mismatch_integral += tau * mis;
    const std::vector<double> prod =
        diagnostics::entropy_production_density(st.fluid, eos, coeffs, ux, uy, theta);
    const auto split = diagnostics::entropy_production_split(st.fluid, prod, mask);
    stats.fluid_dissipation += tau * (split.interior + split.exterior);
    stats.exterior_dissipation += tau * split.exterior;

    std::vector<double> rho_new = fluid::transport_step(st.fluid.grid, st.fluid.rho, ux, uy, tau);
    std::vector<double> b_new = fluid::transport_step(st.fluid.grid, st.fluid.b, ux, uy, tau);
    fluid::momentum_step(st.fluid, eos, coeffs, pen, ux, uy, theta, fparams.eps_vacuum, tau);
    const fluid::ThermalReport trep =
        fluid::thermal_step(st.fluid, eos, coeffs, ux, uy, theta, eos.xi, tau);
    stats.sink += trep.sink_energy;
    stats.floored += trep.floored_energy;
    st.fluid.rho = std::move(rho_new);
    st.fluid.b = std::move(b_new);
    st.fluid.t += tau;
    ++stats.fluid_substeps;
    st.fluid.check_finite();
  }
  st.fluid.t = t_end;  // guard against drift in repeated additions

  // --- rotate the time-shift buffer with the end-of-window interface trace
  fluid::velocity(st.fluid, fparams.eps_vacuum, ux, uy);
  for (std::size_t m = 0; m < mk.pos.size(); ++m) {
    const Vec2 u{fluid::sample_bilinear(st.fluid.grid, ux, mk.pos[m]),
                 fluid::sample_bilinear(st.fluid.grid, uy, mk.pos[m])};
    st.buffer.marker_vn[m] = u.dot(mk.normal[m]);
  }
  st.window += 1;
  return stats;
}

namespace {

diagnostics::LedgerRecord make_record(const CoupledState& st, const io::RunConfig& cfg,
                                      const ParameterLadder& ladder,
                                      const diagnostics::MonitorExponents& exps,
                                      double sigma_min) {
  diagnostics::LedgerRecord r = diagnostics::total_energy(
      st.fluid, st.shell, ladder.eos, ladder.alpha1, ladder.alpha2, cfg.fluid.eps_vacuum, exps);
  r.shell_dissipation_cum = st.cum.shell_dissipation;
  r.fluid_dissipation_cum = st.cum.fluid_dissipation;
  r.sink_cum = st.cum.sink;
  r.budget = r.total + r.shell_dissipation_cum + r.sink_cum;

  const TorusField w(st.shell.w);
  const TorusField v(st.shell.v);
  const geometry::InterfaceMarkers ref = geometry::make_markers(cfg.geometry, cfg.fluid.markers);
  const fluid::MarkerGeometry mk = fluid::deform_markers(cfg.geometry, ref, w);
  std::vector<double> targets(mk.pos.size());
  for (std::size_t m = 0; m < mk.pos.size(); ++m) targets[m] = v(ref.y[m]);
  r.interface_mismatch =
      diagnostics::interface_mismatch(st.fluid, mk, targets, cfg.fluid.eps_vacuum);
  const auto deg = diagnostics::degeneracy_check(st.shell, cfg.geometry, sigma_min);
  r.margin_lo = deg.margin_lo;
  r.margin_hi = deg.margin_hi;
  r.sigma_min = deg.sigma_min;
  r.leak_fraction = diagnostics::leakage_fraction(st.fluid, cfg.geometry, w,
                                                  3.0 * st.fluid.grid.h());
  return r;
}

}  // namespace

RunReport run(const io::RunConfig& config, const std::string& out_dir,
              std::optional<CoupledState> resume_from) {
  config.validate();
  ParameterLadder ladder;
  ladder.dt = config.run.dt;
  ladder.eos = config.eos;
  ladder.alpha1 = config.shell.alpha1;
  ladder.alpha2 = config.shell.alpha2;

  CoupledState st = resume_from ? std::move(*resume_from)
                                : io::synthesize_initial_data(config);
  const auto exps = diagnostics::MonitorExponents::defaults(config.eos.gamma);
  const std::size_t total_windows =
      static_cast<std::size_t>(std::llround(config.run.T / config.run.dt));

  RunReport rep;
  {
    const TorusField w0(st.shell.w);
    const auto ref = geometry::make_markers(config.geometry, config.fluid.markers);
    const auto mk0 = fluid::deform_markers(config.geometry, ref, w0);
    rep.ledger.push_back(make_record(st, config, ladder, exps, mk0.sigma_min));
  }

  while (st.window < total_windows) {
    const std::size_t n = st.window;
    // Pre-window degeneracy check: halt cleanly instead of stepping a broken geometry.
    {
      const auto& last = rep.ledger.back();
      if (last.margin_lo <= 0.0 || last.margin_hi <= 0.0 || last.sigma_min <= 0.0) {
        rep.halt = HaltReason::degeneracy;
        rep.halt_time = st.fluid.t;
        break;
      }
    }
    WindowStats stats;
    try {
      stats = march_window(st, config.geometry, config.fluid, config.shell, ladder);
    } catch (const DegeneracyError&) {
      rep.halt = HaltReason::degeneracy;
      rep.halt_time = st.fluid.t;
      break;
    } catch (const CflError& e) {
      throw CflError("window " + std::to_string(n) + ": " + e.what());
    } catch (const NanError& e) {
      throw NanError("window " + std::to_string(n) + ": " + e.what());
    }
    st.cum.shell_dissipation += stats.shell_dissipation;
    st.cum.fluid_dissipation += stats.fluid_dissipation;
    st.cum.exterior_dissipation += stats.exterior_dissipation;
    st.cum.sink += stats.sink;
    st.cum.floored += stats.floored;
    st.cum.mismatch_integral += stats.mismatch_integral;
    rep.ledger.push_back(make_record(st, config, ladder, exps, stats.sigma_min));
    // Post-window degeneracy: margins at or below zero end the run.
    const auto& rec = rep.ledger.back();
    if (rec.margin_lo <= 0.0 || rec.margin_hi <= 0.0 || rec.sigma_min <= 0.0) {
      rep.halt = HaltReason::degeneracy;
      rep.halt_time = st.fluid.t;
      break;
    }
  }
  rep.windows_run = st.window;
  if (rep.halt == HaltReason::completed) rep.halt_time = st.fluid.t;
  rep.mismatch_integral = st.cum.mismatch_integral;
  rep.exterior_dissipation = st.cum.exterior_dissipation;
  rep.sink_total = st.cum.sink;
  if (rep.ledger.size() >= 2 && rep.ledger.front().mass > 0.0) {
    rep.mass_drift =
        std::abs(rep.ledger.back().mass - rep.ledger.front().mass) / rep.ledger.front().mass;
  }
  if (rep.ledger.size() >= 2 && rep.ledger.front().magnetic_total > 0.0) {
    rep.magnetic_drift = std::abs(rep.ledger.back().magnetic_total -
                                  rep.ledger.front().magnetic_total) /
                         rep.ledger.front().magnetic_total;
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string ledger_path = out_dir + "/ledger.csv";
    std::ofstream lf(ledger_path, std::ios::trunc);
    diagnostics::write_ledger_header(lf);
    for (const auto& r : rep.ledger) diagnostics::write_ledger_record(lf, r);
    rep.ledger_path = ledger_path;
    std::ofstream hf(out_dir + "/config_hash.txt", std::ios::trunc);
    hf << std::hex << config.hash() << "\n";
    io::write_checkpoint(out_dir + "/final.ckpt", st, ladder);
    std::ofstream sf(out_dir + "/report.txt", std::ios::trunc);
    sf << "halt=" << to_string(rep.halt) << "\n";
    sf << "halt_time=" << rep.halt_time << "\n";
    sf << "windows=" << rep.windows_run << "\n";
    sf << "mismatch_integral=" << rep.mismatch_integral << "\n";
    sf << "exterior_dissipation=" << rep.exterior_dissipation << "\n";
    sf << "sink_total=" << rep.sink_total << "\n";
    sf << "mass_drift=" << rep.mass_drift << "\n";
    sf << "magnetic_drift=" << rep.magnetic_drift << "\n";
  }
  rep.final_state = std::move(st);
  return rep;
}

std::vector<SweepEntry> parse_sweep_manifest_text(const std::string& text,
                                                  const std::string& origin) {
  std::vector<SweepEntry> entries;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    std::istringstream ls(line);
    std::string tok;
    SweepEntry e;
    bool have_dt = false, have_xi = false;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected dt=<v> xi=<v>");
      const std::string key = tok.substr(0, eq);
      const double val = std::stod(tok.substr(eq + 1));
      if (key == "dt") {
        e.dt = val;
        have_dt = true;
      } else if (key == "xi") {
        e.xi = val;
        have_xi = true;
      } else {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown sweep key '" +
                          key + "'");
      }
    }
    if (!have_dt && !have_xi) continue;  // blank or comment line
    if (!have_dt || !have_xi)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": sweep entries need both dt= and xi=");
    entries.push_back(e);
  }
  return entries;
}

std::vector<SweepEntry> parse_sweep_manifest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open sweep manifest '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_sweep_manifest_text(ss.str(), path);
}

namespace {

unsigned worker_cap() {
  unsigned cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("MHDSHELL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
  }
  return cap;
}

}  // namespace

SweepReport ladder_sweep(const io::RunConfig& base, const std::vector<SweepEntry>& entries,
                         const std::string& out_dir) {
  SweepReport rep;
  rep.results.resize(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) rep.results[i].entry = entries[i];

  const unsigned cap = std::min<std::size_t>(worker_cap(), std::max<std::size_t>(entries.size(), 1));
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      io::RunConfig cfg = base;
      cfg.run.dt = entries[i].dt;
      cfg.eos.xi = entries[i].xi;
      std::string entry_dir;
      if (!out_dir.empty())
        entry_dir = out_dir + "/entry_" + std::to_string(i);
      try {
        rep.results[i].report = run(cfg, entry_dir);
        rep.results[i].ok = true;
      } catch (const std::exception& e) {
        rep.results[i].ok = false;
        rep.results[i].error = e.what();
      }
    }
  };
  for (unsigned t = 0; t < cap; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  // Log-log least-squares slope of the mismatch integral versus dt.
  std::vector<std::pair<double, double>> pts;
  for (const auto& res : rep.results)
    if (res.ok && res.report.mismatch_integral > 0.0)
      pts.emplace_back(std::log(res.entry.dt), std::log(res.report.mismatch_integral));
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    rep.mismatch_slope_vs_dt = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir + "/sweep.csv", std::ios::trunc);
    f << "dt,xi,ok,windows,halt,mismatch_integral,exterior_dissipation,sink_total,"
         "mass_drift,magnetic_drift,error\n";
    for (const auto& r : rep.results) {
      f << r.entry.dt << "," << r.entry.xi << "," << (r.ok ? 1 : 0) << ","
        << r.report.windows_run << "," << to_string(r.report.halt) << ","
        << r.report.mismatch_integral << "," << r.report.exterior_dissipation << ","
        << r.report.sink_total << "," << r.report.mass_drift << ","
        << r.report.magnetic_drift << "," << (r.ok ? "" : r.error) << "\n";
    }
    f << "# mismatch_slope_vs_dt=" << rep.mismatch_slope_vs_dt << "\n";
  }
  return rep;
}

}  // namespace mhdshell::splitting
