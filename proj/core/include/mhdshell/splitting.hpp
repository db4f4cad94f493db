#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mhdshell/config.hpp"
#include "mhdshell/diagnostics.hpp"
#include "mhdshell/fluid.hpp"
#include "mhdshell/shell.hpp"

namespace mhdshell::splitting {

// Scheme parameters: the window length, the penalty/regularization weight delta
// and the master small parameter xi, with the derived extension scales coupled
// as omega = zeta = xi^2 and lambda = xi^6.
struct ParameterLadder {
  double dt = 2.5e-3;
  constitutive::EosParams eos;
  double alpha1 = 1.0;
  double alpha2 = 1.0;

  double delta() const { return eos.delta; }
  double xi() const { return eos.xi; }
  double omega() const { return eos.xi * eos.xi; }
  double zeta() const { return eos.xi * eos.xi; }
  double lambda() const {
    const double x2 = eos.xi * eos.xi;
    return x2 * x2 * x2;
  }
};

// One-window lag of the interface velocity trace. On the first window it holds
// the t = 0 values v0 n.
struct TimeShiftBuffer {
  std::vector<double> marker_vn;
};

// Running integrals carried across windows (and through checkpoints, so a
// resumed run reproduces the ledger bit-exactly).
struct Cumulatives {
  double shell_dissipation = 0.0;
  double fluid_dissipation = 0.0;
  double exterior_dissipation = 0.0;
  double sink = 0.0;
  double floored = 0.0;
  double mismatch_integral = 0.0;
};

struct CoupledState {
  fluid::FluidState fluid;
  shell::ShellState shell;
  TimeShiftBuffer buffer;
  std::size_t window = 0;
  Cumulatives cum;
};

// Diagnostics accumulated while marching one window.
struct WindowStats {
  double shell_dissipation = 0.0;   // integral alpha1 ||grad v||^2 + ||grad theta||^2
  double fluid_dissipation = 0.0;   // integral of the entropy production
  double exterior_dissipation = 0.0;
  double sink = 0.0;                // xi integral theta^5
  double floored = 0.0;
  double mismatch_integral = 0.0;   // time integral of the interface mismatch
  double sigma_min = 1.0;
  int fluid_substeps = 0;
};

// Shell substeps with the buffered penalty target, then fluid substeps with the
// fresh shell trace, then buffer rotation. Throws on CFL/NaN failures with the
// window index attached; degeneracy is signalled by the caller's check.
WindowStats march_window(CoupledState& state, const geometry::GeometryConfig& gcfg,
                         const fluid::FluidParams& fparams,
                         const shell::ShellParams& sparams, const ParameterLadder& ladder);

enum class HaltReason { completed, degeneracy };
std::string to_string(HaltReason r);

struct RunReport {
  HaltReason halt = HaltReason::completed;
  double halt_time = 0.0;
  std::size_t windows_run = 0;
  std::vector<diagnostics::LedgerRecord> ledger;
  double mismatch_integral = 0.0;
  double exterior_dissipation = 0.0;
  double sink_total = 0.0;
  double mass_drift = 0.0;      // relative
  double magnetic_drift = 0.0;  // relative
  std::string ledger_path;      // empty when not written to disk
  CoupledState final_state;
};

// March T/dt windows from synthesized (or provided) initial data, recording one
// ledger record per window. Halts cleanly on degeneracy.
RunReport run(const io::RunConfig& config, const std::string& out_dir = "",
              std::optional<CoupledState> resume_from = std::nullopt);

struct SweepEntry {
  double dt = 0.0;
  double xi = 0.0;
};

struct SweepResult {
  SweepEntry entry;
  bool ok = false;
  std::string error;
  RunReport report;
};

struct SweepReport {
  std::vector<SweepResult> results;
  // Log-log slope of the mismatch integral versus dt, over the entries that
  // share the smallest xi... fitted over all successful dt-distinct entries.
  double mismatch_slope_vs_dt = 0.0;
};

// Runs every entry on identical initial data; entries may run in parallel
// (capped by MHDSHELL_THREADS). Failed entries are marked, the sweep continues.
SweepReport ladder_sweep(const io::RunConfig& base, const std::vector<SweepEntry>& entries,
                         const std::string& out_dir = "");

std::vector<SweepEntry> parse_sweep_manifest(const std::string& path);
std::vector<SweepEntry> parse_sweep_manifest_text(const std::string& text,
                                                  const std::string& origin);

}  // namespace mhdshell::splitting
