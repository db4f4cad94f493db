#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "mhdshell/checkpoint.hpp"
#include "mhdshell/config.hpp"
#include "mhdshell/splitting.hpp"
#include "mhdshell/validate.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& from_ckpt) {
  const auto cfg = mhdshell::io::parse_config(config_path);
  std::optional<mhdshell::splitting::CoupledState> resume;
  if (!from_ckpt.empty()) resume = mhdshell::io::read_checkpoint(from_ckpt);
  const auto rep = mhdshell::splitting::run(cfg, out_dir, std::move(resume));
  std::printf("halt=%s t=%.6g windows=%zu mass_drift=%.3e magnetic_drift=%.3e\n",
              mhdshell::splitting::to_string(rep.halt).c_str(), rep.halt_time,
              rep.windows_run, rep.mass_drift, rep.magnetic_drift);
  std::printf("ledger: %s\n", rep.ledger_path.c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& manifest_path,
              const std::string& out_dir) {
  const auto cfg = mhdshell::io::parse_config(config_path);
  const auto entries = mhdshell::splitting::parse_sweep_manifest(manifest_path);
  const auto rep = mhdshell::splitting::ladder_sweep(cfg, entries, out_dir);
  bool all_ok = true;
  for (const auto& r : rep.results) {
    std::printf("dt=%-10g xi=%-8g %s mismatch=%.6e exterior_diss=%.6e sink=%.6e%s%s\n",
                r.entry.dt, r.entry.xi, r.ok ? "ok  " : "FAIL",
                r.report.mismatch_integral, r.report.exterior_dissipation,
                r.report.sink_total, r.ok ? "" : " error=", r.ok ? "" : r.error.c_str());
    all_ok = all_ok && r.ok;
  }
  std::printf("mismatch slope vs dt: %.3f\n", rep.mismatch_slope_vs_dt);
  return all_ok ? 0 : 1;
}

int cmd_validate(std::uint64_t seed) {
  const auto results = mhdshell::validate::run_all(seed);
  bool all_ok = true;
  for (const auto& r : results) {
    std::printf("[%s] %-24s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all_ok = all_ok && r.pass;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mhdshell: 2D compressible MHD coupled to a 1D thermoelastic shell"};
  app.require_subcommand(1);

  std::string config_path, out_dir, manifest_path, from_ckpt;
  std::uint64_t seed = 12345;

  auto* run = app.add_subcommand("run", "March one configuration and write the ledger");
  run->add_option("--config", config_path, "run configuration file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--from", from_ckpt, "resume from a checkpoint");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter-ladder sweep");
  sweep->add_option("--config", config_path, "base configuration file")->required();
  sweep->add_option("--manifest", manifest_path, "sweep manifest (dt=<v> xi=<v> per line)")
      ->required();
  sweep->add_option("--out", out_dir, "output directory")->required();

  auto* validate = app.add_subcommand("validate", "Run the property suite");
  validate->add_option("--seed", seed, "seed for the randomized properties");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) return cmd_run(config_path, out_dir, from_ckpt);
    if (app.got_subcommand(sweep)) return cmd_sweep(config_path, manifest_path, out_dir);
    return cmd_validate(seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
