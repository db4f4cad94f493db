#include <benchmark/benchmark.h>

#include "mhdshell/config.hpp"
#include "mhdshell/initial_data.hpp"
#include "mhdshell/splitting.hpp"

using namespace mhdshell;

namespace {

io::RunConfig bench_config(int nx) {
  io::RunConfig cfg = io::parse_config_text(io::default_config_text(), "default");
  cfg.fluid.nx = nx;
  cfg.run.T = cfg.run.dt;  // one window
  return cfg;
}

void BM_TransportStep(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  auto st = io::synthesize_initial_data(cfg);
  std::vector<double> ux, uy;
  fluid::velocity(st.fluid, cfg.fluid.eps_vacuum, ux, uy);
  for (std::size_t c = 0; c < ux.size(); ++c) ux[c] = 0.1;
  const double tau = 0.2 * st.fluid.grid.h();
  for (auto _ : state) {
    auto out = fluid::transport_step(st.fluid.grid, st.fluid.rho, ux, uy, tau);
    benchmark::DoNotOptimize(out);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransportStep)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_ShellStep(benchmark::State& state) {
  auto ss = shell::ShellState::zeros(static_cast<std::size_t>(state.range(0)));
  ss.w[3] = 0.01;
  const auto forcing = shell::ShellForcing::zeros(ss.size());
  for (auto _ : state) {
    ss = shell::shell_step(ss, forcing, 1e-4, 1e-3, 0.01, 1.0, 1.0);
    benchmark::DoNotOptimize(ss);
  }
}
BENCHMARK(BM_ShellStep)->RangeMultiplier(2)->Range(64, 1024);

void BM_CoefficientFields(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  const geometry::Grid grid{cfg.fluid.nx, cfg.geometry.box_halfwidth};
  const TorusField w(std::vector<double>(256, 0.05));
  for (auto _ : state) {
    auto f = geometry::coefficient_fields(cfg.geometry, grid, w, 0.01, 0.01, 1e-6,
                                          3.0 * grid.h());
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_CoefficientFields)->RangeMultiplier(2)->Range(32, 256);

void BM_MarchWindow(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<int>(state.range(0)));
  splitting::ParameterLadder ladder;
  ladder.dt = cfg.run.dt;
  ladder.eos = cfg.eos;
  for (auto _ : state) {
    auto st = io::synthesize_initial_data(cfg);
    auto stats = splitting::march_window(st, cfg.geometry, cfg.fluid, cfg.shell, ladder);
    benchmark::DoNotOptimize(stats);
  }
}
BENCHMARK(BM_MarchWindow)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
