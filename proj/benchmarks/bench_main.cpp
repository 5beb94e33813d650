#include <benchmark/benchmark.h>

#include <cmath>

#include "mhd25/diagnostics.hpp"
#include "mhd25/experiment.hpp"
#include "mhd25/integrator.hpp"
#include "mhd25/littlewood_paley.hpp"
#include "mhd25/rhs.hpp"

namespace {

using namespace mhd25;

PerturbationState bench_state(int n) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.box_length = 2.0 * 3.14159265358979323846 * n / 64.0;
  cfg.amplitude = 1e-3;
  cfg.cutoff = 4.0;
  cfg.seed = 1;
  return generate_initial_data(cfg, make_grid(cfg.n, cfg.box_length));
}

void BM_transform_roundtrip(benchmark::State& state) {
  const int n = int(state.range(0));
  auto grid = make_grid(n, 2.0 * 3.14159265358979323846);
  std::vector<double> v(grid->real_size(), 0.0);
  v[1] = 1.0;
  std::vector<std::complex<double>> c(grid->spec_size());
  for (auto _ : state) {
    grid->forward(v.data(), c.data());
    grid->inverse(c.data(), v.data());
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * grid->real_size());
}
BENCHMARK(BM_transform_roundtrip)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_rhs_full(benchmark::State& state) {
  const PerturbationState s = bench_state(int(state.range(0)));
  const PhysicalParams params;
  for (auto _ : state) {
    const Tendency t = rhs_full(s, params);
    benchmark::DoNotOptimize(t.da.coeffs().data());
  }
}
BENCHMARK(BM_rhs_full)->Arg(64)->Arg(128)->Arg(256);

void BM_step(benchmark::State& state) {
  PerturbationState s = bench_state(int(state.range(0)));
  const PhysicalParams params;
  StepControl ctl;
  ctl.t_end = 1e9;
  const double dt = 0.5 * compute_dt(s, params, ctl);
  for (auto _ : state) {
    s = step(s, dt, params, ctl);
    benchmark::DoNotOptimize(s.a.coeffs().data());
  }
}
BENCHMARK(BM_step)->Arg(64)->Arg(128)->Arg(256);

void BM_besov_panel(benchmark::State& state) {
  const PerturbationState s = bench_state(int(state.range(0)));
  const LittlewoodPaley lp(s.grid_ptr(), build_cutoffs(), 0);
  const PhysicalParams params;
  for (auto _ : state) {
    const DiagnosticsRecord rec = build_record(s, params, lp, 1.0);
    benchmark::DoNotOptimize(rec.lyapunov);
  }
}
BENCHMARK(BM_besov_panel)->Arg(64)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
