#include <benchmark/benchmark.h>

#include <memory>

#include "decoh/ctp_functional.hpp"
#include "decoh/overlap_view.hpp"
#include "decoh/qed_rates.hpp"

using namespace decoh;

static void BM_ClosedFormScan(benchmark::State& state) {
  const AtomModel atom = two_level_atom();
  const auto grid = linear_grid(0.0, 3.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(scan_separation(atom, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_ClosedFormScan);

static void BM_CtpQedFunctional(benchmark::State& state) {
  const KernelPair k = build_qed_kernels(two_level_atom());
  const PathPair pair = double_well_pair(0.25, static_cast<double>(state.range(0)));
  QuadratureSpec q;
  for (auto _ : state) benchmark::DoNotOptimize(eval_functionals(k.q, k.X, pair, q));
}
BENCHMARK(BM_CtpQedFunctional)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_CtpStationaryRates(benchmark::State& state) {
  const KernelPair k = build_qed_kernels(two_level_atom());
  const auto schedule = default_dt_schedule(200.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_rates(
        k.q, k.X, [](double t) { return double_well_pair(0.715, t); }, schedule));
  }
}
BENCHMARK(BM_CtpStationaryRates)->Unit(benchmark::kMillisecond);

static void BM_OverlapStateBuild(benchmark::State& state) {
  const AtomModel atom = two_level_atom();
  const double dt = static_cast<double>(state.range(0));
  const double a = 1.5;
  auto grid = std::make_shared<const ModeGrid>(ModeGrid::for_atom(atom, dt, 0.5 * a));
  for (auto _ : state) {
    benchmark::DoNotOptimize(perturb_env_state(atom, {0, 0, 0.5 * a}, dt, grid));
  }
  state.counters["nodes"] = static_cast<double>(grid->node_count());
  state.counters["lm"] = static_cast<double>(grid->lm_count());
}
BENCHMARK(BM_OverlapStateBuild)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_OverlapRate(benchmark::State& state) {
  const AtomModel atom = two_level_atom();
  auto grid = std::make_shared<const ModeGrid>(ModeGrid::for_atom(atom, 400.0, 0.75));
  const auto s1 = perturb_env_state(atom, {0, 0, 0.75}, 400.0, grid);
  const auto s2 = perturb_env_state(atom, {0, 0, -0.75}, 400.0, grid);
  for (auto _ : state) benchmark::DoNotOptimize(overlap_rate(s1, s2));
}
BENCHMARK(BM_OverlapRate);

BENCHMARK_MAIN();
