#include <benchmark/benchmark.h>

#include "spinfp/scenarios.hpp"

namespace {

spinfp::SweepConfig phase_sweep(int steps) {
  spinfp::SweepConfig c = spinfp::default_config(spinfp::Scenario::Fig3b);
  c.theta_steps = steps;
  return c;
}

void BM_SweepSerial(benchmark::State& state) {
  const spinfp::SweepConfig c = phase_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spinfp::run_sweep_serial(c));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}

void BM_SweepParallel(benchmark::State& state) {
  const spinfp::SweepConfig c = phase_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spinfp::run_sweep(c));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}

void BM_FamilyGridSerial(benchmark::State& state) {
  const spinfp::SweepConfig c = spinfp::default_config(spinfp::Scenario::Fig4);
  for (auto _ : state) benchmark::DoNotOptimize(spinfp::run_sweep_serial(c));
}

void BM_FamilyGridParallel(benchmark::State& state) {
  const spinfp::SweepConfig c = spinfp::default_config(spinfp::Scenario::Fig4);
  for (auto _ : state) benchmark::DoNotOptimize(spinfp::run_sweep(c));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FamilyGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FamilyGridParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
