#include <benchmark/benchmark.h>

#include "biphoton/measurement.hpp"

using namespace biphoton;

namespace {

const CrystalSpec crystal{5e-3, 0.7248446216, 404e-9};
const FiberSpec fiber{500.0};

TpsaGrid make_tpsa(int n) {
  return tpsa::build_tpsa(FrequencyGrid(n, 8e13), PumpSpec{}, crystal);
}

void BM_build_tpsa(benchmark::State& state) {
  const FrequencyGrid grid(int(state.range(0)), 8e13);
  for (auto _ : state)
    benchmark::DoNotOptimize(tpsa::build_tpsa(grid, PumpSpec{}, crystal));
}
BENCHMARK(BM_build_tpsa)->Arg(256)->Arg(512)->Arg(1024);

void BM_apply_fiber(benchmark::State& state) {
  const auto f = make_tpsa(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tpsa::apply_fiber(f, fiber));
}
BENCHMARK(BM_apply_fiber)->Arg(256)->Arg(512)->Arg(1024);

void BM_tpta_exact(benchmark::State& state) {
  const auto f = make_tpsa(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tpsa::tpta_exact(f));
}
BENCHMARK(BM_tpta_exact)->Arg(256)->Arg(512)->Arg(1024);

void BM_delay_projection(benchmark::State& state) {
  const auto f = make_tpsa(int(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(measurement::delay_projection(f, fiber));
}
BENCHMARK(BM_delay_projection)->Arg(256)->Arg(512)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
