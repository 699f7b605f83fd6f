#include <benchmark/benchmark.h>

#include "period_atlas/dynsys/period.hpp"
#include "period_atlas/dynsys/potential.hpp"

using namespace period_atlas::dynsys;

namespace {

const double kLevels[] = {0.01, 1.0, 100.0, 1e6};

void BM_PeriodQuadrature(benchmark::State& state) {
  const double h = kLevels[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(period_quadrature(h, -0.25).value);
  state.SetLabel("h=" + std::to_string(h));
}
BENCHMARK(BM_PeriodQuadrature)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_AbelianTriple(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(abelian_triple(0.5, -0.3).A);
}
BENCHMARK(BM_AbelianTriple)->Unit(benchmark::kMicrosecond);

void BM_PeriodReturnMap(benchmark::State& state) {
  const double h = kLevels[state.range(0)];
  const LoudParams p = LoudParams::distinguished(-0.25);
  const PlanarState s(Chart::Loud, upper_turning_point(h, -0.25), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(period_returnmap(p, s).period);
  state.SetLabel("h=" + std::to_string(h));
}
BENCHMARK(BM_PeriodReturnMap)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_ZkReturnMap(benchmark::State& state) {
  const ZkParams z{2, 3, {1.0, 0.0}};
  const PlanarState s(Chart::Polar, 0.8, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(period_returnmap(z, s).period);
}
BENCHMARK(BM_ZkReturnMap)->Unit(benchmark::kMicrosecond);

void BM_PiSigmaGrid(benchmark::State& state) {
  for (auto _ : state)
    for (int i = 1; i <= 512; ++i) benchmark::DoNotOptimize(pi_sigma(i / 513.0, -0.25));
}
BENCHMARK(BM_PiSigmaGrid)->Unit(benchmark::kMillisecond);

}  // namespace
