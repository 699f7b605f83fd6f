#include <benchmark/benchmark.h>

#include "period_atlas/certify/proof_polys.hpp"
#include "period_atlas/exactalg/algorithms.hpp"

using namespace period_atlas;
using namespace period_atlas::exactalg;

namespace {

void BM_ResultantD13(benchmark::State& state) {
  const MPoly q1 = certify::d13_Q1();
  const MPoly q2 = certify::d13_Q2();
  for (auto _ : state) benchmark::DoNotOptimize(resultant(q1, q2, Var::W));
}
BENCHMARK(BM_ResultantD13)->Unit(benchmark::kMillisecond);

void BM_ResultantP2P3AtRationalD(benchmark::State& state) {
  const Rational d = make_rational(-1, 4);
  const MPoly p2 = certify::build_P2().substitute(Var::D, d);
  const MPoly p3 = certify::build_P3().substitute(Var::D, d);
  for (auto _ : state) benchmark::DoNotOptimize(resultant(p2, p3, Var::W));
}
BENCHMARK(BM_ResultantP2P3AtRationalD)->Unit(benchmark::kMillisecond);

void BM_SturmCountR(benchmark::State& state) {
  const MPoly r = certify::d13_R();
  const IntervalQ iv(make_rational(0), make_rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(sturm_count(r, iv));
}
BENCHMARK(BM_SturmCountR)->Unit(benchmark::kMicrosecond);

void BM_SturmCountProduct(benchmark::State& state) {
  const MPoly u = MPoly::variable(Var::U);
  MPoly p(1);
  for (long i = 1; i <= state.range(0); ++i) p *= u - make_rational(i, state.range(0) + 1);
  const IntervalQ iv(make_rational(0), make_rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(sturm_count(p, iv));
}
BENCHMARK(BM_SturmCountProduct)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_IsolateK0(benchmark::State& state) {
  const MPoly k0 = certify::K0();
  const IntervalQ iv(make_rational(-1, 2), make_rational(0));
  const Rational tol = make_rational(1, 1 << 30);
  for (auto _ : state) benchmark::DoNotOptimize(isolate_roots(k0, iv, tol));
}
BENCHMARK(BM_IsolateK0)->Unit(benchmark::kMicrosecond);

}  // namespace
