#include <benchmark/benchmark.h>

#include "aggremin/flow.hpp"
#include "aggremin/special_functions.hpp"
#include "aggremin/verify.hpp"

using namespace aggremin;

static void BM_Hyp2F1(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    z = z < 0.99 ? z + 0.01 : 0.0;
    benchmark::DoNotOptimize(special::hyp2f1(-1.25, 0.75, 2.5, z));
  }
}
BENCHMARK(BM_Hyp2F1);

static void BM_Hyp3F2AtOne(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(special::hyp3f2({1.0, 1.0, 0.5}, {2.0, 2.5}, 1.0));
}
BENCHMARK(BM_Hyp3F2AtOne);

static void BM_EulerLagrange(benchmark::State& state) {
  const auto p = KernelParams::power(3, 3.0, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_euler_lagrange(p, 25.0, int(state.range(0))));
}
BENCHMARK(BM_EulerLagrange)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_FlowStep(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto p = KernelParams::power(2, 2.0, -1.0);
  auto sys = flow::make_system(p, flow::uniform_ball(n, 2, 2.0, 3), 3);
  sys.mode = state.range(1) ? flow::Accumulation::Deterministic : flow::Accumulation::Fast;
  for (auto _ : state) flow::step(sys);
}
BENCHMARK(BM_FlowStep)->ArgsProduct({{128, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
