#include <benchmark/benchmark.h>

#include "cymod/congruence.hpp"
#include "cymod/counting.hpp"
#include "cymod/kodaira.hpp"
#include "cymod/qseries.hpp"

using namespace cymod;

static void BM_CurveCount(benchmark::State& state) {
  const i64 p = state.range(0);
  const CurveZ e{1, -1, 1, -7, 13};
  for (auto _ : state) benchmark::DoNotOptimize(curve_count(e, p));
}
BENCHMARK(BM_CurveCount)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_K3Count(benchmark::State& state) {
  const auto f = preset("g4_legendre");
  const i64 p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(k3_point_count(f, p).B);
}
BENCHMARK(BM_K3Count)->Arg(97)->Arg(499);

static void BM_EtaExpansion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(form_series("h4", state.range(0)));
}
BENCHMARK(BM_EtaExpansion)->Arg(500)->Arg(2000);

static void BM_GroupAnalysis(benchmark::State& state) {
  const auto g = preset_group("gamma0_16");
  for (auto _ : state) benchmark::DoNotOptimize(analyze(g).genus);
}
BENCHMARK(BM_GroupAnalysis);

static void BM_FiberScan(benchmark::State& state) {
  const auto f = preset("g8_412");
  for (auto _ : state) benchmark::DoNotOptimize(scan(f, state.range(0)).euler_sum);
}
BENCHMARK(BM_FiberScan)->Arg(101)->Arg(1009);
BENCHMARK_MAIN();
