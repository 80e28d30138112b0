#include <benchmark/benchmark.h>

#include "lowlying/newforms.hpp"
#include "lowlying/shimura.hpp"

using namespace lowlying;

static void BM_EtaProduct(benchmark::State& state) {
  const std::vector<newforms::EtaFactor> f{{1, 2}, {11, 2}};
  for (auto _ : state) benchmark::DoNotOptimize(newforms::coeffs_eta_product(f, state.range(0)));
}
BENCHMARK(BM_EtaProduct)->Arg(10000)->Arg(100000);

static void BM_Theta38(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(newforms::coeffs_theta_3_8(state.range(0)));
}
BENCHMARK(BM_Theta38)->Arg(10000)->Arg(100000);

static void BM_HalfIntegralLift(benchmark::State& state) {
  const auto form = newforms::table_form("3.8.a.a");
  for (auto _ : state) benchmark::DoNotOptimize(shimura::make_lift(form, state.range(0)));
}
BENCHMARK(BM_HalfIntegralLift)->Arg(1000)->Arg(10000);
