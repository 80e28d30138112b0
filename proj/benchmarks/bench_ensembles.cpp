#include <benchmark/benchmark.h>

#include "lowlying/ensembles.hpp"

using namespace lowlying::ensembles;

static void BM_Sample(benchmark::State& state) {
  const auto group = static_cast<Group>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  std::uint64_t draw = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(group, n, 1, draw++));
}
BENCHMARK(BM_Sample)
    ->ArgNames({"group", "n"})
    ->ArgsProduct({{static_cast<int>(Group::U), static_cast<int>(Group::SO), static_cast<int>(Group::USp)},
                   {16, 50}});

static void BM_ExcisedBatch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_excised_batch(16, state.range(0) / 100.0, 1, 500, 10000000));
}
BENCHMARK(BM_ExcisedBatch)->Arg(0)->Arg(3)->Arg(30);
