#include <benchmark/benchmark.h>

#include <memory>

#include "lowlying/hardy_z.hpp"
#include "lowlying/lfunc.hpp"

using namespace lowlying;

namespace {

struct Setup {
  newforms::Newform form = newforms::table_form("11.2.a.a");
  lfunc::CoefficientTable lambda;
  Setup() {
    lambda = std::make_shared<const std::vector<cdouble>>(
        newforms::normalized_coefficients(form, lfunc::coefficients_needed(form, 10000)));
    form.epsilon = lfunc::calibrate_epsilon(form, lambda);
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

}  // namespace

static void BM_CentralValue(benchmark::State& state) {
  const auto& s = setup();
  const auto l = lfunc::make_twist(s.form, arith::FundamentalDiscriminant(state.range(0)), s.lambda);
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::central_value(l));
}
BENCHMARK(BM_CentralValue)->Arg(5)->Arg(1093)->Arg(9973);

static void BM_HardyZBuild(benchmark::State& state) {
  const auto& s = setup();
  const auto l = lfunc::make_twist(s.form, arith::FundamentalDiscriminant(state.range(0)), s.lambda);
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::HardyZ(l));
}
BENCHMARK(BM_HardyZBuild)->Arg(5)->Arg(1093)->Arg(9973);

static void BM_LowestZero(benchmark::State& state) {
  const auto& s = setup();
  const auto l = lfunc::make_twist(s.form, arith::FundamentalDiscriminant(state.range(0)), s.lambda);
  const lfunc::HardyZ z(l);
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::lowest_zeros(z, 1, 12.0));
}
BENCHMARK(BM_LowestZero)->Arg(5)->Arg(1093)->Arg(9973);
