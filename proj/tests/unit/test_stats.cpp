#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lowlying/errors.hpp"
#include "lowlying/stats.hpp"

using namespace lowlying;
using namespace lowlying::stats;
using ensembles::Group;

TEST(NStd, Formula) {
  EXPECT_EQ(n_std(40000, Group::U, 3), 8);
  EXPECT_EQ(n_std(40000, Group::SO, 3), 16);
  EXPECT_EQ(n_std(40000, Group::USp, 3), 16);
  EXPECT_EQ(n_std(1e6, Group::U, 3), 12);
  EXPECT_EQ(n_std(1e6, Group::SO, 3), 24);
  // Direct evaluation with the level under the square root.
  for (double x : {1e3, 1e4, 1e5}) {
    EXPECT_EQ(n_std_base(x, 11), std::lround(std::log(std::sqrt(11.0) * x / (2 * std::numbers::pi * std::exp(1.0)))));
  }
  EXPECT_THROW(n_std_base(10, 3), std::invalid_argument);
}

TEST(NStd, MonotoneInX) {
  int prev = 0;
  for (double x = 100; x < 1e7; x *= 1.1) {
    const int n = n_std_base(x, 3);
    EXPECT_GE(n, prev);
    prev = n;
  }
}

TEST(Normalize, UnitMean) {
  const EmpiricalDistribution d(SampleKind::lowest_zero, {2, 2, 2});
  const auto n = normalize_to_unit_mean(d);
  for (double v : n.values) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(n.normalization.value(), 2.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::vector<double> v(1000), w(1000);
  for (int i = 0; i < 1000; ++i) {
    v[i] = u(rng);
    w[i] = 7.5 * v[i];
  }
  const auto a = normalize_to_unit_mean({SampleKind::lowest_zero, v});
  const auto b = normalize_to_unit_mean({SampleKind::lowest_zero, w});
  EXPECT_NEAR(a.mean(), 1.0, 1e-12);
  for (int i = 0; i < 1000; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
  EXPECT_THROW(normalize_to_unit_mean({SampleKind::lowest_zero, {-1.0, 0.5}}), std::invalid_argument);
}

TEST(Distribution, Validates) {
  EXPECT_THROW(EmpiricalDistribution(SampleKind::lowest_zero, {}), std::invalid_argument);
  EXPECT_THROW(EmpiricalDistribution(SampleKind::lowest_zero, {1.0, NAN}), std::invalid_argument);
  EXPECT_THROW(EmpiricalDistribution(SampleKind::lowest_zero, {1.0, 2.0}, {1}), std::invalid_argument);
}

TEST(Split, MedianByKey) {
  const EmpiricalDistribution d(SampleKind::lowest_zero, {4, 3, 2, 1}, {13, 12, 8, 5});
  const auto s = split_small_large(d);
  EXPECT_EQ(s.small.keys, (std::vector<std::int64_t>{5, 8}));
  EXPECT_EQ(s.large.keys, (std::vector<std::int64_t>{12, 13}));
  EXPECT_EQ(s.small_mean, 1.5);
  EXPECT_EQ(s.large_mean, 3.5);
  const EmpiricalDistribution odd(SampleKind::lowest_zero, {1, 2, 3}, {1, 2, 3});
  EXPECT_EQ(split_small_large(odd).small.size(), 2u);
  EXPECT_THROW(split_small_large({SampleKind::lowest_zero, {1.0}, {1}}), std::invalid_argument);
}

TEST(Cdf, Discrepancy) {
  const EmpiricalDistribution a(SampleKind::lowest_zero, {0.0});
  const EmpiricalDistribution b(SampleKind::lowest_zero, {1.0});
  std::vector<double> pts;
  for (int i = 0; i <= 1000; ++i) pts.push_back(i / 1000.0);
  EXPECT_NEAR(cdf_discrepancy(a, b, pts), 1.0, 2e-3);
  EXPECT_EQ(cdf_discrepancy(a, b, pts), cdf_discrepancy(b, a, pts));
  EXPECT_EQ(cdf_discrepancy(a, a, pts), 0.0);
  std::vector<double> unsorted{0.5, 0.1};
  EXPECT_THROW(cdf_discrepancy(a, b, unsorted), std::invalid_argument);
  const EmpiricalDistribution c(SampleKind::lowest_zero, {0.2, 0.4, 0.9, 1.3});
  EXPECT_EQ(cdf_discrepancy(c, c), 0.0);
  const auto dp = default_eval_points(c, b, 40);
  EXPECT_EQ(dp.size(), 40u);
  EXPECT_TRUE(std::is_sorted(dp.begin(), dp.end()));
}

TEST(Histogram, Density) {
  const std::vector<double> one{0.3};
  const auto h = density_histogram(one, 1, 0.0, 0.5);
  EXPECT_NEAR(h.density[0], 1.0 / 0.5, 1e-15);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<double> v(5000);
  for (auto& x : v) x = std::clamp(g(rng), -3.0, 3.0);
  const auto h2 = density_histogram(v, 37, -3.0, 3.0);
  double integral = 0.0;
  for (double d : h2.density) integral += d * h2.width();
  EXPECT_NEAR(integral, 1.0, 1e-12);
  EXPECT_THROW(density_histogram(v, 0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(density_histogram(v, 5, 1.0, 1.0), std::invalid_argument);
}

TEST(MeanLowest, Properties) {
  const double one = mean_lowest_eigenphase(Group::SO, 10, 1, 9);
  EXPECT_EQ(one, ensembles::sample(Group::SO, 10, 9, 0).theta_min());
  const double small = mean_lowest_eigenphase(Group::SO, 10, 300, 9);
  const double large = mean_lowest_eigenphase(Group::SO, 40, 300, 9);
  EXPECT_GT(small, large);
  EXPECT_EQ(small, mean_lowest_eigenphase(Group::SO, 10, 300, 9));
}

TEST(CutoffMode, Parse) {
  EXPECT_EQ(parse_cutoff_mode("zeros"), CutoffMode::zeros_vs_excised);
  EXPECT_EQ(parse_cutoff_mode("values_vs_charpoly"), CutoffMode::values_vs_charpoly);
  EXPECT_THROW(parse_cutoff_mode("other"), std::invalid_argument);
}

namespace {

EmpiricalDistribution synthetic_zeros(std::size_t n) {
  // Lowest phases of a mildly excised SO(8) sample stand in for zeros.
  const auto batch = ensembles::sample_excised_batch(8, 0.3, 1001, n, 1000000);
  std::vector<double> v;
  for (const auto& s : batch.samples) v.push_back(s.theta_min());
  return {SampleKind::lowest_zero, v};
}

}  // namespace

TEST(EstimateCStd, SingleCandidateAndDeterminism) {
  const auto data = synthetic_zeros(400);
  CutoffSearchContext ctx;
  ctx.weight = 2;
  ctx.n_std = 4;
  ctx.matrices = 400;
  const std::vector<double> one{1.0};
  const auto r1 = estimate_c_std(data, one, ctx);
  EXPECT_EQ(r1.argmin, 1.0);
  std::vector<double> grid;
  for (double c = 0.05; c < 30; c *= 1.5) grid.push_back(c);
  const auto a = estimate_c_std(data, grid, ctx);
  const auto b = estimate_c_std(data, grid, ctx);
  EXPECT_EQ(a.discrepancies, b.discrepancies);
  EXPECT_EQ(a.argmin, b.argmin);
  ASSERT_EQ(a.candidates.size(), grid.size());
  const double best = a.discrepancies[a.argmin_index];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (a.feasible[i]) EXPECT_GE(a.discrepancies[i], best);
  }
  // The data were excised at 0.3 exp(2) in c_std units; the search lands nearby.
  EXPECT_GT(a.argmin, 0.3 * std::exp(2.0) / 4);
  EXPECT_LT(a.argmin, 0.3 * std::exp(2.0) * 4);
}

TEST(EstimateCStd, InfeasibleCandidatesExcluded) {
  const auto data = synthetic_zeros(100);
  CutoffSearchContext ctx;
  ctx.n_std = 4;
  ctx.matrices = 100;
  ctx.max_draws = 2000;
  const std::vector<double> grid{1.0, 1e12};
  const auto r = estimate_c_std(data, grid, ctx);
  EXPECT_TRUE(r.feasible[0]);
  EXPECT_FALSE(r.feasible[1]);
  EXPECT_TRUE(std::isnan(r.discrepancies[1]));
  EXPECT_EQ(r.argmin, 1.0);
  const std::vector<double> bad{2.0, 1.0};
  EXPECT_THROW(estimate_c_std(data, bad, ctx), std::invalid_argument);
  const std::vector<double> hopeless{1e12};
  EXPECT_THROW(estimate_c_std(data, hopeless, ctx), ConvergenceError);
}

TEST(EstimateCStd, ValuesMode) {
  std::vector<double> values;
  for (std::size_t i = 0; i < 300; ++i) values.push_back(ensembles::sample(Group::SO, 8, 555, i).lambda_at_one);
  const EmpiricalDistribution data(SampleKind::central_value, values);
  CutoffSearchContext ctx;
  ctx.n_std = 4;
  ctx.matrices = 300;
  std::vector<double> grid;
  for (double c = 0.01; c < 5; c *= 2) grid.push_back(c);
  const auto r = estimate_c_std(data, grid, ctx, CutoffMode::values_vs_charpoly);
  EXPECT_EQ(r.mode, CutoffMode::values_vs_charpoly);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (r.feasible[i]) EXPECT_TRUE(std::isfinite(r.discrepancies[i]));
  }
}
