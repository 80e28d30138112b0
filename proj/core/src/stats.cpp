#include "lowlying/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "lowlying/errors.hpp"

namespace lowlying::stats {

std::string_view to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::lowest_zero:
      return "lowest_zero";
    case SampleKind::lowest_phase:
      return "lowest_phase";
    case SampleKind::central_value:
      return "central_value";
    case SampleKind::lambda_at_one:
      return "lambda_at_one";
  }
  return "?";
}

EmpiricalDistribution::EmpiricalDistribution(SampleKind k, std::vector<double> v, std::vector<std::int64_t> keys_)
    : kind(k), values(std::move(v)), keys(std::move(keys_)) {
  if (values.empty()) throw std::invalid_argument("EmpiricalDistribution: no samples");
  for (const double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("EmpiricalDistribution: non-finite sample");
  }
  if (keys.empty()) {
    keys.resize(values.size());
    std::iota(keys.begin(), keys.end(), std::int64_t{0});
  }
  if (keys.size() != values.size()) throw std::invalid_argument("EmpiricalDistribution: keys/values size mismatch");
}

double EmpiricalDistribution::mean() const {
  if (values.empty()) throw std::invalid_argument("mean of an empty distribution");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

int n_std_base(double x, std::int64_t level) {
  if (level < 1) throw std::invalid_argument("n_std: level must be positive");
  const double v = std::log(std::sqrt(static_cast<double>(level)) * x / (2.0 * std::numbers::pi * std::numbers::e));
  if (!(v >= 1.0)) throw std::invalid_argument("n_std: X too small (log below 1)");
  return static_cast<int>(std::lround(v));
}

int n_std(double x, ensembles::Group group, std::int64_t level) {
  const int base = n_std_base(x, level);
  return group == ensembles::Group::U ? base : 2 * base;
}

EmpiricalDistribution normalize_to_unit_mean(const EmpiricalDistribution& dist) {
  const double m = dist.mean();
  if (!(m > 0.0)) throw std::invalid_argument("normalize_to_unit_mean: mean must be positive");
  EmpiricalDistribution out = dist;
  for (double& v : out.values) v /= m;
  out.normalization = m;
  return out;
}

Split split_small_large(const EmpiricalDistribution& dist) {
  if (dist.size() < 2) throw std::invalid_argument("split_small_large: need at least 2 samples");
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return dist.keys[i] < dist.keys[j]; });
  const std::size_t half = (dist.size() + 1) / 2;
  Split s;
  s.small.kind = s.large.kind = dist.kind;
  s.small.normalization = s.large.normalization = dist.normalization;
  for (std::size_t r = 0; r < order.size(); ++r) {
    EmpiricalDistribution& target = r < half ? s.small : s.large;
    target.values.push_back(dist.values[order[r]]);
    target.keys.push_back(dist.keys[order[r]]);
  }
  s.small_mean = s.small.mean();
  s.large_mean = s.large.mean();
  return s;
}

namespace {

double quantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, v.size() - 1);
  return v[i] + (pos - static_cast<double>(i)) * (v[j] - v[i]);
}

double ecdf(const std::vector<double>& sorted, double x) {
  return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
         static_cast<double>(sorted.size());
}

}  // namespace

std::vector<double> default_eval_points(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                                        std::size_t count) {
  if (a.values.empty() || b.values.empty()) throw std::invalid_argument("default_eval_points: empty sample");
  if (count < 2) throw std::invalid_argument("default_eval_points: need at least 2 points");
  std::vector<double> pooled = a.values;
  pooled.insert(pooled.end(), b.values.begin(), b.values.end());
  const double lo = quantile(pooled, 0.01);
  double hi = quantile(pooled, 0.99);
  if (hi <= lo) hi = lo + 1.0;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return pts;
}

double cdf_discrepancy(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                       std::span<const double> eval_points) {
  if (a.values.empty() || b.values.empty()) throw std::invalid_argument("cdf_discrepancy: empty sample");
  if (!std::is_sorted(eval_points.begin(), eval_points.end())) {
    throw std::invalid_argument("cdf_discrepancy: eval_points must be ascending");
  }
  std::vector<double> sa = a.values;
  std::vector<double> sb = b.values;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < eval_points.size(); ++i) {
    const double mid = 0.5 * (eval_points[i] + eval_points[i + 1]);
    total += std::abs(ecdf(sa, mid) - ecdf(sb, mid)) * (eval_points[i + 1] - eval_points[i]);
  }
  return total;
}

double cdf_discrepancy(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const auto pts = default_eval_points(a, b);
  return cdf_discrepancy(a, b, pts);
}

Histogram density_histogram(std::span<const double> values, std::size_t n_bins, double lo, double hi) {
  if (n_bins < 1) throw std::invalid_argument("density_histogram: n_bins must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("density_histogram: empty range");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.density.assign(n_bins, 0.0);
  const double w = h.width();
  for (const double v : values) {
    if (v < lo || v > hi) continue;
    auto bin = static_cast<std::size_t>((v - lo) / w);
    if (bin >= n_bins) bin = n_bins - 1;
    h.density[bin] += 1.0;
    ++h.counted;
  }
  if (h.counted > 0) {
    for (double& d : h.density) d /= static_cast<double>(h.counted) * w;
  }
  return h;
}

double mean_lowest_eigenphase(ensembles::Group group, int n, std::size_t n_samples, std::uint64_t seed,
                              ensembles::LowestPhase mode) {
  if (n_samples < 1) throw std::invalid_argument("mean_lowest_eigenphase: n_samples must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) sum += ensembles::sample(group, n, seed, i).theta_min(mode);
  return sum / static_cast<double>(n_samples);
}

std::string_view to_string(CutoffMode mode) {
  return mode == CutoffMode::zeros_vs_excised ? "zeros_vs_excised" : "values_vs_charpoly";
}

CutoffMode parse_cutoff_mode(std::string_view name) {
  if (name == "zeros_vs_excised" || name == "zeros") return CutoffMode::zeros_vs_excised;
  if (name == "values_vs_charpoly" || name == "values") return CutoffMode::values_vs_charpoly;
  throw std::invalid_argument("unknown cutoff mode '" + std::string(name) + "'");
}

namespace {

struct Draw {
  double theta_min;
  double lambda;
};

// SO(n) draws 0, 1, 2, ... of one seed, generated on demand.
class DrawPool {
 public:
  DrawPool(int n, std::uint64_t seed, int jobs) : n_(n), seed_(seed), jobs_(std::max(1, jobs)) {}

  const Draw& at(std::size_t i) {
    while (i >= draws_.size()) grow();
    return draws_[i];
  }

 private:
  void grow() {
    const std::size_t first = draws_.size();
    const std::size_t size = std::max<std::size_t>(1024, first / 2);
    draws_.resize(first + size);
    auto work = [&](int worker) {
      for (std::size_t i = static_cast<std::size_t>(worker); i < size; i += static_cast<std::size_t>(jobs_)) {
        const auto s = ensembles::sample(ensembles::Group::SO, n_, seed_, first + i);
        draws_[first + i] = {s.theta_min(), s.lambda_at_one};
      }
    };
    if (jobs_ == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < jobs_; ++w) pool.emplace_back(work, w);
    }
  }

  int n_;
  std::uint64_t seed_;
  int jobs_;
  std::vector<Draw> draws_;
};

}  // namespace

CutoffSearchResult estimate_c_std(const EmpiricalDistribution& data, std::span<const double> grid,
                                  const CutoffSearchContext& ctx, CutoffMode mode) {
  if (grid.empty()) throw std::invalid_argument("estimate_c_std: empty candidate grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("estimate_c_std: grid must be ascending");
  if (data.values.empty()) throw std::invalid_argument("estimate_c_std: no data");
  if (ctx.matrices < 1) throw std::invalid_argument("estimate_c_std: matrices must be >= 1");

  CutoffSearchResult result;
  result.mode = mode;
  result.candidates.assign(grid.begin(), grid.end());
  const double scale = std::exp((1.0 - ctx.weight) * ctx.n_std / 2.0);
  DrawPool pool(2 * ctx.n_std, ctx.seed, ctx.jobs);
  const EmpiricalDistribution data_unit = normalize_to_unit_mean(data);

  // Plain draws fix the characteristic-polynomial scale for values_vs_charpoly.
  double lambda_mean = 0.0;
  if (mode == CutoffMode::values_vs_charpoly) {
    for (std::size_t i = 0; i < ctx.matrices; ++i) lambda_mean += pool.at(i).lambda;
    lambda_mean /= static_cast<double>(ctx.matrices);
  }

  double best = std::numeric_limits<double>::infinity();
  for (const double c : grid) {
    const double cutoff = c * scale;
    double discrepancy = std::numeric_limits<double>::quiet_NaN();
    double acceptance = 0.0;
    bool feasible = false;
    if (mode == CutoffMode::zeros_vs_excised) {
      std::vector<double> phases;
      phases.reserve(ctx.matrices);
      std::size_t i = 0;
      for (; i < ctx.max_draws && phases.size() < ctx.matrices; ++i) {
        const Draw& d = pool.at(i);
        if (d.lambda >= cutoff) phases.push_back(d.theta_min);
      }
      acceptance = i == 0 ? 0.0 : static_cast<double>(phases.size()) / static_cast<double>(i);
      if (phases.size() == ctx.matrices) {
        const auto eig = normalize_to_unit_mean(EmpiricalDistribution(SampleKind::lowest_phase, std::move(phases)));
        const auto pts = default_eval_points(data_unit, eig, ctx.eval_points);
        discrepancy = cdf_discrepancy(data_unit, eig, pts);
        feasible = true;
      }
    } else {
      const double cut = cutoff / lambda_mean;
      std::vector<double> kept_values;
      for (const double v : data_unit.values) {
        if (v >= cut) kept_values.push_back(v);
      }
      std::vector<double> kept_lambda;
      for (std::size_t i = 0; i < ctx.matrices; ++i) {
        const double v = pool.at(i).lambda / lambda_mean;
        if (v >= cut) kept_lambda.push_back(v);
      }
      acceptance = static_cast<double>(kept_lambda.size()) / static_cast<double>(ctx.matrices);
      if (!kept_values.empty() && !kept_lambda.empty()) {
        const EmpiricalDistribution a(SampleKind::central_value, std::move(kept_values));
        const EmpiricalDistribution b(SampleKind::lambda_at_one, std::move(kept_lambda));
        const auto pts = default_eval_points(a, b, ctx.eval_points);
        discrepancy = cdf_discrepancy(a, b, pts);
        feasible = true;
      }
    }
    result.discrepancies.push_back(discrepancy);
    result.acceptance.push_back(acceptance);
    result.feasible.push_back(feasible);
    if (feasible && discrepancy < best) {
      best = discrepancy;
      result.argmin = c;
      result.argmin_index = result.discrepancies.size() - 1;
    }
  }
  if (!std::isfinite(best)) throw ConvergenceError("estimate_c_std: no feasible candidate");
  return result;
}

}  // namespace lowlying::stats
