#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lowlying/ensembles.hpp"

namespace lowlying::stats {

enum class SampleKind { lowest_zero, lowest_phase, central_value, lambda_at_one };
std::string_view to_string(SampleKind kind);

struct EmpiricalDistribution {
  SampleKind kind = SampleKind::lowest_zero;
  std::vector<double> values;
  std::vector<std::int64_t> keys;       // discriminant or draw index, parallel to values
  std::optional<double> normalization;  // mean divided out, if normalized

  EmpiricalDistribution() = default;
  EmpiricalDistribution(SampleKind k, std::vector<double> v, std::vector<std::int64_t> keys_ = {});

  std::size_t size() const { return values.size(); }
  double mean() const;
};

/// round(log(sqrt(level) X / (2 pi e))), doubled for SO and USp.
/// std::invalid_argument if the logarithm is below 1.
int n_std(double x, ensembles::Group group, std::int64_t level = 3);
int n_std_base(double x, std::int64_t level = 3);

EmpiricalDistribution normalize_to_unit_mean(const EmpiricalDistribution& dist);

struct Split {
  EmpiricalDistribution small, large;
  double small_mean = 0.0, large_mean = 0.0;
};

/// Orders by key and splits at the median index; the extra element of an odd
/// count goes to the small half.
Split split_small_large(const EmpiricalDistribution& dist);

/// `count` equally spaced points over the pooled 1st..99th percentile range.
std::vector<double> default_eval_points(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                                        std::size_t count = 40);

/// sum_i |F_a(m_i) - F_b(m_i)| (p_{i+1} - p_i), m_i the midpoint of
/// [p_i, p_{i+1}]. std::invalid_argument for unsorted points or empty samples.
double cdf_discrepancy(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                       std::span<const double> eval_points);
double cdf_discrepancy(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct Histogram {
  double lo = 0.0, hi = 1.0;
  std::vector<double> density;  // integrates to 1 over [lo, hi]
  std::size_t counted = 0;      // values inside [lo, hi]
  double width() const { return (hi - lo) / static_cast<double>(density.size()); }
};

Histogram density_histogram(std::span<const double> values, std::size_t n_bins, double lo, double hi);

double mean_lowest_eigenphase(ensembles::Group group, int n, std::size_t n_samples, std::uint64_t seed,
                              ensembles::LowestPhase mode = ensembles::LowestPhase::smallest_positive);

enum class CutoffMode { zeros_vs_excised, values_vs_charpoly };
std::string_view to_string(CutoffMode mode);
CutoffMode parse_cutoff_mode(std::string_view name);

struct CutoffSearchContext {
  int weight = 2;
  int n_std = 8;                    // base size; matrices are SO(2 n_std)
  std::size_t matrices = 5000;      // accepted matrices per candidate
  std::size_t max_draws = 2000000;  // candidates needing more draws are infeasible
  std::uint64_t seed = 1;
  int jobs = 1;
  std::size_t eval_points = 40;
};

struct CutoffSearchResult {
  CutoffMode mode = CutoffMode::zeros_vs_excised;
  std::vector<double> candidates;
  std::vector<double> discrepancies;  // NaN where infeasible
  std::vector<double> acceptance;     // fraction of draws accepted
  std::vector<bool> feasible;
  double argmin = 0.0;
  std::size_t argmin_index = 0;
};

/// zeros_vs_excised: `data` holds lowest zeros; each candidate c keeps the
/// first ctx.matrices SO draws with |Lambda_A(1)| >= c exp((1-k) n_std / 2) and
/// compares lowest eigenphases, both sides at unit mean.
/// values_vs_charpoly: `data` holds central values; both sides are scaled to
/// unit mean, values below the candidate cutoff (mapped into the same scale)
/// are dropped on both sides, and the CDFs are compared.
/// The same draws serve every candidate. std::invalid_argument for an
/// unsorted or empty grid; ConvergenceError if no candidate is feasible.
CutoffSearchResult estimate_c_std(const EmpiricalDistribution& data, std::span<const double> grid,
                                  const CutoffSearchContext& ctx, CutoffMode mode = CutoffMode::zeros_vs_excised);

}  // namespace lowlying::stats
