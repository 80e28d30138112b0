#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowlying/ensembles.hpp"
#include "lowlying/io.hpp"
#include "lowlying/manifest.hpp"
#include "lowlying/options.hpp"
#include "lowlying/pipeline.hpp"
#include "lowlying/plots.hpp"
#include "lowlying/shimura.hpp"
#include "lowlying/stats.hpp"

namespace fs = std::filesystem;

namespace lowlying::cli {
namespace {

using io::format_double;

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

fs::path output_path(const Options& o, const std::string& fallback) {
  return o.out.empty() ? fs::path(fallback) : fs::path(o.out);
}

ensembles::LowestPhase parse_lowest(const std::string& s) {
  if (s == "positive") return ensembles::LowestPhase::smallest_positive;
  if (s == "absolute") return ensembles::LowestPhase::smallest_absolute;
  throw std::invalid_argument("--lowest must be 'positive' or 'absolute'");
}

pipeline::FamilyOptions family_options(const Options& o) {
  if (o.label.empty()) throw std::invalid_argument("--label is required");
  pipeline::FamilyOptions f;
  f.x_max = o.x_max;
  if (!o.coeff_file.empty()) f.coeff_file = o.coeff_file;
  f.heart = o.heart;
  f.diamond = o.diamond;
  return f;
}

pipeline::ZeroOptions zero_options(const Options& o, std::size_t count) {
  pipeline::ZeroOptions z;
  z.count = count;
  z.t_max = o.t_max;
  z.tol.zero = o.tolerance;
  z.jobs = o.jobs;
  if (!o.cache_dir.empty()) z.cache_dir = o.cache_dir;
  return z;
}

void check_jobs(const Options& o) {
  if (o.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
}

nlohmann::json complex_json(cdouble v) { return {v.real(), v.imag()}; }

// Writes x,F(x) at every sample point of the sorted values.
void write_cdf(const fs::path& path, const std::string& column, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  auto out = open_output(path);
  out << column << ",cdf\n";
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_double(values[i]) << ',' << format_double(static_cast<double>(i + 1) / n) << '\n';
  }
}

void write_histogram(const fs::path& path, const std::string& column, const stats::Histogram& h) {
  auto out = open_output(path);
  out << column << ",density\n";
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    out << format_double(h.lo + (static_cast<double>(i) + 0.5) * h.width()) << ',' << format_double(h.density[i])
        << '\n';
  }
}

ensembles::Group family_group(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::principal: return ensembles::Group::SO;
    case FamilyKind::self_cm: return ensembles::Group::USp;
    case FamilyKind::non_self_dual: return ensembles::Group::U;
  }
  return ensembles::Group::U;
}

}  // namespace

int cmd_sample_ensemble(const Options& o) {
  check_jobs(o);
  const auto group = ensembles::parse_group(o.group);
  if (o.n < 1) throw std::invalid_argument("--n must be positive");
  if (group != ensembles::Group::U && o.n % 2 != 0) {
    throw std::invalid_argument(std::string(ensembles::to_string(group)) + " needs an even matrix size");
  }
  if (o.count < 1) throw std::invalid_argument("--count must be positive");
  const auto lowest = parse_lowest(o.lowest);

  RunManifest manifest("sample-ensemble", o);
  std::vector<ensembles::EnsembleSample> samples(o.count);
  io::parallel_for(o.count, o.jobs, [&](std::size_t i) { samples[i] = ensembles::sample(group, o.n, o.seed, i); });

  const fs::path path = output_path(o, "samples.csv");
  {
    auto out = open_output(path);
    out << "group,n,seed,draw,theta_min,lambda_at_one\n";
    for (const auto& s : samples) {
      out << ensembles::to_string(s.group) << ',' << s.n << ',' << s.seed << ',' << s.draw << ','
          << format_double(s.theta_min(lowest)) << ',' << format_double(s.lambda_at_one) << '\n';
    }
  }
  manifest.add_output(path);

  if (!o.histogram.empty()) {
    // Density of |theta| over all eigenphases of all draws, on [0, pi].
    std::vector<double> folded;
    folded.reserve(o.count * static_cast<std::size_t>(o.n));
    for (const auto& s : samples) {
      for (double t : s.eigenphases) folded.push_back(std::abs(t));
    }
    const auto h = stats::density_histogram(folded, o.bins, 0.0, M_PI);
    const fs::path hp(o.histogram);
    write_histogram(hp, "theta", h);
    const fs::path script = hp.parent_path() / (hp.stem().string() + ".gp");
    write_gnuplot_script(script, std::string(ensembles::to_string(group)) + "(" + std::to_string(o.n) + ")",
                         "theta", "density", {{hp, "eigenphase density"}});
    manifest.add_output(hp);
    manifest.add_output(script);
    double mean = 0.0;
    for (double d : h.density) mean += d;
    mean /= static_cast<double>(h.density.size());
    manifest.extra()["near_zero_bin_over_mean"] = h.density.front() / mean;
  }
  manifest.extra()["lowest_phase"] = o.lowest;
  manifest.write(path);
  return 0;
}

int cmd_compute_zeros(const Options& o) {
  check_jobs(o);
  RunManifest manifest("compute-zeros", o);
  const auto family = pipeline::load_family(o.label, family_options(o));
  const auto zeros = pipeline::family_zeros(family, zero_options(o, o.zeros));

  const fs::path path = output_path(o, "zeros_" + o.label + ".csv");
  std::size_t central = 0;
  {
    auto out = open_output(path);
    out << "label,D,central";
    for (std::size_t i = 1; i <= o.zeros; ++i) out << ",t" << i;
    out << '\n';
    for (const auto& z : zeros) {
      central += z.central_zero ? 1 : 0;
      out << io::format_zero_row(o.label, {z.discriminant, z.central_zero, z.ordinates}) << '\n';
    }
  }
  manifest.add_output(path);
  manifest.extra()["epsilon"] = complex_json(*family.form.epsilon);
  manifest.extra()["twists"] = zeros.size();
  manifest.extra()["central_zeros"] = central;
  manifest.write(path);
  std::cout << zeros.size() << " twists, " << central << " with a central zero -> " << path.string() << '\n';
  return 0;
}

int cmd_central_values(const Options& o) {
  check_jobs(o);
  if (o.method != "direct" && o.method != "kz" && o.method != "both") {
    throw std::invalid_argument("--method must be direct, kz or both");
  }
  RunManifest manifest("central-values", o);
  const auto family = pipeline::load_family(o.label, family_options(o));
  const bool want_direct = o.method != "kz";
  const bool want_kz = o.method != "direct";
  if (want_kz && !pipeline::has_theta_lift(family.form)) {
    throw std::invalid_argument("form " + o.label + " has no Kohnen-Zagier route; use --method direct");
  }

  std::vector<pipeline::CentralValue> direct;
  if (want_direct) {
    direct = pipeline::family_central_values(
        family, o.jobs, o.cache_dir.empty() ? std::nullopt : std::optional<fs::path>(o.cache_dir));
  }
  std::optional<shimura::HalfIntegralLift> lift;
  if (want_kz) {
    lift = pipeline::calibrated_lift(family);
    manifest.extra()["kappa"] = *lift->kappa;
    manifest.extra()["reference_D"] = *lift->reference_d;
  }

  const fs::path path = output_path(o, "central_" + o.label + ".csv");
  double worst = 0.0;
  {
    auto out = open_output(path);
    out << "D";
    if (want_direct) out << ",re,im";
    if (want_kz) out << ",c_D,kz";
    out << '\n';
    for (std::size_t i = 0; i < family.discriminants.size(); ++i) {
      const std::int64_t d = family.discriminants[i].value();
      out << d;
      if (want_direct) out << ',' << format_double(direct[i].value.real()) << ',' << format_double(direct[i].value.imag());
      if (want_kz) {
        const double kz = shimura::central_value_kz(*lift, d);
        out << ',' << lift->coefficient(d) << ',' << format_double(kz);
        if (want_direct && kz > 0.0) worst = std::max(worst, std::abs(direct[i].value.real() - kz) / kz);
      }
      out << '\n';
    }
  }
  manifest.add_output(path);
  manifest.extra()["epsilon"] = complex_json(*family.form.epsilon);
  manifest.extra()["twists"] = family.discriminants.size();
  if (want_direct && want_kz) manifest.extra()["max_relative_difference"] = worst;
  if (want_direct && !family.form.self_dual()) {
    std::vector<cdouble> values;
    for (const auto& c : direct) values.push_back(c.value);
    manifest.extra()["collinearity_deviation"] = lfunc::collinearity_deviation(values);
  }
  manifest.write(path);
  std::cout << family.discriminants.size() << " central values -> " << path.string() << '\n';
  return 0;
}

int cmd_estimate_cutoff(const Options& o) {
  check_jobs(o);
  const auto mode = stats::parse_cutoff_mode(o.mode);
  RunManifest manifest("estimate-cutoff", o);
  const auto family = pipeline::load_family(o.label, family_options(o));
  if (family.form.kind != FamilyKind::principal) {
    throw std::invalid_argument("the excised orthogonal model applies to principal forms only");
  }

  stats::CutoffSearchContext ctx;
  ctx.weight = family.form.weight;
  ctx.n_std = stats::n_std_base(static_cast<double>(o.x_max), family.form.level);
  ctx.matrices = o.matrices;
  ctx.seed = o.seed;
  ctx.jobs = o.jobs;
  const auto grid = pipeline::parse_grid(o.grid, ctx.weight, ctx.n_std);

  stats::EmpiricalDistribution data;
  if (mode == stats::CutoffMode::zeros_vs_excised) {
    const auto zeros = pipeline::family_zeros(family, zero_options(o, 1));
    data = pipeline::lowest_zero_distribution(zeros, o.include_central_zeros);
  } else {
    const auto values = pipeline::family_central_values(
        family, o.jobs, o.cache_dir.empty() ? std::nullopt : std::optional<fs::path>(o.cache_dir));
    std::vector<double> v;
    std::vector<std::int64_t> keys;
    for (const auto& c : values) {
      v.push_back(std::abs(c.value));
      keys.push_back(c.d);
    }
    data = stats::EmpiricalDistribution(stats::SampleKind::central_value, std::move(v), std::move(keys));
  }

  const auto result = stats::estimate_c_std(data, grid, ctx, mode);
  const fs::path path = output_path(o, "cutoff_" + o.label + ".csv");
  {
    auto out = open_output(path);
    out << "c_candidate,discrepancy,acceptance,feasible\n";
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
      out << format_double(result.candidates[i]) << ','
          << (result.feasible[i] ? format_double(result.discrepancies[i]) : std::string("nan")) << ','
          << format_double(result.acceptance[i]) << ',' << (result.feasible[i] ? 1 : 0) << '\n';
    }
  }
  const fs::path script = path.parent_path() / (path.stem().string() + ".gp");
  write_gnuplot_script(script, o.label + " cutoff search", "c_std", "CDF discrepancy",
                       {{path, std::string(stats::to_string(mode))}});
  manifest.add_output(path);
  manifest.add_output(script);
  manifest.extra()["argmin"] = result.argmin;
  manifest.extra()["n_std"] = ctx.n_std;
  manifest.extra()["matrix_size"] = 2 * ctx.n_std;
  manifest.extra()["samples"] = data.size();
  manifest.extra()["grid"] = grid;
  manifest.extra()["epsilon"] = complex_json(*family.form.epsilon);
  manifest.write(path);
  std::cout << "argmin c_std = " << format_double(result.argmin) << " (SO(" << 2 * ctx.n_std << "), "
            << data.size() << " twists) -> " << path.string() << '\n';
  return 0;
}

int cmd_compare(const Options& o) {
  check_jobs(o);
  if (o.matrices < 1) throw std::invalid_argument("--matrices must be positive");
  const auto lowest = parse_lowest(o.lowest);
  RunManifest manifest("compare", o);
  const auto family = pipeline::load_family(o.label, family_options(o));
  const auto zeros = pipeline::family_zeros(family, zero_options(o, 1));
  const auto zero_dist = stats::normalize_to_unit_mean(pipeline::lowest_zero_distribution(zeros, o.include_central_zeros));

  const auto group = family_group(family.form.kind);
  const int size = stats::n_std(static_cast<double>(o.x_max), group, family.form.level);
  std::vector<double> phases(o.matrices);
  io::parallel_for(o.matrices, o.jobs, [&](std::size_t i) {
    phases[i] = ensembles::sample(group, size, o.seed, i).theta_min(lowest);
  });
  std::vector<std::int64_t> draws(o.matrices);
  for (std::size_t i = 0; i < o.matrices; ++i) draws[i] = static_cast<std::int64_t>(i);
  const auto phase_dist =
      stats::normalize_to_unit_mean({stats::SampleKind::lowest_phase, std::move(phases), std::move(draws)});
  // Halves of the already normalized zeros, so their means read against 1.
  const auto split = stats::split_small_large(zero_dist);

  const fs::path dir = o.out.empty() ? fs::path(o.out_dir) : fs::path(o.out);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "zeros.csv");
    out << "D,normalized_zero\n";
    for (std::size_t i = 0; i < zero_dist.size(); ++i) {
      out << zero_dist.keys[i] << ',' << format_double(zero_dist.values[i]) << '\n';
    }
  }
  {
    auto out = open_output(dir / "phases.csv");
    out << "draw,normalized_phase\n";
    for (std::size_t i = 0; i < phase_dist.size(); ++i) {
      out << phase_dist.keys[i] << ',' << format_double(phase_dist.values[i]) << '\n';
    }
  }
  write_cdf(dir / "cdf_zeros.csv", "x", zero_dist.values);
  write_cdf(dir / "cdf_phases.csv", "x", phase_dist.values);
  write_cdf(dir / "cdf_small.csv", "x", split.small.values);
  write_cdf(dir / "cdf_large.csv", "x", split.large.values);
  const double hi = std::max(*std::max_element(zero_dist.values.begin(), zero_dist.values.end()),
                             *std::max_element(phase_dist.values.begin(), phase_dist.values.end()));
  write_histogram(dir / "density_zeros.csv", "x", stats::density_histogram(zero_dist.values, o.bins, 0.0, hi));
  write_histogram(dir / "density_phases.csv", "x", stats::density_histogram(phase_dist.values, o.bins, 0.0, hi));

  const std::string group_name = std::string(ensembles::to_string(group)) + "(" + std::to_string(size) + ")";
  write_gnuplot_script(dir / "cdf.gp", o.label + " lowest zeros vs " + group_name, "normalized value", "CDF",
                       {{dir / "cdf_zeros.csv", "zeros"}, {dir / "cdf_phases.csv", group_name}});
  write_gnuplot_script(dir / "split.gp", o.label + " small vs large conductor", "normalized value", "CDF",
                       {{dir / "cdf_small.csv", "small D"}, {dir / "cdf_large.csv", "large D"}});
  write_gnuplot_script(dir / "density.gp", o.label + " densities", "normalized value", "density",
                       {{dir / "density_zeros.csv", "zeros"}, {dir / "density_phases.csv", group_name}});
  for (const char* f : {"zeros.csv", "phases.csv", "cdf_zeros.csv", "cdf_phases.csv", "cdf_small.csv",
                        "cdf_large.csv", "density_zeros.csv", "density_phases.csv", "cdf.gp", "split.gp",
                        "density.gp"}) {
    manifest.add_output(dir / f);
  }

  const double discrepancy = stats::cdf_discrepancy(zero_dist, phase_dist);
  manifest.extra()["group"] = group_name;
  manifest.extra()["twists"] = zero_dist.size();
  manifest.extra()["zero_mean"] = zero_dist.mean();
  manifest.extra()["phase_mean"] = phase_dist.mean();
  manifest.extra()["zero_normalization"] = *zero_dist.normalization;
  manifest.extra()["phase_normalization"] = *phase_dist.normalization;
  manifest.extra()["small_mean"] = split.small_mean;
  manifest.extra()["large_mean"] = split.large_mean;
  manifest.extra()["cdf_discrepancy"] = discrepancy;
  manifest.extra()["epsilon"] = complex_json(*family.form.epsilon);
  manifest.write(dir / "compare");
  std::cout << o.label << " vs " << group_name << ": " << zero_dist.size() << " twists, small-D mean "
            << format_double(split.small_mean) << ", large-D mean " << format_double(split.large_mean)
            << ", CDF discrepancy " << format_double(discrepancy) << '\n';
  return 0;
}

}  // namespace lowlying::cli
