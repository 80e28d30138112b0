#include "lowlying/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "lowlying/errors.hpp"
#include "lowlying/io.hpp"

namespace lowlying::pipeline {
namespace {

constexpr std::size_t kBatch = 64;

std::string zero_cache_key(const ZeroOptions& o) {
  return io::cache_key({o.tol.afe, o.tol.zero, o.tol.z_imag});
}

}  // namespace

bool has_theta_lift(const newforms::Newform& form) {
  return std::holds_alternative<newforms::ThetaSeries>(form.provider);
}

Family load_family(const std::string& label, const FamilyOptions& opts) {
  if (opts.x_max < 5) throw std::invalid_argument("discriminant bound must be at least 5");
  Family fam;
  fam.form = newforms::table_form(label, opts.coeff_file);
  const std::size_t need = lfunc::coefficients_needed(fam.form, opts.x_max);
  const std::size_t have = newforms::available_coefficients(fam.form);
  if (have < need) {
    throw MissingDataError("form " + label + " has " + std::to_string(have) + " coefficients, twists up to D = " +
                           std::to_string(opts.x_max) + " need " + std::to_string(need) +
                           "; regenerate with `gen_13_2_e_a --count " + std::to_string(need) +
                           " --output <file>` and pass --coeff-file <file>");
  }
  fam.lambda = std::make_shared<const std::vector<cdouble>>(newforms::normalized_coefficients(fam.form, need));
  fam.form.epsilon = lfunc::calibrate_epsilon(fam.form, fam.lambda);
  fam.selector = arith::default_selector(fam.form, opts.x_max);
  fam.selector.heart = opts.heart;
  fam.selector.diamond = opts.diamond;
  fam.discriminants = arith::admissible_discriminants(fam.form, fam.selector);
  return fam;
}

std::vector<lfunc::ZeroList> family_zeros(const Family& family, const ZeroOptions& opts) {
  if (opts.count < 1) throw std::invalid_argument("need at least one zero per twist");
  std::optional<shimura::HalfIntegralLift> lift;
  if (has_theta_lift(family.form)) lift = shimura::make_lift(family.form, family.selector.x_max);

  std::optional<io::ZeroCache> cache;
  std::map<std::int64_t, io::ZeroRow> cached;
  if (opts.cache_dir) {
    cache.emplace(*opts.cache_dir, family.form.label, zero_cache_key(opts));
    cached = cache->load();
  }

  const auto& ds = family.discriminants;
  std::vector<lfunc::ZeroList> out(ds.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto it = cached.find(ds[i].value());
    if (it != cached.end() && it->second.ordinates.size() >= opts.count) {
      auto& z = out[i];
      z.label = family.form.label;
      z.discriminant = ds[i].value();
      z.central_zero = it->second.central_zero;
      z.ordinates.assign(it->second.ordinates.begin(), it->second.ordinates.begin() + opts.count);
    } else {
      todo.push_back(i);
    }
  }

  lfunc::HardyZOptions hz_opts;
  hz_opts.t_max = std::max(hz_opts.t_max, opts.t_max);
  hz_opts.z_imag = opts.tol.z_imag;

  for (std::size_t start = 0; start < todo.size(); start += kBatch * opts.jobs) {
    const std::size_t stop = std::min(todo.size(), start + kBatch * opts.jobs);
    io::parallel_for(stop - start, opts.jobs, [&](std::size_t j) {
      const std::size_t i = todo[start + j];
      const auto l = lfunc::make_twist(family.form, ds[i], family.lambda);
      const lfunc::HardyZ z(l, hz_opts);
      double threshold = 1e-10;
      if (lift) threshold = lift->coefficient(ds[i].value()) == 0 ? std::numeric_limits<double>::infinity() : 0.0;
      out[i] = lfunc::lowest_zeros(z, opts.count, opts.t_max, std::nullopt, opts.tol, threshold);
    });
    if (cache) {
      for (std::size_t j = start; j < stop; ++j) {
        const auto& z = out[todo[j]];
        cache->append({z.discriminant, z.central_zero, z.ordinates});
      }
    }
  }
  return out;
}

stats::EmpiricalDistribution lowest_zero_distribution(const std::vector<lfunc::ZeroList>& zeros,
                                                      bool include_central_zeros) {
  std::vector<double> values;
  std::vector<std::int64_t> keys;
  for (const auto& z : zeros) {
    if (z.central_zero && !include_central_zeros) continue;
    if (z.ordinates.empty()) continue;
    values.push_back(z.ordinates.front());
    keys.push_back(z.discriminant);
  }
  if (values.empty()) throw std::invalid_argument("no twists left for the lowest-zero distribution");
  return {stats::SampleKind::lowest_zero, std::move(values), std::move(keys)};
}

std::vector<CentralValue> family_central_values(const Family& family, int jobs,
                                                const std::optional<std::filesystem::path>& cache_dir,
                                                double afe_tolerance) {
  std::optional<io::CentralValueCache> cache;
  std::map<std::int64_t, io::CentralRow> cached;
  if (cache_dir) {
    cache.emplace(*cache_dir, family.form.label, io::cache_key({afe_tolerance}));
    cached = cache->load();
  }
  const auto& ds = family.discriminants;
  std::vector<CentralValue> out(ds.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto it = cached.find(ds[i].value());
    if (it != cached.end()) {
      out[i] = {ds[i].value(), it->second.value};
    } else {
      todo.push_back(i);
    }
  }
  lfunc::AfeOptions afe;
  afe.tolerance = afe_tolerance;
  for (std::size_t start = 0; start < todo.size(); start += kBatch * jobs) {
    const std::size_t stop = std::min(todo.size(), start + kBatch * jobs);
    io::parallel_for(stop - start, jobs, [&](std::size_t j) {
      const std::size_t i = todo[start + j];
      const auto l = lfunc::make_twist(family.form, ds[i], family.lambda);
      out[i] = {ds[i].value(), lfunc::central_value(l, afe)};
    });
    if (cache) {
      for (std::size_t j = start; j < stop; ++j) cache->append({out[todo[j]].d, out[todo[j]].value});
    }
  }
  return out;
}

shimura::HalfIntegralLift calibrated_lift(const Family& family) {
  if (!has_theta_lift(family.form)) {
    throw std::invalid_argument("form " + family.form.label + " has no Kohnen-Zagier route");
  }
  auto lift = shimura::make_lift(family.form, family.selector.x_max);
  for (const auto& d : family.discriminants) {
    if (lift.coefficient(d.value()) != 0) {
      shimura::calibrate_kappa(lift, family.form, family.lambda, d.value());
      return lift;
    }
  }
  throw std::invalid_argument("no admissible discriminant with a nonzero coefficient below the bound");
}

std::vector<double> default_cutoff_grid(int weight, int n_std) {
  const bool w2 = weight == 2;
  const double c0 = w2 ? 0.1 : 5e-4 * std::exp(0.5 * (weight - 1) * n_std);
  const int count = w2 ? 27 : 30;
  std::vector<double> grid(count);
  for (int k = 0; k < count; ++k) grid[k] = c0 * std::pow(1.25, k);
  return grid;
}

std::vector<double> parse_grid(const std::string& spec, int weight, int n_std) {
  if (spec.empty()) return default_cutoff_grid(weight, n_std);
  std::vector<double> grid;
  try {
    if (spec.rfind("geom:", 0) == 0) {
      std::vector<std::string> fields;
      std::string rest = spec.substr(5);
      for (std::size_t pos = 0;;) {
        const auto colon = rest.find(':', pos);
        fields.push_back(rest.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
      }
      if (fields.size() != 3) throw std::invalid_argument("grid must be geom:start:ratio:count");
      const double start = io::parse_double(fields[0]);
      const double ratio = io::parse_double(fields[1]);
      const auto count = io::parse_int(fields[2]);
      if (!(start > 0.0) || !(ratio > 1.0) || count < 1) {
        throw std::invalid_argument("geometric grid needs start > 0, ratio > 1, count >= 1");
      }
      for (std::int64_t k = 0; k < count; ++k) grid.push_back(start * std::pow(ratio, static_cast<double>(k)));
    } else {
      for (auto field : io::split_csv(spec)) grid.push_back(io::parse_double(field));
    }
  } catch (const MissingDataError& e) {
    throw std::invalid_argument(std::string("bad grid: ") + e.what());
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("grid must be ascending");
  return grid;
}

}  // namespace lowlying::pipeline
