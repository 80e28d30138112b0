#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lowlying/family.hpp"
#include "lowlying/hardy_z.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/newforms.hpp"
#include "lowlying/shimura.hpp"
#include "lowlying/stats.hpp"

namespace lowlying::pipeline {

// A calibrated form, its normalized coefficients and its admissible twists.
struct Family {
  newforms::Newform form;  // epsilon calibrated
  lfunc::CoefficientTable lambda;
  arith::FamilySelector selector;
  std::vector<arith::FundamentalDiscriminant> discriminants;
};

struct FamilyOptions {
  std::int64_t x_max = 1000;
  std::optional<std::filesystem::path> coeff_file;
  int heart = 1;
  std::int64_t diamond = 1;
};

/// Loads the form, checks that enough coefficients exist for twists up to
/// x_max (MissingDataError naming the generator otherwise), calibrates
/// epsilon and lists the family.
Family load_family(const std::string& label, const FamilyOptions& opts);

/// True for the forms with a ternary theta lift (weights 4, 6, 8).
bool has_theta_lift(const newforms::Newform& form);

struct ZeroOptions {
  std::size_t count = 1;
  double t_max = 12.0;
  lfunc::Tolerances tol;
  int jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
};

/// Lowest zeros of every twist in the family, ascending in D. For forms with
/// a theta lift a twist counts as centrally vanishing exactly when its
/// Kohnen-Zagier coefficient is 0; otherwise |Z(0)| < 1e-10 decides. With a
/// cache directory, rows already present are reused and new rows are appended
/// as batches finish.
std::vector<lfunc::ZeroList> family_zeros(const Family& family, const ZeroOptions& opts);

/// Lowest ordinates as a distribution keyed by D. Twists with a central zero
/// are dropped unless include_central_zeros is set.
stats::EmpiricalDistribution lowest_zero_distribution(const std::vector<lfunc::ZeroList>& zeros,
                                                      bool include_central_zeros = false);

struct CentralValue {
  std::int64_t d = 0;
  std::complex<double> value;
};

/// L(f, 1/2, psi_D) for every twist in the family by the approximate
/// functional equation, ascending in D, optionally cached like family_zeros.
std::vector<CentralValue> family_central_values(const Family& family, int jobs = 1,
                                                const std::optional<std::filesystem::path>& cache_dir = {},
                                                double afe_tolerance = 1e-12);

/// Lift for the family's form with kappa calibrated at the first admissible D
/// whose coefficient is nonzero. std::invalid_argument for forms without one.
shimura::HalfIntegralLift calibrated_lift(const Family& family);

/// Geometric grid c0 * 1.25^k. Weight 2 starts at c0 = 0.1 with 27 points;
/// higher weights start at 5e-4 exp((k-1) n_std / 2) with 30 points, which
/// brackets the cutoffs where the excision starts to bite.
std::vector<double> default_cutoff_grid(int weight, int n_std);

/// Parses "a,b,c" or "geom:start:ratio:count". Empty input gives the default grid.
std::vector<double> parse_grid(const std::string& spec, int weight, int n_std);

}  // namespace lowlying::pipeline
