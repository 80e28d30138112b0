#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lowlying/lfunc.hpp"
#include "lowlying/newforms.hpp"

namespace lowlying::shimura {

// Ternary theta series of weight (k+1)/2 attached to the three theta-series
// newforms. Each is a sum over the lattice with norm form
//   Q(x, y, z) = a x^2 + b x y + c y^2 + e z^2
// of P(x, y, z) w(x, y) q^{Q / l}, where l is an auxiliary prime and w is the
// Legendre symbol mod l of the tangent line to the conic Q = 0 mod l (with a
// second linear form at the tangency point), divided by `normalizer`.
// At fundamental D coprime to the level every coefficient is a further
// multiple of `content`; dividing it out makes the Kohnen-Zagier coefficients
// coprime, so c_D^2 >= 1 whenever c_D != 0.
struct TernaryData {
  std::int64_t a, b, c, e;
  std::int64_t aux_prime;
  std::int64_t normalizer;
  std::int64_t content;
};

TernaryData ternary_data(newforms::ThetaConstruction construction);

/// Literal triple lattice sum; index D runs over 0..d_max (index 0 is 0).
/// Throws lowlying::Error if a raw sum is not divisible by the normalizer.
std::vector<std::int64_t> gplus_reference(newforms::ThetaConstruction construction, std::int64_t d_max);

/// Binary theta series convolved with the one-variable series in z.
std::vector<std::int64_t> gplus_fast(newforms::ThetaConstruction construction, std::int64_t d_max);

/// Fast path, gated on agreement with the reference for D <= 200.
std::vector<std::int64_t> gplus_coeffs_7_4(std::int64_t d_max);
std::vector<std::int64_t> gplus_coeffs_3_6(std::int64_t d_max);
std::vector<std::int64_t> gplus_coeffs_3_8(std::int64_t d_max);

struct HalfIntegralLift {
  std::string label;
  int weight = 4;                       // weight k of the newform; the lift has weight (k+1)/2
  std::int64_t level = 1;
  std::vector<std::int64_t> c;          // coefficients of g_+, index 0..d_max
  std::int64_t content = 1;
  std::optional<double> kappa;
  std::optional<std::int64_t> reference_d;

  std::int64_t d_max() const { return static_cast<std::int64_t>(c.size()) - 1; }
  /// c_D = c[D] / content for fundamental D coprime to the level
  /// (std::invalid_argument otherwise; MissingDataError beyond d_max).
  std::int64_t coefficient(std::int64_t d) const;
};

/// Lift for 7.4.a.a, 3.6.a.a or 3.8.a.a; std::invalid_argument otherwise.
HalfIntegralLift make_lift(const newforms::Newform& form, std::int64_t d_max);

/// kappa = L(f, 1/2, psi_D) D^{(k-1)/2} / c_D^2 with the central value supplied.
double calibrate_kappa(HalfIntegralLift& lift, std::int64_t reference_d, double central_value);

/// Same, with the central value computed by the approximate functional equation.
double calibrate_kappa(HalfIntegralLift& lift, const newforms::Newform& form, lfunc::CoefficientTable lambda,
                       std::int64_t reference_d);

/// kappa c_D^2 / D^{(k-1)/2}.
double central_value_kz(const HalfIntegralLift& lift, std::int64_t d);

/// kappa / D^{(k-1)/2}: the smallest nonzero value central_value_kz can take.
double discretization_threshold(const HalfIntegralLift& lift, std::int64_t d);

/// Weight-2 substitute for kappa: min of L D^{(k-1)/2} over values above
/// zero_threshold. Throws std::invalid_argument if none are.
double kappa_from_minimum(std::span<const std::pair<std::int64_t, double>> central_values, int weight,
                          double zero_threshold = 1e-8);

}  // namespace lowlying::shimura
