#include "lowlying/shimura.hpp"

#include <cmath>
#include <stdexcept>

#include "lowlying/arith.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/family.hpp"
#include "lowlying/lattice.hpp"

namespace lowlying::shimura {

namespace {

using newforms::ThetaConstruction;

constexpr std::int64_t kCheckedPrefix = 200;

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

int legendre(std::int64_t a, std::int64_t p) { return arith::kronecker(mod(a, p), p); }

// Genus weight w(x, y) of a lattice point.
int weight_of(ThetaConstruction construction, std::int64_t x, std::int64_t y) {
  switch (construction) {
    case ThetaConstruction::level7_weight4:
      // Tangent line to 4x^2 + 4xy + 8y^2 + 7z^2 = 0 mod 11 at (1, 2, 0).
      return mod(-2 * x + y, 11) != 0 ? legendre(-2 * x + y, 11) : legendre(x, 11);
    case ThetaConstruction::level3_weight6:
      return (mod(4 * x + 5 * y, 7) != 0 ? legendre(4 * x + 5 * y, 7) : legendre(2 * x, 7)) *
             legendre(2 * x + y, 3);
    case ThetaConstruction::level3_weight8:
      return mod(4 * x + 5 * y, 7) != 0 ? legendre(4 * x + 5 * y, 7) : legendre(2 * x, 7);
  }
  return 0;
}

// P(x, y, z) = p_xy(x, y) + z_coeff * z^2.
std::int64_t poly_xy(ThetaConstruction construction, std::int64_t x, std::int64_t y) {
  switch (construction) {
    case ThetaConstruction::level7_weight4:
      return x;
    case ThetaConstruction::level3_weight6:
      return 2 * x * x + 2 * x * y + 2 * y * y;
    case ThetaConstruction::level3_weight8:
      return 2 * x * x * x + 3 * x * x * y - 3 * x * y * y - 2 * y * y * y;
  }
  return 0;
}

std::int64_t z_coeff(ThetaConstruction construction) {
  return construction == ThetaConstruction::level3_weight6 ? -3 : 0;
}

std::vector<std::int64_t> normalize(const std::vector<std::int64_t>& raw, const TernaryData& t) {
  std::vector<std::int64_t> out(raw.size(), 0);
  for (std::size_t d = 0; d < raw.size(); ++d) {
    if (raw[d] % t.normalizer != 0) {
      throw Error("theta lift: raw coefficient " + std::to_string(raw[d]) + " at D = " + std::to_string(d) +
                  " not divisible by " + std::to_string(t.normalizer));
    }
    out[d] = raw[d] / t.normalizer;
  }
  return out;
}

std::int64_t weight_of_label(const newforms::Newform& form, ThetaConstruction& construction) {
  if (const auto* theta = std::get_if<newforms::ThetaSeries>(&form.provider)) {
    construction = theta->construction;
    return form.weight;
  }
  throw std::invalid_argument(form.label + ": no half-integral weight theta construction");
}

}  // namespace

TernaryData ternary_data(ThetaConstruction construction) {
  switch (construction) {
    case ThetaConstruction::level7_weight4:
      return {4, 4, 8, 7, 11, 4, 7};
    case ThetaConstruction::level3_weight6:
      return {4, 4, 4, 3, 7, 6, 144};
    case ThetaConstruction::level3_weight8:
      return {4, 4, 4, 3, 7, 6, 144};
  }
  throw std::invalid_argument("unknown theta construction");
}

std::vector<std::int64_t> gplus_reference(ThetaConstruction construction, std::int64_t d_max) {
  if (d_max < 1) throw std::invalid_argument("gplus: d_max must be >= 1");
  const TernaryData t = ternary_data(construction);
  const std::int64_t zc = z_coeff(construction);
  std::vector<std::int64_t> raw(static_cast<std::size_t>(d_max) + 1, 0);
  lattice::for_each_ternary_point(t.a, t.b, t.c, t.e, t.aux_prime * d_max,
                                  [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t q) {
                                    if (q % t.aux_prime != 0) return;
                                    const std::int64_t p = poly_xy(construction, x, y) + zc * z * z;
                                    raw[q / t.aux_prime] += p * weight_of(construction, x, y);
                                  });
  return normalize(raw, t);
}

std::vector<std::int64_t> gplus_fast(ThetaConstruction construction, std::int64_t d_max) {
  if (d_max < 1) throw std::invalid_argument("gplus: d_max must be >= 1");
  const TernaryData t = ternary_data(construction);
  const std::int64_t zc = z_coeff(construction);
  const std::int64_t bound = t.aux_prime * d_max;
  // Binary series sum P_xy w q^{Q'} and sum w q^{Q'}.
  std::vector<std::int64_t> with_poly(static_cast<std::size_t>(bound) + 1, 0);
  std::vector<std::int64_t> plain(zc != 0 ? with_poly.size() : 0, 0);
  lattice::for_each_binary_point(t.a, t.b, t.c, bound, [&](std::int64_t x, std::int64_t y, std::int64_t q) {
    const int w = weight_of(construction, x, y);
    if (w == 0) return;
    with_poly[q] += poly_xy(construction, x, y) * w;
    if (zc != 0) plain[q] += w;
  });
  std::vector<std::int64_t> raw(static_cast<std::size_t>(d_max) + 1, 0);
  for (std::int64_t d = 1; d <= d_max; ++d) {
    const std::int64_t n = t.aux_prime * d;
    std::int64_t sum = 0;
    for (std::int64_t z = 0; t.e * z * z <= n; ++z) {
      const std::int64_t m = n - t.e * z * z;
      const std::int64_t mult = z == 0 ? 1 : 2;
      sum += mult * with_poly[m];
      if (zc != 0) sum += mult * zc * z * z * plain[m];
    }
    raw[d] = sum;
  }
  return normalize(raw, t);
}

namespace {

std::vector<std::int64_t> gated(ThetaConstruction construction, std::int64_t d_max) {
  const auto fast = gplus_fast(construction, d_max);
  const auto reference = gplus_reference(construction, std::min(d_max, kCheckedPrefix));
  for (std::size_t d = 0; d < reference.size(); ++d) {
    if (fast[d] != reference[d]) {
      throw std::logic_error("theta lift: fast path disagrees with the lattice sum at D = " + std::to_string(d));
    }
  }
  return fast;
}

}  // namespace

std::vector<std::int64_t> gplus_coeffs_7_4(std::int64_t d_max) { return gated(ThetaConstruction::level7_weight4, d_max); }
std::vector<std::int64_t> gplus_coeffs_3_6(std::int64_t d_max) { return gated(ThetaConstruction::level3_weight6, d_max); }
std::vector<std::int64_t> gplus_coeffs_3_8(std::int64_t d_max) { return gated(ThetaConstruction::level3_weight8, d_max); }

std::int64_t HalfIntegralLift::coefficient(std::int64_t d) const {
  if (!arith::is_fundamental_discriminant(d) || arith::gcd(d, level) != 1) {
    throw std::invalid_argument(label + ": D = " + std::to_string(d) + " is not a fundamental discriminant prime to the level");
  }
  if (d > d_max()) {
    throw MissingDataError(label + ": D = " + std::to_string(d) + " outside the coefficient table");
  }
  const std::int64_t raw = c[static_cast<std::size_t>(d)];
  if (raw % content != 0) {
    throw Error(label + ": coefficient at D = " + std::to_string(d) + " not divisible by " + std::to_string(content));
  }
  return raw / content;
}

HalfIntegralLift make_lift(const newforms::Newform& form, std::int64_t d_max) {
  ThetaConstruction construction{};
  HalfIntegralLift lift;
  lift.label = form.label;
  lift.weight = static_cast<int>(weight_of_label(form, construction));
  lift.level = form.level;
  lift.c = gated(construction, d_max);
  lift.content = ternary_data(construction).content;
  return lift;
}

double calibrate_kappa(HalfIntegralLift& lift, std::int64_t reference_d, double central_value) {
  const std::int64_t c = lift.coefficient(reference_d);
  if (c == 0) throw std::invalid_argument("calibrate_kappa: c_D = 0 at the reference discriminant");
  const double kappa = central_value * std::pow(static_cast<double>(reference_d), 0.5 * (lift.weight - 1)) /
                       (static_cast<double>(c) * static_cast<double>(c));
  if (!(kappa > 0.0)) throw ConvergenceError("calibrate_kappa: non-positive kappa");
  lift.kappa = kappa;
  lift.reference_d = reference_d;
  return kappa;
}

double calibrate_kappa(HalfIntegralLift& lift, const newforms::Newform& form, lfunc::CoefficientTable lambda,
                       std::int64_t reference_d) {
  const arith::FundamentalDiscriminant d(reference_d);
  const auto l = lfunc::make_twist(form, d, std::move(lambda));
  return calibrate_kappa(lift, reference_d, lfunc::central_value(l).real());
}

double central_value_kz(const HalfIntegralLift& lift, std::int64_t d) {
  if (!lift.kappa) throw std::logic_error(lift.label + ": lift not calibrated");
  const auto c = static_cast<double>(lift.coefficient(d));
  return *lift.kappa * c * c / std::pow(static_cast<double>(d), 0.5 * (lift.weight - 1));
}

double discretization_threshold(const HalfIntegralLift& lift, std::int64_t d) {
  if (!lift.kappa) throw std::logic_error(lift.label + ": lift not calibrated");
  if (d < 1) throw std::invalid_argument("discretization_threshold: D must be positive");
  return *lift.kappa / std::pow(static_cast<double>(d), 0.5 * (lift.weight - 1));
}

double kappa_from_minimum(std::span<const std::pair<std::int64_t, double>> central_values, int weight,
                          double zero_threshold) {
  double best = 0.0;
  bool found = false;
  for (const auto& [d, value] : central_values) {
    if (std::abs(value) <= zero_threshold) continue;
    const double scaled = std::abs(value) * std::pow(static_cast<double>(d), 0.5 * (weight - 1));
    if (!found || scaled < best) best = scaled;
    found = true;
  }
  if (!found) throw std::invalid_argument("kappa_from_minimum: no nonzero central values");
  return best;
}

}  // namespace lowlying::shimura
