#include "lowlying/lfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lowlying/errors.hpp"
#include "lowlying/family.hpp"
#include "lowlying/special.hpp"

namespace lowlying::lfunc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Largest x at which the Mellin kernel x^p e^{-x} can still matter at the
// given tolerance (with a safety margin for the coefficient growth).
double kernel_cutoff(double p, double tolerance) {
  double x = std::max(p, 1.0) + 1.0;
  const double target = std::log(tolerance) - 5.0;
  while ((p + 1.0) * std::log(x) - x > target) x += 0.5;
  return x;
}

// Bound on |Gamma(w, x)| for x > Re(w) - 1.
double upper_gamma_bound(double p, double x) {
  const double base = std::exp((p - 1.0) * std::log(x) - x);
  return p > 1.0 ? base * x / (x - p + 1.0) : base;
}

}  // namespace

TwistedLFunction::TwistedLFunction(newforms::Newform form, std::int64_t d, CoefficientTable lambda,
                                   cdouble sign)
    : form_(std::move(form)), d_(d), lambda_(std::move(lambda)), sign_(sign) {
  if (d_ < 1) throw std::invalid_argument("TwistedLFunction: discriminant must be positive");
  if (!lambda_ || lambda_->size() < 2) throw std::invalid_argument("TwistedLFunction: empty coefficient table");
  if (d_ > 1 && arith::gcd(d_, form_.level) != 1) {
    throw std::invalid_argument("TwistedLFunction: gcd(D, M) must be 1");
  }
  if (std::abs(std::abs(sign_) - 1.0) > 1e-10) throw std::invalid_argument("TwistedLFunction: |sign| != 1");
  scale_ = static_cast<double>(d_) * std::sqrt(static_cast<double>(form_.level)) / kTwoPi;

  const std::size_t n = lambda_->size();

  std::vector<double> psi(static_cast<std::size_t>(d_));
  for (std::int64_t r = 0; r < d_; ++r) psi[r] = d_ == 1 ? 1.0 : arith::kronecker(d_, r);
  b_.resize(n);
  for (std::size_t i = 1; i < n; ++i) {
    b_[i] = (*lambda_)[i] * psi[i % static_cast<std::size_t>(d_)];
    b_max_ = std::max(b_max_, std::abs(b_[i]));
  }
}

TwistedLFunction make_twist(const newforms::Newform& form, const arith::FundamentalDiscriminant& d,
                            CoefficientTable lambda) {
  return TwistedLFunction(form, d.value(), std::move(lambda), arith::sign_of_functional_equation(form, d));
}

TwistedLFunction make_untwisted(const newforms::Newform& form, CoefficientTable lambda) {
  return TwistedLFunction(form, 1, std::move(lambda), form.epsilon.value_or(cdouble(1.0)));
}

std::size_t coefficients_needed(const newforms::Newform& form, std::int64_t d_max, double split,
                                double tolerance) {
  const double a = static_cast<double>(d_max) * std::sqrt(static_cast<double>(form.level)) / kTwoPi;
  const double x = kernel_cutoff(0.5 * form.weight + 1.0, tolerance * 1e-2) + 4.0;
  return static_cast<std::size_t>(std::ceil(x * a * std::max(split, 1.0 / split))) + 16;
}

cdouble gamma_factor(const TwistedLFunction& l, cdouble s) {
  return std::exp(s * std::log(l.scale()) + special::log_gamma(s + l.mu()));
}

AfeParts afe_parts(const TwistedLFunction& l, cdouble s, const AfeOptions& opts) {
  if (!(opts.split > 0.0)) throw std::invalid_argument("afe_parts: split must be positive");
  const double a = l.scale();
  const double c = opts.split;
  const cdouble w1 = s + l.mu();
  const cdouble w2 = 1.0 - s + l.mu();
  const double p1 = w1.real();
  const double p2 = w2.real();
  const double reference = std::abs(gamma_factor(l, s));
  const auto b = l.twisted();
  const double b_max = std::max(l.max_abs_coefficient(), 1.0);

  AfeParts out{};
  const std::size_t fixed = opts.n_terms.value_or(0);
  if (fixed >= b.size()) {
    throw ConvergenceError("afe: requested " + std::to_string(fixed) + " terms, only " +
                           std::to_string(b.size() - 1) + " coefficients available");
  }
  for (std::size_t n = 1; n < b.size(); ++n) {
    const double x1 = static_cast<double>(n) * c / a;
    const double x2 = static_cast<double>(n) / (c * a);
    const double log_ratio = std::log(a / static_cast<double>(n));
    if (b[n] != 0.0) {
      out.direct += b[n] * std::exp(s * log_ratio) * special::upper_incomplete_gamma(w1, x1);
      out.dual += std::conj(b[n]) * std::exp((1.0 - s) * log_ratio) * special::upper_incomplete_gamma(w2, x2);
    }
    out.terms = n;
    if (fixed != 0) {
      if (n == fixed) return out;
      continue;
    }
    if (x1 > p1 + 1.0 && x2 > p2 + 1.0) {
      const double tail1 = b_max * std::exp(s.real() * log_ratio) * upper_gamma_bound(p1, x1) * (a / c + 1.0);
      const double tail2 =
          b_max * std::exp((1.0 - s.real()) * log_ratio) * upper_gamma_bound(p2, x2) * (a * c + 1.0);
      if (tail1 + tail2 < opts.tolerance * reference) return out;
    }
  }
  if (fixed != 0) return out;
  throw ConvergenceError("afe: tail bound not reached within " + std::to_string(b.size() - 1) +
                         " coefficients for " + l.form().label + ", D = " + std::to_string(l.discriminant()));
}

cdouble completed_lambda(const TwistedLFunction& l, cdouble s, const AfeOptions& opts) {
  const AfeParts parts = afe_parts(l, s, opts);
  return parts.direct + l.sign() * parts.dual;
}

cdouble dirichlet_series(const TwistedLFunction& l, cdouble s, std::size_t n_terms) {
  const auto b = l.twisted();
  if (n_terms >= b.size()) throw std::invalid_argument("dirichlet_series: not enough coefficients");
  cdouble sum = 0.0;
  for (std::size_t n = 1; n <= n_terms; ++n) sum += b[n] * std::exp(-s * std::log(static_cast<double>(n)));
  return sum;
}

double verify_functional_equation(const TwistedLFunction& l, std::span<const cdouble> points) {
  static constexpr std::array<cdouble, 4> kDefaultPoints = {
      cdouble(0.8, 0.3), cdouble(0.3, 1.1), cdouble(0.65, -0.7), cdouble(1.2, 0.5)};
  if (points.empty()) points = kDefaultPoints;
  AfeOptions left;
  left.split = 1.1;
  AfeOptions right;
  right.split = 1.25;
  double residual = 0.0;
  for (const cdouble s : points) {
    const cdouble lhs = completed_lambda(l, s, left);
    const cdouble rhs = l.sign() * std::conj(completed_lambda(l, std::conj(1.0 - s), right));
    residual = std::max(residual, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return residual;
}

cdouble calibrate_epsilon(const newforms::Newform& form, CoefficientTable lambda) {
  const TwistedLFunction l(form, 1, std::move(lambda), cdouble(1.0));
  static constexpr std::array<cdouble, 4> kPoints = {cdouble(0.5, 0.3), cdouble(0.7, 1.0), cdouble(0.4, -0.6),
                                                     cdouble(0.9, 2.0)};
  AfeOptions first;
  first.split = 1.0;
  AfeOptions second;
  second.split = 1.35;
  cdouble weighted = 0.0;
  double total_weight = 0.0;
  for (const cdouble s : kPoints) {
    const AfeParts p1 = afe_parts(l, s, first);
    const AfeParts p2 = afe_parts(l, s, second);
    const cdouble denom = p2.dual - p1.dual;
    const double reference = std::abs(gamma_factor(l, s));
    if (std::abs(denom) < 1e-12 * reference) continue;
    const cdouble eps = (p1.direct - p2.direct) / denom;
    const double weight = std::abs(denom) / reference;
    weighted += weight * eps;
    total_weight += weight;
  }
  if (total_weight == 0.0) throw ConvergenceError(form.label + ": root number solve ill-conditioned");
  cdouble eps = weighted / total_weight;
  if (std::abs(std::abs(eps) - 1.0) > 1e-6) {
    throw ConvergenceError(form.label + ": calibrated |epsilon| = " + std::to_string(std::abs(eps)));
  }
  if (form.self_dual()) {
    const double snapped = eps.real() > 0.0 ? 1.0 : -1.0;
    if (std::abs(eps - snapped) > 1e-6) {
      throw ConvergenceError(form.label + ": self-dual form with non-real epsilon");
    }
    return snapped;
  }
  return eps / std::abs(eps);
}

cdouble central_value(const TwistedLFunction& l, const AfeOptions& opts) {
  return completed_lambda(l, 0.5, opts) / gamma_factor(l, 0.5);
}

double collinearity_deviation(std::span<const cdouble> values, double zero_threshold) {
  std::vector<double> angles;
  for (const cdouble v : values) {
    if (std::abs(v) <= zero_threshold) continue;
    double a = std::fmod(std::arg(v), std::numbers::pi);
    if (a < 0.0) a += std::numbers::pi;
    angles.push_back(a);
  }
  if (angles.empty()) throw std::invalid_argument("collinearity_deviation: no nonzero values");
  double worst = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      const double d = std::abs(angles[i] - angles[j]);
      worst = std::max(worst, std::min(d, std::numbers::pi - d));
    }
  }
  return worst;
}

}  // namespace lowlying::lfunc
