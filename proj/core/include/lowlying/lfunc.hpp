#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lowlying/arith.hpp"
#include "lowlying/newforms.hpp"

namespace lowlying::lfunc {

using cdouble = std::complex<double>;
using CoefficientTable = std::shared_ptr<const std::vector<cdouble>>;  // lambda_n, index n

struct Tolerances {
  double afe = 1e-12;
  double zero = 1e-8;
  double z_imag = 1e-6;
};

// L(f, s, psi_D) in the analytic normalization, completed as
//   Lambda(s) = A^s Gamma(s + mu) L(s),  A = D sqrt(M) / (2 pi),  mu = (k-1)/2,
// so that Lambda(s) = sign * conj(Lambda(conj(1 - s))). D = 1 is the untwisted
// L-function.
class TwistedLFunction {
 public:
  TwistedLFunction(newforms::Newform form, std::int64_t d, CoefficientTable lambda, cdouble sign);

  const newforms::Newform& form() const { return form_; }
  std::int64_t discriminant() const { return d_; }
  std::int64_t conductor() const { return form_.level * d_ * d_; }
  cdouble sign() const { return sign_; }
  double mu() const { return 0.5 * (form_.weight - 1); }
  double scale() const { return scale_; }

  /// Twisted coefficients b_n = lambda_n psi_D(n), n = 0..size()-1.
  std::span<const cdouble> twisted() const { return b_; }
  double max_abs_coefficient() const { return b_max_; }

 private:
  newforms::Newform form_;
  std::int64_t d_;
  CoefficientTable lambda_;
  cdouble sign_;
  double scale_;
  std::vector<cdouble> b_;
  double b_max_ = 0.0;
};

/// Twist of a calibrated form; the sign comes from arith::sign_of_functional_equation.
TwistedLFunction make_twist(const newforms::Newform& form, const arith::FundamentalDiscriminant& d,
                            CoefficientTable lambda);

/// The untwisted L-function (conductor M), sign = epsilon_f (or 1 if uncalibrated).
TwistedLFunction make_untwisted(const newforms::Newform& form, CoefficientTable lambda);

/// Number of coefficients needed to evaluate twists with D <= d_max.
std::size_t coefficients_needed(const newforms::Newform& form, std::int64_t d_max,
                                double split = 1.2, double tolerance = 1e-12);

struct AfeOptions {
  double tolerance = 1e-12;
  std::optional<std::size_t> n_terms;  // fixed truncation instead of the tail bound
  double split = 1.0;                  // Mellin split point c; any c > 0 is exact
};

// Lambda(s) = direct + sign * dual with
//   direct = sum b_n (A/n)^s Gamma(s + mu, n c / A)
//   dual   = sum conj(b_n) (A/n)^{1-s} Gamma(1 - s + mu, n / (c A)).
struct AfeParts {
  cdouble direct;
  cdouble dual;
  std::size_t terms = 0;
};

/// Throws ConvergenceError when the coefficient table ends before the tail
/// bound drops below tolerance.
AfeParts afe_parts(const TwistedLFunction& l, cdouble s, const AfeOptions& opts = {});

cdouble completed_lambda(const TwistedLFunction& l, cdouble s, const AfeOptions& opts = {});

/// A^s Gamma(s + mu): Lambda(s) / L(s).
cdouble gamma_factor(const TwistedLFunction& l, cdouble s);

/// L(s) summed directly; only meaningful for Re(s) > 1 + max growth.
cdouble dirichlet_series(const TwistedLFunction& l, cdouble s, std::size_t n_terms);

/// Max over test points of |Lambda_c(s) - sign conj(Lambda_c2(conj(1-s)))| / |Lambda_c(s)|,
/// with the two sides evaluated at different Mellin split points.
double verify_functional_equation(const TwistedLFunction& l, std::span<const cdouble> points = {});

/// Root number of the untwisted L-function of `form`, solved from the
/// split-point invariance of the AFE and averaged over test points. Snaps to
/// +-1 for self-dual forms. Throws ConvergenceError if the solve is
/// ill-conditioned at every test point or |epsilon| deviates from 1.
cdouble calibrate_epsilon(const newforms::Newform& form, CoefficientTable lambda);

/// L(f, 1/2, psi_D).
cdouble central_value(const TwistedLFunction& l, const AfeOptions& opts = {});

/// Max pairwise angular distance between arguments taken modulo pi.
/// Values with |v| <= zero_threshold are ignored; throws std::invalid_argument
/// if nothing is left.
double collinearity_deviation(std::span<const cdouble> values, double zero_threshold = 1e-10);

}  // namespace lowlying::lfunc
