#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lowlying/lfunc.hpp"

namespace lowlying::lfunc {

struct HardyZOptions {
  // Largest |t| the quadrature is sized for. The Fourier integrals cancel down
  // to |Lambda| ~ e^{-pi t / 2}, so double precision gives about 1e-8 relative
  // accuracy near t = 12 and the imaginary-residue check trips near t = 15.
  double t_max = 16.0;
  double split = 1.1;      // Mellin split point; != 1 so the reality check means something
  double tolerance = 1e-13;
  double z_imag = 1e-6;    // allowed |Im| relative to max(1, |Re|)
};

// Hardy Z-function on the critical line,
//   Z(t) = rho * Lambda(1/2 + it) / |A^{1/2} Gamma(1/2 + mu + it)|,
// with rho = sign^{-1/2} and the branch chosen so that Z(0) >= 0. Dividing by
// the modulus of the gamma factor keeps |Z| on the scale of |L(1/2 + it)|.
//
// Lambda(1/2 + it) is evaluated as two Fourier integrals over v = log(u / c) of
// the theta function Phi(u) = sum b_n (n/A)^mu e^{-n u / A}, tabulated once at
// the Gauss-Legendre nodes; each Z(t) then costs one pass over the nodes.
class HardyZ {
 public:
  explicit HardyZ(const TwistedLFunction& l, const HardyZOptions& opts = {});

  /// Throws ConvergenceError when the imaginary residue exceeds z_imag and
  /// std::invalid_argument for |t| > t_max.
  double operator()(double t) const;

  /// Rotated and normalized value before the imaginary part is dropped.
  cdouble rotated(double t) const;

  /// Lambda(1/2 + it) from the quadrature.
  cdouble lambda(double t) const;

  const std::string& label() const { return label_; }
  std::int64_t discriminant() const { return d_; }
  std::int64_t conductor() const { return conductor_; }
  double t_max() const { return opts_.t_max; }
  std::size_t nodes() const { return v1_.size() + v2_.size(); }

 private:
  HardyZOptions opts_;
  std::string label_;
  std::int64_t d_;
  std::int64_t conductor_;
  cdouble sign_;
  double mu_;
  double scale_;
  cdouble rotation_ = 1.0;
  std::vector<double> v1_, v2_;     // nodes
  std::vector<cdouble> h1_, h2_;    // weight * integrand at the nodes
};

/// Reference Z(t) straight from completed_lambda (incomplete-gamma AFE).
double hardy_z(const TwistedLFunction& l, double t, const Tolerances& tol = {});

struct ZeroList {
  std::string label;
  std::int64_t discriminant = 0;
  std::vector<double> ordinates;  // ascending, t > 0
  bool central_zero = false;      // Z(0) vanished; never counted among the ordinates
  double z_at_zero = 0.0;
};

/// grid_step defaults to 0.1 / log(conductor).
double default_grid_step(std::int64_t conductor);

/// Scans Z on (0, t_max] and bisects each sign change until the bracket is
/// below 1e-11 or |Z| < tol.zero. Throws ConvergenceError if fewer than
/// `count` zeros are found.
ZeroList lowest_zeros(const HardyZ& z, std::size_t count, double t_max,
                      std::optional<double> grid_step = std::nullopt, const Tolerances& tol = {},
                      double central_threshold = 1e-10);

}  // namespace lowlying::lfunc
