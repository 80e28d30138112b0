#include "lowlying/hardy_z.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lowlying/errors.hpp"
#include "lowlying/special.hpp"

namespace lowlying::lfunc {

namespace {

constexpr int kNodesPerPanel = 20;

double theta_cutoff(double p, double tolerance) {
  double y = std::max(p, 1.0) + 1.0;
  const double target = std::log(tolerance) - 5.0;
  while ((p + 1.0) * std::log(y) - y > target) y += 0.25;
  return y;
}

// Phi(u) = sum_n beta_n e^{-n u / A}, summed while n u / A <= y_max.
cdouble theta(std::span<const cdouble> beta, double u, double scale, double y_max) {
  const double step = u / scale;
  const auto n_max = static_cast<std::size_t>(y_max / step) + 1;
  if (n_max >= beta.size()) {
    throw ConvergenceError("hardy_z: coefficient table too short (" + std::to_string(beta.size() - 1) +
                           " < " + std::to_string(n_max) + ")");
  }
  const double r = std::exp(-step);
  cdouble sum = 0.0;
  double power = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if ((n & 63u) == 0) {
      power = std::exp(-static_cast<double>(n) * step);
    } else {
      power *= r;
    }
    sum += beta[n] * power;
  }
  return sum;
}

// Tabulates w_j * Phi(c e^{v_j}) (c e^{v_j})^{1/2 + mu} on [0, v_end].
void tabulate(std::span<const cdouble> beta, double c, double scale, double mu, double y_max, double t_max,
              std::vector<double>& nodes, std::vector<cdouble>& values) {
  const double v_end = std::max(std::log(y_max * scale / c), 0.5);
  const auto& rule = special::gauss_legendre(kNodesPerPanel);
  double v = 0.0;
  while (v < v_end) {
    const double u = c * std::exp(v);
    double h = std::min({0.25, 8.0 / t_max, 2.0 * scale / u});
    h = std::min(h, v_end - v);
    if (h < 1e-12) break;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double vj = v + 0.5 * h * (rule.nodes[j] + 1.0);
      const double uj = c * std::exp(vj);
      const cdouble phi = theta(beta, uj, scale, y_max);
      nodes.push_back(vj);
      values.push_back(0.5 * h * rule.weights[j] * phi * std::pow(uj, 0.5 + mu));
    }
    v += h;
  }
}

cdouble fourier(const std::vector<double>& nodes, const std::vector<cdouble>& values, double t) {
  cdouble sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double a = t * nodes[j];
    sum += values[j] * cdouble(std::cos(a), std::sin(a));
  }
  return sum;
}

double gamma_modulus(double scale, double mu, double t) {
  return std::exp(0.5 * std::log(scale) + special::log_gamma(cdouble(0.5 + mu, t)).real());
}

cdouble principal_rotation(cdouble sign) { return std::polar(1.0, -0.5 * std::arg(sign)); }

}  // namespace

HardyZ::HardyZ(const TwistedLFunction& l, const HardyZOptions& opts)
    : opts_(opts),
      label_(l.form().label),
      d_(l.discriminant()),
      conductor_(l.conductor()),
      sign_(l.sign()),
      mu_(l.mu()),
      scale_(l.scale()) {
  if (!(opts_.split > 0.0) || !(opts_.t_max > 0.0)) throw std::invalid_argument("HardyZ: bad options");
  const auto b = l.twisted();
  std::vector<cdouble> beta(b.size());
  std::vector<cdouble> beta_conj(b.size());
  for (std::size_t n = 1; n < b.size(); ++n) {
    const double w = std::pow(static_cast<double>(n) / scale_, mu_);
    beta[n] = b[n] * w;
    beta_conj[n] = std::conj(b[n]) * w;
  }
  const double y_max = theta_cutoff(mu_ + 1.0, opts_.tolerance);
  tabulate(beta, opts_.split, scale_, mu_, y_max, opts_.t_max, v1_, h1_);
  tabulate(beta_conj, 1.0 / opts_.split, scale_, mu_, y_max, opts_.t_max, v2_, h2_);

  rotation_ = principal_rotation(sign_);
  const cdouble z0 = rotated(0.0);
  if (z0.real() < 0.0) rotation_ = -rotation_;
}

cdouble HardyZ::lambda(double t) const {
  if (std::abs(t) > opts_.t_max) throw std::invalid_argument("HardyZ: |t| beyond t_max");
  const double c = opts_.split;
  const cdouble direct = std::polar(1.0, t * std::log(c)) * fourier(v1_, h1_, t);
  const cdouble dual = std::polar(1.0, t * std::log(c)) * fourier(v2_, h2_, -t);
  return direct + sign_ * dual;
}

cdouble HardyZ::rotated(double t) const { return rotation_ * lambda(t) / gamma_modulus(scale_, mu_, t); }

double HardyZ::operator()(double t) const {
  const cdouble z = rotated(t);
  if (std::abs(z.imag()) > opts_.z_imag * std::max(1.0, std::abs(z.real()))) {
    throw ConvergenceError("hardy_z: imaginary residue " + std::to_string(z.imag()) + " at t = " +
                           std::to_string(t) + " for " + label_ + ", D = " + std::to_string(d_));
  }
  return z.real();
}

double hardy_z(const TwistedLFunction& l, double t, const Tolerances& tol) {
  AfeOptions opts;
  opts.tolerance = tol.afe;
  opts.split = 1.1;
  cdouble rotation = principal_rotation(l.sign());
  if ((rotation * completed_lambda(l, 0.5, opts)).real() < 0.0) rotation = -rotation;
  const cdouble z = rotation * completed_lambda(l, cdouble(0.5, t), opts) / gamma_modulus(l.scale(), l.mu(), t);
  if (std::abs(z.imag()) > tol.z_imag * std::max(1.0, std::abs(z.real()))) {
    throw ConvergenceError("hardy_z: imaginary residue " + std::to_string(z.imag()));
  }
  return z.real();
}

double default_grid_step(std::int64_t conductor) {
  return 0.1 / std::log(static_cast<double>(std::max<std::int64_t>(conductor, 3)));
}

ZeroList lowest_zeros(const HardyZ& z, std::size_t count, double t_max, std::optional<double> grid_step,
                      const Tolerances& tol, double central_threshold) {
  if (count < 1) throw std::invalid_argument("lowest_zeros: count must be >= 1");
  if (t_max > z.t_max()) throw std::invalid_argument("lowest_zeros: t_max beyond the evaluator's range");
  const double step = grid_step.value_or(default_grid_step(z.conductor()));
  if (!(step > 0.0)) throw std::invalid_argument("lowest_zeros: grid_step must be positive");

  ZeroList out;
  out.label = z.label();
  out.discriminant = z.discriminant();
  out.z_at_zero = z(0.0);
  out.central_zero = std::abs(out.z_at_zero) < central_threshold;

  double t_prev = 0.0;
  double z_prev = out.z_at_zero;
  std::size_t i = 1;
  if (out.central_zero) {
    t_prev = step;
    z_prev = z(step);
    i = 2;
  }
  for (; out.ordinates.size() < count; ++i) {
    const double t_next = std::min(step * static_cast<double>(i), t_max);
    if (t_next <= t_prev) break;
    const double z_next = z(t_next);
    if (z_next == 0.0) {
      out.ordinates.push_back(t_next);
    } else if (z_prev != 0.0 && std::signbit(z_prev) != std::signbit(z_next)) {
      double lo = t_prev, hi = t_next, z_lo = z_prev;
      while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        const double z_mid = z(mid);
        if (std::abs(z_mid) < tol.zero * 1e-3 || z_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(z_mid) == std::signbit(z_lo)) {
          lo = mid;
          z_lo = z_mid;
        } else {
          hi = mid;
        }
      }
      out.ordinates.push_back(0.5 * (lo + hi));
    }
    t_prev = t_next;
    z_prev = z_next;
  }
  if (out.ordinates.size() < count) {
    throw ConvergenceError("lowest_zeros: found " + std::to_string(out.ordinates.size()) + " of " +
                           std::to_string(count) + " zeros below t = " + std::to_string(t_max));
  }
  return out;
}

}  // namespace lowlying::lfunc
