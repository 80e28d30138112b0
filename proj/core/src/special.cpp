#include "lowlying/special.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "lowlying/errors.hpp"

namespace lowlying::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr int kMaxIterations = 200000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

bool near_nonpositive_integer(cdouble w) {
  const double r = std::round(w.real());
  return r <= 0.0 && std::abs(w - cdouble(r, 0.0)) < 1e-6;
}

cdouble lower_gamma_series(cdouble w, double x) {
  cdouble term = 1.0 / w;
  cdouble sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (w + static_cast<double>(n));
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(-x + w * std::log(x));
    }
  }
  throw ConvergenceError("lower incomplete gamma series did not converge");
}

cdouble upper_gamma_fraction(cdouble w, double x) {
  cdouble b = x + 1.0 - w;
  cdouble c = 1.0 / kTiny;
  cdouble d = 1.0 / b;
  cdouble h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const cdouble an = -static_cast<double>(i) * (static_cast<double>(i) - w);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const cdouble del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return std::exp(-x + w * std::log(x)) * h;
  }
  throw ConvergenceError("upper incomplete gamma continued fraction did not converge");
}

}  // namespace

cdouble log_gamma(cdouble z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) -
           log_gamma(1.0 - z);
  }
  z -= 1.0;
  cdouble x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cdouble t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cdouble gamma(cdouble z) { return std::exp(log_gamma(z)); }

cdouble upper_incomplete_gamma(cdouble w, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("upper_incomplete_gamma: x must be positive");
  if (x < std::max(w.real(), 0.0) + 1.0 && !near_nonpositive_integer(w)) {
    return gamma(w) - lower_gamma_series(w, x);
  }
  return upper_gamma_fraction(w, x);
}

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // Recompute the derivative at the converged node.
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace lowlying::special
