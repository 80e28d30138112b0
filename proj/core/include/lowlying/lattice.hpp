#pragma once

#include <cmath>
#include <cstdint>

namespace lowlying::lattice {

// Calls f(x, y, q) for every integer point with
// q = a x^2 + b x y + c y^2 <= bound. The form must be positive definite.
template <class F>
void for_each_binary_point(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t bound,
                           F&& f) {
  if (bound < 0) return;
  const double disc = 4.0 * static_cast<double>(a) * c - static_cast<double>(b) * b;
  const auto y_max =
      static_cast<std::int64_t>(std::floor(std::sqrt(4.0 * a * static_cast<double>(bound) / disc))) + 1;
  for (std::int64_t y = -y_max; y <= y_max; ++y) {
    const double rad = static_cast<double>(b) * b * y * y -
                       4.0 * a * (static_cast<double>(c) * y * y - static_cast<double>(bound));
    if (rad < 0.0) continue;
    const double s = std::sqrt(rad);
    const auto x_lo = static_cast<std::int64_t>(std::floor((-b * y - s) / (2.0 * a))) - 1;
    const auto x_hi = static_cast<std::int64_t>(std::ceil((-b * y + s) / (2.0 * a))) + 1;
    for (std::int64_t x = x_lo; x <= x_hi; ++x) {
      const std::int64_t q = a * x * x + b * x * y + c * y * y;
      if (q <= bound) f(x, y, q);
    }
  }
}

// Calls f(x, y, z, q) for q = a x^2 + b x y + c y^2 + e z^2 <= bound.
template <class F>
void for_each_ternary_point(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e,
                            std::int64_t bound, F&& f) {
  if (bound < 0) return;
  const auto z_max = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(bound) / e))) + 1;
  for (std::int64_t z = -z_max; z <= z_max; ++z) {
    const std::int64_t rest = bound - e * z * z;
    if (rest < 0) continue;
    for_each_binary_point(a, b, c, rest, [&](std::int64_t x, std::int64_t y, std::int64_t q) {
      f(x, y, z, q + e * z * z);
    });
  }
}

}  // namespace lowlying::lattice
