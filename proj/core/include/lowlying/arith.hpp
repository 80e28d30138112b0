#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace lowlying {

enum class FamilyKind { principal, self_cm, non_self_dual };

const char* to_string(FamilyKind kind);

namespace arith {

/// Kronecker symbol (d/n), extended to all integers n (including n <= 0 and
/// even n). Completely multiplicative in n.
int kronecker(std::int64_t d, std::int64_t n);

bool is_squarefree(std::int64_t n);

/// True for positive fundamental discriminants d > 1.
bool is_fundamental_discriminant(std::int64_t d);

// A positive fundamental discriminant D > 1: D = 1 mod 4 squarefree, or
// D = 4m with m = 2,3 mod 4 squarefree.
class FundamentalDiscriminant {
 public:
  // Throws std::invalid_argument if d is not a fundamental discriminant > 1.
  explicit FundamentalDiscriminant(std::int64_t d);

  std::int64_t value() const { return d_; }
  operator std::int64_t() const { return d_; }

  auto operator<=>(const FundamentalDiscriminant&) const = default;

 private:
  struct Unchecked {};
  FundamentalDiscriminant(std::int64_t d, Unchecked) : d_(d) {}
  friend std::vector<FundamentalDiscriminant> fundamental_discriminants(std::int64_t);

  std::int64_t d_;
};

/// All fundamental discriminants D with 1 < D <= x_max, ascending.
std::vector<FundamentalDiscriminant> fundamental_discriminants(std::int64_t x_max);

std::int64_t gcd(std::int64_t a, std::int64_t b);

}  // namespace arith
}  // namespace lowlying
