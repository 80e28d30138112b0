#include "lowlying/arith.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lowlying {

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::principal: return "principal";
    case FamilyKind::self_cm: return "self_cm";
    case FamilyKind::non_self_dual: return "non_self_dual";
  }
  return "?";
}

namespace arith {

namespace {
// (2/n) for odd n, indexed by n mod 8.
constexpr int kTwoTable[8] = {0, 1, 0, -1, 0, -1, 0, 1};
}  // namespace

int kronecker(std::int64_t a, std::int64_t b) {
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (b & 1) == 0) return 0;

  int v = 0;
  while ((b & 1) == 0) {
    b /= 2;
    ++v;
  }
  int k = (v % 2 == 0) ? 1 : kTwoTable[a & 7];
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }

  // b is odd and positive from here on.
  for (;;) {
    if (a == 0) return b > 1 ? 0 : k;
    v = 0;
    while ((a & 1) == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) k *= kTwoTable[b & 7];
    if (a & b & 2) k = -k;
    const std::int64_t r = a < 0 ? -a : a;
    a = b % r;
    b = r;
  }
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d <= 1) return false;
  if (d % 4 == 1) return is_squarefree(d);
  if (d % 4 != 0) return false;
  const std::int64_t m = d / 4;
  return (m % 4 == 2 || m % 4 == 3) && is_squarefree(m);
}

FundamentalDiscriminant::FundamentalDiscriminant(std::int64_t d) : d_(d) {
  if (!is_fundamental_discriminant(d)) {
    throw std::invalid_argument(std::to_string(d) +
                                " is not a positive fundamental discriminant > 1");
  }
}

std::vector<FundamentalDiscriminant> fundamental_discriminants(std::int64_t x_max) {
  if (x_max < 1) throw std::invalid_argument("fundamental_discriminants: x_max must be >= 1");

  // Sieve out multiples of odd squares and 16 so the per-candidate test is O(1).
  std::vector<bool> odd_square_free(static_cast<std::size_t>(x_max) + 1, true);
  for (std::int64_t p = 3; p * p <= x_max; p += 2) {
    for (std::int64_t m = p * p; m <= x_max; m += p * p) odd_square_free[m] = false;
  }

  std::vector<FundamentalDiscriminant> out;
  for (std::int64_t d = 2; d <= x_max; ++d) {
    bool ok = false;
    if (d % 4 == 1) {
      ok = odd_square_free[d];
    } else if (d % 4 == 0) {
      const std::int64_t m = d / 4;
      ok = (m % 4 == 2 || m % 4 == 3) && odd_square_free[m];
    }
    if (ok) out.push_back(FundamentalDiscriminant(d, FundamentalDiscriminant::Unchecked{}));
  }
  return out;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace arith
}  // namespace lowlying
