// Generates the q-expansion of the weight-2 newform of level 13 with
// character of order 6 (label 13.2.e.a) and writes it as `n,re,im` CSV.
//
// Construction: with psi the odd character mod 13 of order 12 and psi(2) =
// e^{2 pi i / 12}, G = (E_1^psi)^2 lies in M_2(13, psi^2). Applying
// (T_2 - lambda_1)(T_2 - lambda_2), where lambda_i are the T_2-eigenvalues of
// the two Eisenstein series, leaves a multiple of the newform. a_p is
// recovered for every prime p, rounded into Z[zeta_6], and the remaining
// coefficients follow from multiplicativity and the Hecke recursion.

#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <vector>

#include "CLI11.hpp"
#include "lowlying/newforms.hpp"

namespace {

using cdouble = std::complex<double>;
constexpr std::int64_t kLevel = 13;

struct Generator {
  std::vector<cdouble> psi = std::vector<cdouble>(kLevel, 0.0);
  std::vector<cdouble> chi = std::vector<cdouble>(kLevel, 0.0);
  std::vector<cdouble> e1;  // E_1^psi
  cdouble lambda1, lambda2, chi2;

  explicit Generator(std::size_t n_max) {
    std::int64_t x = 1;
    for (int k = 0; k < kLevel - 1; ++k) {
      psi[x] = std::polar(1.0, 2.0 * std::numbers::pi * k / 12.0);
      chi[x] = psi[x] * psi[x];
      x = x * 2 % kLevel;
    }
    cdouble b1 = 0.0;
    for (int a = 1; a < kLevel; ++a) b1 += psi[a] * static_cast<double>(a);
    b1 /= static_cast<double>(kLevel);
    e1.assign(n_max + 1, 0.0);
    e1[0] = -b1 / 2.0;
    for (std::size_t d = 1; d <= n_max; ++d) {
      for (std::size_t n = d; n <= n_max; n += d) e1[n] += psi[d % kLevel];
    }
    chi2 = chi[2];
    lambda1 = 1.0 + 2.0 * chi2;
    lambda2 = chi2 + 2.0;
  }

  cdouble g(std::size_t n) const {
    cdouble s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) s += e1[i] * e1[n - i];
    return s;
  }
  cdouble t2g(std::size_t n) const {
    cdouble v = g(2 * n);
    if (n % 2 == 0) v += 2.0 * chi2 * g(n / 2);
    return v;
  }
  cdouble t2t2g(std::size_t n) const {
    cdouble v = t2g(2 * n);
    if (n % 2 == 0) v += 2.0 * chi2 * t2g(n / 2);
    return v;
  }
  cdouble projected(std::size_t n) const {
    return t2t2g(n) - (lambda1 + lambda2) * t2g(n) + lambda1 * lambda2 * g(n);
  }
};

// Nearest element of Z[zeta_6]; returns the rounding distance through `residual`.
cdouble round_eisenstein(cdouble z, double& residual) {
  const double y = std::round(2.0 * z.imag() / std::sqrt(3.0));
  const double x = std::round(z.real() - y / 2.0);
  const cdouble r(x + y / 2.0, y * std::sqrt(3.0) / 2.0);
  residual = std::abs(z - r);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate coefficients of the newform 13.2.e.a"};
  std::size_t n_max = 80000;
  std::string out = "13.2.e.a.csv";
  std::size_t check = 300;
  app.add_option("-n,--count", n_max, "number of coefficients")->check(CLI::Range(1, 10000000));
  app.add_option("-o,--output", out, "output CSV path");
  app.add_option("--check", check, "compare composite indices up to this bound against the projection");
  CLI11_PARSE(app, argc, argv);

  const Generator gen(4 * std::max(n_max, check) + 4);
  const cdouble f1 = gen.projected(1);

  std::vector<bool> composite(n_max + 1, false);
  std::vector<cdouble> a(n_max + 1, 0.0);
  a[1] = 1.0;
  double worst = 0.0;
  for (std::size_t p = 2; p <= n_max; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p * p; m <= n_max; m += p) composite[m] = true;
    double residual = 0.0;
    a[p] = round_eisenstein(gen.projected(p) / f1, residual);
    worst = std::max(worst, residual);
  }
  if (worst > 1e-3) {
    std::cerr << "rounding into Z[zeta_6] failed, residual " << worst << "\n";
    return 3;
  }

  // Prime powers by the Hecke recursion, then multiplicativity via the
  // smallest prime factor.
  std::vector<std::size_t> spf(n_max + 1, 0);
  for (std::size_t p = 2; p <= n_max; ++p) {
    if (spf[p] != 0) continue;
    for (std::size_t m = p; m <= n_max; m += p) {
      if (spf[m] == 0) spf[m] = p;
    }
  }
  for (std::size_t n = 2; n <= n_max; ++n) {
    const std::size_t p = spf[n];
    std::size_t q = n;
    std::size_t pr = 1;
    while (q % p == 0) {
      q /= p;
      pr *= p;
    }
    if (q != 1) {
      a[n] = a[pr] * a[q];
    } else if (pr != p) {
      const cdouble chi_p = gen.chi[p % kLevel];
      a[n] = a[p] * a[n / p] - chi_p * static_cast<double>(p) * a[n / p / p];
      double residual = 0.0;
      a[n] = round_eisenstein(a[n], residual);
    }
  }

  for (std::size_t n = 2; n <= std::min(check, n_max); ++n) {
    const double diff = std::abs(gen.projected(n) / f1 - a[n]);
    if (diff > 1e-6) {
      std::cerr << "projection disagrees with the multiplicative fill at n = " << n << "\n";
      return 3;
    }
  }

  lowlying::newforms::write_coeffs_file(out, a);
  std::cerr << "wrote " << n_max << " coefficients to " << out << " (max rounding residual " << worst << ")\n";
  return 0;
}
