#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "lowlying/errors.hpp"
#include "lowlying/newforms.hpp"

using namespace lowlying;
using i128 = __int128;

namespace {

const cdouble kZeta6 = std::polar(1.0, std::numbers::pi / 3.0);

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (!sieve[p]) continue;
    out.push_back(p);
    for (std::int64_t q = p * p; q <= n; q += p) sieve[q] = false;
  }
  return out;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return b == 0 ? a : gcd(b, a % b); }

std::vector<std::int64_t> exact(const std::string& label, std::size_t n) {
  if (label == "11.2.a.a") return newforms::coeffs_eta_product(std::vector<newforms::EtaFactor>{{1, 2}, {11, 2}}, n);
  if (label == "7.3.b.a") return newforms::coeffs_eta_product(std::vector<newforms::EtaFactor>{{1, 3}, {7, 3}}, n);
  if (label == "7.4.a.a") return newforms::coeffs_theta_7_4(n);
  if (label == "3.6.a.a") return newforms::coeffs_theta_3_6(n);
  return newforms::coeffs_theta_3_8(n);
}

// sum over Z^4 of p(a,b,c,d) q^{f(a,b) + f(c,d)}, f(x,y) = x^2 + s x y + t y^2,
// divided by the raw coefficient of q.
template <class P>
std::vector<i128> quaternary_oracle(std::int64_t s, std::int64_t t, std::int64_t n_max, P&& p) {
  std::vector<i128> raw(n_max + 1, 0);
  const std::int64_t r = static_cast<std::int64_t>(std::sqrt(4.0 * n_max)) + 2;
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b) {
      const std::int64_t q1 = a * a + s * a * b + t * b * b;
      if (q1 > n_max) continue;
      for (std::int64_t c = -r; c <= r; ++c)
        for (std::int64_t d = -r; d <= r; ++d) {
          const std::int64_t q = q1 + c * c + s * c * d + t * d * d;
          if (q <= n_max) raw[q] += p(i128(a), i128(b), i128(c), i128(d));
        }
    }
  const i128 lead = raw[1];
  for (auto& v : raw) {
    EXPECT_TRUE(v % lead == 0);
    v /= lead;
  }
  return raw;
}

std::filesystem::path write_fixture(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("lowlying_test_" + name);
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(QuotedExpansions, QExpansions) {
  EXPECT_EQ(exact("11.2.a.a", 3), (std::vector<std::int64_t>{0, 1, -2, -1}));
  EXPECT_EQ(exact("7.3.b.a", 3), (std::vector<std::int64_t>{0, 1, -3, 0}));
  EXPECT_EQ(exact("7.4.a.a", 3), (std::vector<std::int64_t>{0, 1, -1, -2}));
  EXPECT_EQ(exact("3.6.a.a", 3), (std::vector<std::int64_t>{0, 1, -6, 9}));
  EXPECT_EQ(exact("3.8.a.a", 3), (std::vector<std::int64_t>{0, 1, 6, -27}));
  const auto a = newforms::coefficients(newforms::table_form("13.2.e.a"), 3);
  EXPECT_NEAR(std::abs(a[1] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a[2] - (-1.0 - kZeta6)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a[3] - (-2.0 + 2.0 * kZeta6)), 0.0, 1e-12);
}

TEST(QuotedExpansions, HeckeConsequences) {
  const auto f6 = exact("3.6.a.a", 9);
  EXPECT_EQ(f6[4], 4);
  EXPECT_EQ(f6[6], -54);
  const auto f8 = exact("3.8.a.a", 9);
  EXPECT_EQ(f8[4], -92);
  EXPECT_EQ(f8[9], 729);
  const auto f2 = exact("11.2.a.a", 100);
  EXPECT_EQ(f2[6], f2[2] * f2[3]);
}

TEST(EtaProduct, RejectsFractionalLeadingPower) {
  EXPECT_THROW(newforms::coeffs_eta_product(std::vector<newforms::EtaFactor>{{1, 1}}, 5), std::invalid_argument);
}

TEST(Theta, MatchesQuaternaryBruteForce) {
  constexpr std::int64_t n = 200;
  // Q'_7 + Q'_7 with the harmonic weight 2a^2 + 2ab - 3b^2.
  const auto o4 = quaternary_oracle(1, 2, n, [](i128 a, i128 b, i128, i128) { return 2 * a * a + 2 * a * b - 3 * b * b; });
  // Q'_3 + Q'_3 with the degree-4 weight.
  const auto o6 = quaternary_oracle(-1, 1, n, [](i128 a, i128 b, i128 c, i128 d) {
    return a * a * a * a - 2 * a * a * c * c - 2 * a * a * a * b + 4 * a * c * c * b + 3 * a * a * b * b -
           4 * b * b * c * c - 2 * a * b * b * b + b * b * b * b - 2 * a * b * c * d + 4 * c * b * b * d -
           2 * b * b * d * d;
  });
  auto p1 = [](i128 a, i128 b) {
    return 2 * a * a * a * a * a * a - 6 * a * a * a * a * a * b - 15 * a * a * a * a * b * b +
           40 * a * a * a * b * b * b - 15 * a * a * b * b * b * b - 6 * a * b * b * b * b * b +
           2 * b * b * b * b * b * b;
  };
  const auto o8 = quaternary_oracle(-1, 1, n, [&](i128 a, i128 b, i128 c, i128 d) { return p1(a, b) + p1(c, d); });
  const auto f4 = exact("7.4.a.a", n);
  const auto f6 = exact("3.6.a.a", n);
  const auto f8 = exact("3.8.a.a", n);
  for (std::int64_t i = 1; i <= n; ++i) {
    ASSERT_TRUE(o4[i] == f4[i]) << "7.4.a.a n=" << i;
    ASSERT_TRUE(o6[i] == f6[i]) << "3.6.a.a n=" << i;
    ASSERT_TRUE(o8[i] == f8[i]) << "3.8.a.a n=" << i;
  }
}

class HeckeExact : public ::testing::TestWithParam<std::string> {};

TEST_P(HeckeExact, MultiplicativityAndPrimePowers) {
  const auto form = newforms::table_form(GetParam());
  constexpr std::int64_t n = 2000;
  const auto a = exact(GetParam(), n);
  for (std::int64_t m = 2; m <= n; ++m)
    for (std::int64_t k = 2; m * k <= n; ++k)
      if (gcd(m, k) == 1) ASSERT_TRUE(i128(a[m * k]) == i128(a[m]) * a[k]) << m << "*" << k;
  for (std::int64_t p : primes_up_to(n)) {
    i128 chi_pk = 0;
    if (form.level % p != 0) {
      const cdouble chi = form.character(p);
      chi_pk = static_cast<i128>(std::llround(chi.real()));
      for (int j = 0; j < form.weight - 1; ++j) chi_pk *= p;
    }
    for (std::int64_t q = p, prev = 1; q * p <= n; prev = q, q *= p) {
      ASSERT_TRUE(i128(a[q * p]) == i128(a[p]) * a[q] - chi_pk * a[prev]) << "p=" << p << " q=" << q;
    }
  }
}

TEST_P(HeckeExact, DeligneBound) {
  const auto form = newforms::table_form(GetParam());
  const auto lambda = newforms::normalized_coefficients(form, 2000);
  for (std::int64_t p : primes_up_to(2000)) EXPECT_LE(std::abs(lambda[p]), 2.0 + 1e-12) << "p=" << p;
}

INSTANTIATE_TEST_SUITE_P(Forms, HeckeExact,
                         ::testing::Values("11.2.a.a", "7.3.b.a", "7.4.a.a", "3.6.a.a", "3.8.a.a"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s) if (c == '.') c = '_';
                           return s;
                         });

TEST(FileForm, HeckeRelations) {
  const auto form = newforms::table_form("13.2.e.a");
  constexpr std::int64_t n = 2000;
  const auto a = newforms::coefficients(form, n);
  for (std::int64_t m = 2; m <= n; ++m)
    for (std::int64_t k = 2; m * k <= n; ++k)
      if (gcd(m, k) == 1) ASSERT_LT(std::abs(a[m * k] - a[m] * a[k]), 1e-6 * (1.0 + std::abs(a[m * k])));
  for (std::int64_t p : primes_up_to(n)) {
    const cdouble chi_pk = form.level % p == 0 ? cdouble(0.0) : form.character(p) * static_cast<double>(p);
    for (std::int64_t q = p, prev = 1; q * p <= n; prev = q, q *= p) {
      ASSERT_LT(std::abs(a[q * p] - (a[p] * a[q] - chi_pk * a[prev])), 1e-6 * (1.0 + std::abs(a[q * p])));
    }
    EXPECT_LE(std::abs(a[p]), 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
  }
}

TEST(FileForm, LoadsTableRow) {
  const auto path = write_fixture("ok.csv", "n,re,im\n1,1,0\n2,-1.5,-0.8660254037844386\n");
  const auto a = newforms::load_coeffs_file(path);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_NEAR(std::abs(a[2] - (-1.0 - kZeta6)), 0.0, 1e-15);
}

TEST(FileForm, RejectsBadFiles) {
  EXPECT_THROW(newforms::load_coeffs_file(write_fixture("empty.csv", "")), MissingDataError);
  EXPECT_THROW(newforms::load_coeffs_file(write_fixture("header.csv", "n,re,im\n")), MissingDataError);
  EXPECT_THROW(newforms::load_coeffs_file(write_fixture("gap.csv", "n,re,im\n1,1,0\n3,0,0\n")), MissingDataError);
  EXPECT_THROW(newforms::load_coeffs_file(write_fixture("a1.csv", "n,re,im\n1,2,0\n")), MissingDataError);
  EXPECT_THROW(newforms::load_coeffs_file(write_fixture("bad.csv", "n,re,im\n1,1,x\n")), MissingDataError);
  EXPECT_THROW(newforms::load_coeffs_file(write_fixture("fields.csv", "n,re,im\n1,1\n")), MissingDataError);
  EXPECT_THROW(newforms::load_coeffs_file("/nonexistent/coeffs.csv"), MissingDataError);
}

TEST(FileForm, RoundTrip) {
  const std::vector<cdouble> a{0.0, 1.0, cdouble(-1.5, -0.8660254037844386), cdouble(0.25, 1e-17)};
  const auto path = std::filesystem::temp_directory_path() / "lowlying_test_roundtrip.csv";
  newforms::write_coeffs_file(path, a);
  const auto b = newforms::load_coeffs_file(path);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(FileForm, ShortFileIsMissingData) {
  const auto path = write_fixture("short.csv", "n,re,im\n1,1,0\n2,-1.5,-0.8660254037844386\n");
  const auto form = newforms::table_form("13.2.e.a", path);
  EXPECT_EQ(newforms::available_coefficients(form), 2u);
  EXPECT_THROW(newforms::coefficients(form, 10), MissingDataError);
}

TEST(Normalized, Values) {
  const auto l11 = newforms::normalized_coefficients(newforms::table_form("11.2.a.a"), 3);
  EXPECT_NEAR(l11[2].real(), -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(l11[1].real(), 1.0, 0.0);
  const auto l38 = newforms::normalized_coefficients(newforms::table_form("3.8.a.a"), 3);
  EXPECT_NEAR(l38[3].real(), -0.5773502691896258, 1e-15);
  const std::vector<cdouble> raw{0.0, 1.0, -2.0};
  EXPECT_NEAR(newforms::normalized_coeffs(raw, 2)[2].real(), -std::sqrt(2.0), 1e-15);
}

TEST(Table, LabelsAndErrors) {
  EXPECT_EQ(newforms::table_labels().size(), 6u);
  EXPECT_THROW(newforms::table_form("1.12.a.a"), std::invalid_argument);
  for (auto label : newforms::table_labels()) EXPECT_EQ(newforms::table_form(label).label, label);
}
