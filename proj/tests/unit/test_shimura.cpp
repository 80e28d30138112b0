#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "lowlying/errors.hpp"
#include "lowlying/family.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/shimura.hpp"

using namespace lowlying;
using newforms::ThetaConstruction;

namespace {

int legendre(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  std::int64_t r = 1;
  for (std::int64_t e = 0; e < (p - 1) / 2; ++e) r = r * a % p;
  return r == 1 ? 1 : -1;
}

// Box enumeration of the ternary sums, characters by Euler's criterion.
std::vector<std::int64_t> ternary_oracle(ThetaConstruction c, std::int64_t d_max) {
  std::int64_t qa, qb, qc, qe, ell, norm;
  if (c == ThetaConstruction::level7_weight4) {
    qa = 4, qb = 4, qc = 8, qe = 7, ell = 11, norm = 4;
  } else {
    qa = 4, qb = 4, qc = 4, qe = 3, ell = 7, norm = 6;
  }
  const std::int64_t n = ell * d_max;
  // 4x^2 + 4xy + c y^2 >= (c - 1) y^2 and >= (4 - 4/c) x^2.
  const auto bx = static_cast<std::int64_t>(std::sqrt(n / (4.0 - 4.0 / qc))) + 1;
  const auto by = static_cast<std::int64_t>(std::sqrt(n / (qc - 1.0))) + 1;
  const auto bz = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n) / qe)) + 1;
  std::vector<std::int64_t> raw(d_max + 1, 0);
  for (std::int64_t x = -bx; x <= bx; ++x)
    for (std::int64_t y = -by; y <= by; ++y)
      for (std::int64_t z = -bz; z <= bz; ++z) {
        const std::int64_t q = qa * x * x + qb * x * y + qc * y * y + qe * z * z;
        if (q > n || q % ell != 0) continue;
        std::int64_t p = 0;
        int w = 0;
        const int w7 = ((4 * x + 5 * y) % 7 != 0) ? legendre(4 * x + 5 * y, 7) : legendre(2 * x, 7);
        switch (c) {
          case ThetaConstruction::level7_weight4:
            p = x;
            w = ((-2 * x + y) % 11 != 0) ? legendre(-2 * x + y, 11) : legendre(x, 11);
            break;
          case ThetaConstruction::level3_weight6:
            p = 2 * x * x + 2 * x * y + 2 * y * y - 3 * z * z;
            w = w7 * legendre(2 * x + y, 3);
            break;
          case ThetaConstruction::level3_weight8:
            p = 2 * x * x * x + 3 * x * x * y - 3 * x * y * y - 2 * y * y * y;
            w = w7;
            break;
        }
        raw[q / ell] += p * w;
      }
  for (auto& v : raw) {
    EXPECT_EQ(v % norm, 0);
    v /= norm;
  }
  return raw;
}

struct Case {
  const char* label;
  ThetaConstruction construction;
};

const Case kCases[] = {{"7.4.a.a", ThetaConstruction::level7_weight4},
                       {"3.6.a.a", ThetaConstruction::level3_weight6},
                       {"3.8.a.a", ThetaConstruction::level3_weight8}};

}  // namespace

class Lift : public ::testing::TestWithParam<Case> {};

TEST_P(Lift, ReferenceAndFastMatchBoxEnumeration) {
  const auto c = GetParam().construction;
  const auto oracle = ternary_oracle(c, 50);
  const auto reference = shimura::gplus_reference(c, 50);
  const auto fast = shimura::gplus_fast(c, 400);
  const auto ref400 = shimura::gplus_reference(c, 400);
  for (std::int64_t d = 1; d <= 50; ++d) EXPECT_EQ(reference[d], oracle[d]) << "D=" << d;
  for (std::int64_t d = 1; d <= 400; ++d) EXPECT_EQ(fast[d], ref400[d]) << "D=" << d;
}

TEST_P(Lift, CoefficientsAtFundamentalDAreIntegralAfterContent) {
  auto form = newforms::table_form(GetParam().label);
  const auto lift = shimura::make_lift(form, 2000);
  for (const auto& d : arith::fundamental_discriminants(2000)) {
    if (arith::gcd(d.value(), form.level) != 1) {
      EXPECT_THROW(lift.coefficient(d.value()), std::invalid_argument);
      continue;
    }
    EXPECT_EQ(lift.c[d.value()] % lift.content, 0) << "D=" << d.value();
  }
  EXPECT_THROW(lift.coefficient(2001 * 4 + 1), MissingDataError);
  EXPECT_THROW(lift.coefficient(9), std::invalid_argument);
}

TEST_P(Lift, KohnenZagierMatchesDirectValues) {
  auto form = newforms::table_form(GetParam().label);
  constexpr std::int64_t x = 600;
  const auto lambda = std::make_shared<const std::vector<cdouble>>(
      newforms::normalized_coefficients(form, lfunc::coefficients_needed(form, x)));
  form.epsilon = lfunc::calibrate_epsilon(form, lambda);
  auto lift = shimura::make_lift(form, x);
  const auto ds = arith::admissible_discriminants(form, arith::default_selector(form, x));

  std::vector<std::int64_t> nonzero;
  for (const auto& d : ds) {
    if (lift.coefficient(d.value()) != 0) nonzero.push_back(d.value());
  }
  ASSERT_GE(nonzero.size(), 12u);
  EXPECT_THROW(shimura::central_value_kz(lift, nonzero[0]), std::logic_error);
  const double k1 = shimura::calibrate_kappa(lift, form, lambda, nonzero[0]);
  auto other = lift;
  const double k2 = shimura::calibrate_kappa(other, form, lambda, nonzero[1]);
  EXPECT_GT(k1, 0.0);
  EXPECT_NEAR(k1 / k2, 1.0, 1e-4);
  EXPECT_EQ(lift.reference_d.value(), nonzero[0]);

  for (std::size_t i = 0; i < ds.size(); i += std::max<std::size_t>(1, ds.size() / 10)) {
    const std::int64_t d = ds[i].value();
    const double direct = lfunc::central_value(lfunc::make_twist(form, ds[i], lambda)).real();
    const double kz = shimura::central_value_kz(lift, d);
    const double threshold = shimura::discretization_threshold(lift, d);
    if (kz == 0.0) {
      EXPECT_LT(std::abs(direct), 1e-8 * threshold + 1e-12);
    } else {
      EXPECT_NEAR(direct / kz, 1.0, 1e-4) << "D=" << d;
      EXPECT_GE(kz, threshold * (1.0 - 1e-12));
    }
    EXPECT_NEAR(threshold * std::pow(static_cast<double>(d), 0.5 * (form.weight - 1)), k1, 1e-9 * k1);
  }
}

INSTANTIATE_TEST_SUITE_P(Forms, Lift, ::testing::ValuesIn(kCases), [](const auto& info) {
  std::string s = info.param.label;
  for (auto& ch : s) if (ch == '.') ch = '_';
  return s;
});

TEST(Lift, ThresholdDecreasesInD) {
  auto form = newforms::table_form("7.4.a.a");
  auto lift = shimura::make_lift(form, 100);
  shimura::calibrate_kappa(lift, 8, 1.2983692192130458);
  double prev = shimura::discretization_threshold(lift, 5);
  for (std::int64_t d : {8, 13, 17, 24, 29, 37, 40, 41}) {
    const double t = shimura::discretization_threshold(lift, d);
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(Lift, RejectsFormsWithoutTheta) {
  EXPECT_THROW(shimura::make_lift(newforms::table_form("11.2.a.a"), 100), std::invalid_argument);
  EXPECT_THROW(shimura::make_lift(newforms::table_form("13.2.e.a"), 100), std::invalid_argument);
}

TEST(Lift, ZeroCoefficientCannotCalibrate) {
  auto form = newforms::table_form("7.4.a.a");
  auto lift = shimura::make_lift(form, 100);
  std::int64_t zero_d = 0;
  for (const auto& d : arith::fundamental_discriminants(100)) {
    if (d.value() % 7 != 0 && lift.coefficient(d.value()) == 0) {
      zero_d = d.value();
      break;
    }
  }
  ASSERT_NE(zero_d, 0);
  EXPECT_THROW(shimura::calibrate_kappa(lift, zero_d, 1.0), std::invalid_argument);
}

TEST(Lift, KappaFromMinimum) {
  const std::vector<std::pair<std::int64_t, double>> values{{5, 0.0}, {8, 2.0 / std::sqrt(8.0)}, {13, 3.0 / std::sqrt(13.0)}};
  EXPECT_NEAR(shimura::kappa_from_minimum(values, 2), 2.0, 1e-12);
  const std::vector<std::pair<std::int64_t, double>> none{{5, 0.0}};
  EXPECT_THROW(shimura::kappa_from_minimum(none, 2), std::invalid_argument);
}
