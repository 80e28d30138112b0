#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowlying/errors.hpp"
#include "lowlying/ensembles.hpp"

using namespace lowlying;
using namespace lowlying::ensembles;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

void expect_paired(const std::vector<double>& phases) {
  std::vector<double> neg(phases.size());
  std::transform(phases.begin(), phases.end(), neg.begin(), [](double t) { return -t; });
  std::sort(neg.begin(), neg.end());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    // +-pi are the same point; compare on the circle.
    const double d = std::remainder(phases[i] - neg[i], 2.0 * std::numbers::pi);
    EXPECT_LT(std::abs(d), 1e-9);
  }
}

}  // namespace

TEST(Rng, DeterministicAndStreamed) {
  Rng a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 10; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    EXPECT_NE(x, c.normal());
  }
  Rng u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(Groups, Parse) {
  EXPECT_EQ(parse_group("usp"), Group::USp);
  EXPECT_EQ(parse_group("SO"), Group::SO);
  EXPECT_EQ(to_string(Group::U), "U");
  EXPECT_THROW(parse_group("GL"), std::invalid_argument);
}

TEST(Unitary, DefiningProperty) {
  Rng rng(1, 0);
  for (int n : {1, 2, 7, 20}) {
    const auto a = haar_unitary(n, rng);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    EXPECT_LT((a.adjoint() * a - id).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Unitary, TraceMoments) {
  constexpr int draws = 4000;
  std::complex<double> mean = 0.0;
  double second = 0.0;
  for (int i = 0; i < draws; ++i) {
    Rng rng(11, i);
    const auto a = haar_unitary(20, rng);
    const auto tr = a.trace();
    mean += tr;
    second += std::norm(tr);
  }
  mean /= draws;
  second /= draws;
  EXPECT_LT(std::abs(mean), 0.08);
  EXPECT_NEAR(second, 1.0, 0.08);
}

TEST(Unitary, PhasesUniform) {
  std::vector<int> bins(10, 0);
  int total = 0;
  for (int i = 0; i < 2000; ++i) {
    for (double t : sample(Group::U, 10, 5, i).eigenphases) {
      ++bins[std::min(9, static_cast<int>((t + std::numbers::pi) / (2 * std::numbers::pi) * 10))];
      ++total;
    }
  }
  for (int b : bins) EXPECT_NEAR(b / (total / 10.0), 1.0, 0.08);
}

TEST(SpecialOrthogonal, DeterminantAndPairs) {
  Rng rng(2, 0);
  for (int i = 0; i < 50; ++i) {
    const auto a = haar_special_orthogonal(12, rng);
    EXPECT_NEAR(a.determinant(), 1.0, 1e-9);
    EXPECT_LT((a.transpose() * a - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-10);
    expect_paired(eigenphases(a));
  }
  EXPECT_THROW(haar_special_orthogonal(5, rng), std::invalid_argument);
}

TEST(UnitarySymplectic, DefiningProperties) {
  Rng rng(3, 0);
  const Eigen::MatrixXcd j = symplectic_form(10).cast<std::complex<double>>();
  for (int i = 0; i < 50; ++i) {
    const auto a = haar_unitary_symplectic(10, rng);
    EXPECT_LT((a.adjoint() * a - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((a.transpose() * j * a - j).cwiseAbs().maxCoeff(), 1e-9);
    const auto phases = eigenphases(a);
    expect_paired(phases);
    double sum = 0.0;
    for (double t : phases) sum += t;
    EXPECT_NEAR(std::remainder(sum, 2 * std::numbers::pi), 0.0, 1e-8);
  }
  EXPECT_THROW(haar_unitary_symplectic(7, rng), std::invalid_argument);
}

TEST(Eigenphases, SimpleMatrices) {
  const auto id = eigenphases(Eigen::MatrixXd::Identity(4, 4).eval());
  for (double t : id) EXPECT_EQ(t, 0.0);
  Eigen::MatrixXd r(2, 2);
  const double t = std::numbers::pi / 3;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const auto p = eigenphases(r);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0], -t, 1e-14);
  EXPECT_NEAR(p[1], t, 1e-14);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
  EXPECT_THROW(eigenphases(bad), ConvergenceError);
}

TEST(CharPoly, Values) {
  EXPECT_NEAR(char_poly_at_one(Eigen::MatrixXd::Identity(3, 3).eval()), 0.0, 1e-15);
  Eigen::MatrixXd r(2, 2);
  r << -1, 0, 0, -1;
  EXPECT_NEAR(char_poly_at_one(r), 4.0, 1e-14);
  Rng rng(4, 0);
  const auto a = haar_special_orthogonal(8, rng);
  const auto phases = eigenphases(a);
  double product = 1.0;
  for (double t : phases) {
    if (t > 0) product *= 2.0 * (1.0 - std::cos(t));
  }
  EXPECT_NEAR(char_poly_at_one(a) / product, 1.0, 1e-10);
}

TEST(LowestPhase, Conventions) {
  const std::vector<double> p{-0.1, 0.3, 2.0};
  EXPECT_EQ(lowest_phase(p), 0.3);
  EXPECT_EQ(lowest_phase(p, LowestPhase::smallest_absolute), 0.1);
  EXPECT_TRUE(std::isinf(lowest_phase(std::vector<double>{-0.2})));
}

TEST(Sample, BitIdenticalReplay) {
  for (Group g : {Group::U, Group::SO, Group::USp}) {
    const auto a = sample(g, 10, 99, 5);
    const auto b = sample(g, 10, 99, 5);
    EXPECT_EQ(a.eigenphases, b.eigenphases);
    EXPECT_EQ(a.lambda_at_one, b.lambda_at_one);
    EXPECT_EQ(a.seed, 99u);
    EXPECT_EQ(a.draw, 5u);
  }
}

TEST(Sample, HaarInvarianceSmoke) {
  // Phases of A and of F A, F a fixed rotation, agree by a KS test at 1%.
  Rng frng(1234, 0);
  const auto f = haar_special_orthogonal(8, frng);
  std::vector<double> a, b;
  for (int i = 0; i < 5000; ++i) {
    Rng rng(77, i);
    const auto m = haar_special_orthogonal(8, rng);
    a.push_back(lowest_phase(eigenphases(m)));
    Rng rng2(78, i);
    const auto m2 = haar_special_orthogonal(8, rng2);
    b.push_back(lowest_phase(eigenphases((f * m2).eval())));
  }
  const double critical = 1.63 * std::sqrt(2.0 / 5000.0);
  EXPECT_LT(ks_statistic(a, b), critical);
}

TEST(Excised, CutoffZeroIsPlainSampler) {
  const auto batch = sample_excised_batch(8, 0.0, 42, 50, 1000);
  ASSERT_EQ(batch.samples.size(), 50u);
  EXPECT_EQ(batch.attempts, 50u);
  for (std::size_t i = 0; i < 50; ++i) {
    const auto plain = sample(Group::SO, 8, 42, i);
    EXPECT_EQ(batch.samples[i].eigenphases, plain.eigenphases);
  }
}

TEST(Excised, EveryAcceptedSampleClearsCutoff) {
  ExcisedConfig cfg{1.5, 2, 4};
  EXPECT_NEAR(cfg.cutoff(), 1.5 * std::exp(-2.0), 1e-15);
  const auto batch = sample_excised_batch(8, cfg.cutoff(), 3, 200, 100000);
  for (const auto& s : batch.samples) EXPECT_GE(s.lambda_at_one, cfg.cutoff());
  Rng rng(3, 0);
  std::size_t attempts = 0;
  const auto one = sample_excised(8, 1.0, rng, 1000, &attempts);
  EXPECT_GE(one.lambda_at_one, 1.0);
  EXPECT_GE(attempts, 1u);
}

TEST(Excised, AcceptanceDecreasesInCutoff) {
  double prev = 2.0;
  for (double cutoff : {0.01, 1.0, 10.0}) {
    const auto batch = sample_excised_batch(8, cutoff, 5, 300, 1000000);
    EXPECT_LT(batch.acceptance_rate(), prev);
    prev = batch.acceptance_rate();
  }
}

TEST(Excised, ExhaustionReportsRate) {
  Rng rng(1, 0);
  try {
    sample_excised(4, 1e9, rng, 100);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("acceptance"), std::string::npos);
  }
  EXPECT_THROW(sample_excised_batch(4, 1e9, 1, 5, 200), ConvergenceError);
}

TEST(Excised, ParallelMatchesSerial) {
  const auto a = sample_excised_batch(10, 0.5, 8, 40, 10000, 1);
  const auto b = sample_excised_batch(10, 0.5, 8, 40, 10000, 3);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  EXPECT_EQ(a.attempts, b.attempts);
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].draw, b.samples[i].draw);
}
