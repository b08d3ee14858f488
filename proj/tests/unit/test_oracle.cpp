#include <gtest/gtest.h>

#include <cmath>

#include "arsurv/errors.hpp"
#include "arsurv/mc.hpp"
#include "arsurv/oracle.hpp"
#include "oracles.hpp"

using namespace arsurv;

namespace {
const std::vector<SupportPoint> kRademacher{{-1.0, 0.5}, {1.0, 0.5}};
std::vector<SupportPoint> two_point(double y) { return {{-y, 0.5}, {y, 0.5}}; }
}  // namespace

TEST(Enumerate, RandomWalkTwoSteps) {
  EXPECT_DOUBLE_EQ(enumerate_survival(ARParams{1.0, 0.0}, kRademacher, 0.0, 2), 0.5);
}

TEST(Enumerate, IntegratedWalkMatchesBruteForce) {
  const double exact = oracles::brute_force_two_point({2.0, -1.0}, 1.0, 0.0, 3);
  EXPECT_DOUBLE_EQ(enumerate_survival(ARParams{2.0, -1.0}, kRademacher, 0.0, 3), exact);
}

TEST(Enumerate, HighBarrierSurvivesAlways) {
  EXPECT_DOUBLE_EQ(enumerate_survival(ARParams{0.7, 0.2}, two_point(1.5), 100.0, 5), 1.0);
}

TEST(Enumerate, StrongNegativeFeedbackKillsAtTwo) {
  for (double a1 : {-1.5, -3.0}) {
    for (double a2 : {-1.0, 0.0, 2.0}) {
      EXPECT_EQ(enumerate_survival(ARParams{a1, a2}, two_point(0.7), 0.0, 2), 0.0);
    }
  }
}

TEST(Enumerate, AgreesWithBruteForceOnIntegerParameters) {
  const std::vector<std::vector<double>> cases{{1, 0}, {2, -1}, {0, 1}, {-1, -1}, {1, 1}, {3, -2}};
  for (const auto& a : cases) {
    for (int n = 1; n <= 12; ++n) {
      const double want = oracles::brute_force_two_point(a, 1.0, 0.0, n);
      EXPECT_DOUBLE_EQ(enumerate_survival(ARParams(a), kRademacher, 0.0, n), want)
          << a[0] << ',' << a[1] << " N=" << n;
    }
  }
}

TEST(Enumerate, MonotoneInBarrierAndHorizon) {
  const ARParams params{0.5, 0.5};
  double prev_n = 1.0;
  for (int n = 1; n <= 14; ++n) {
    const double p = enumerate_survival(params, kRademacher, 0.0, n);
    EXPECT_LE(p, prev_n);
    prev_n = p;
  }
  double prev_x = 0.0;
  for (double x : {-10.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0, 100.0}) {
    const double p = enumerate_survival(params, kRademacher, x, 10);
    EXPECT_GE(p, prev_x);
    prev_x = p;
  }
  EXPECT_EQ(enumerate_survival(params, kRademacher, -10.0, 10), 0.0);
  EXPECT_EQ(enumerate_survival(params, kRademacher, 100.0, 10), 1.0);
}

TEST(Enumerate, Guards) {
  EXPECT_THROW(enumerate_survival(ARParams{1.0}, kRademacher, 0.0, 23), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_survival(ARParams{-0.4, -0.4}, kRademacher, 0.0, 22));
  EXPECT_THROW(enumerate_survival(ARParams{1.0}, {{-1, 0.5}, {1, 0.4}}, 0.0, 3),
               PreconditionError);
  EXPECT_THROW(enumerate_survival(ARParams{1.0}, kRademacher, 0.0, 0), PreconditionError);
  const std::vector<SupportPoint> three{{-1, 0.25}, {0, 0.5}, {1, 0.25}};
  EXPECT_THROW(enumerate_survival(ARParams{1.0}, three, 0.0, 14), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_survival(ARParams{1.0}, three, 0.0, 13));
}

TEST(PairProbability, OrthantEndpoints) {
  EXPECT_EQ(gaussian_orthant_probability(0.0), 0.25);
  EXPECT_DOUBLE_EQ(gaussian_orthant_probability(1.0), 0.5);
  EXPECT_DOUBLE_EQ(gaussian_orthant_probability(-1.0), 0.0);
}

TEST(PairProbability, CorrelationMatchesMovingAverageWeights) {
  const std::vector<double> a{0.5, 0.25};
  const int n = 6;
  std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
  unit[0] = 1.0;
  const auto c = oracles::ma_path(a, unit);  // c_0..c_{n-1}
  double v5 = 0, v6 = 0, cov = 0;
  for (int j = 0; j < n; ++j) v6 += c[j] * c[j];
  for (int j = 0; j < n - 1; ++j) {
    v5 += c[j] * c[j];
    cov += c[j] * c[j + 1];
  }
  EXPECT_NEAR(lag_one_correlation(ARParams{0.5, 0.25}, n), cov / std::sqrt(v5 * v6), 1e-15);
}

TEST(PairProbability, IndependentValuesGiveQuarter) {
  EXPECT_EQ(lag_one_correlation(ARParams{0.0}, 6), 0.0);
  EXPECT_EQ(gaussian_pair_probability(ARParams{0.0}, 6), 0.25);
}

TEST(PairProbability, MatchesMonteCarloAndBoundsSurvival) {
  const ARParams params{0.5, 0.25};
  const auto spec = InnovationSpec::gaussian(0.0, 3.0);
  constexpr std::uint64_t paths = 200000;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < paths; ++i) {
    RngStream s(77, i);
    const auto path = simulate_path(params, spec, 6, s);
    hits += path[4] <= 0 && path[5] <= 0;
  }
  const double f = static_cast<double>(hits) / paths;
  const double se = std::sqrt(f * (1 - f) / paths);
  const double formula = gaussian_pair_probability(params, 6);
  EXPECT_LE(std::fabs(f - formula), 3 * se);
  const auto curve = estimate_survival(params, spec, 0.0, {6}, paths, 78);
  EXPECT_LE(curve.p_hat[0], formula + 3 * curve.std_err[0]);
}

TEST(PairProbability, RequiresTwoSteps) {
  EXPECT_THROW(gaussian_pair_probability(ARParams{0.5}, 1), PreconditionError);
}
