#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arsurv/bounds.hpp"
#include "arsurv/errors.hpp"
#include "arsurv/mc.hpp"
#include "arsurv/oracle.hpp"
#include "oracles.hpp"

using namespace arsurv;

TEST(Crossing, FirstStepAbove) {
  const std::vector<double> y{1.0, -1.0};
  EXPECT_EQ(crossing_time_from(ARParams{1.0, 0.0}, y, 0.0).tau, 1);
}

TEST(Crossing, BarrierNeverReached) {
  RngStream s(1, 0);
  const auto c = simulate_crossing_time(ARParams{0.0, 0.0}, InnovationSpec::gaussian(), 1e300, 50, s);
  EXPECT_EQ(c.tau, 51);
  EXPECT_TRUE(c.finite);
}

TEST(Crossing, IntegratedWalkTieSurvives) {
  // X_3 = 0 is a tie and survives; X_4 = 2 crosses.
  const std::vector<double> y{-1, 1, 1, 1, 1, 1};
  EXPECT_EQ(crossing_time_from(ARParams{2.0, -1.0}, y, 0.0).tau, 4);
}

TEST(Crossing, MatchesMovingAverageOracle) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> coef(-0.9, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + trial % 4;
    std::vector<double> a(static_cast<std::size_t>(p));
    for (auto& v : a) v = coef(gen);
    std::vector<double> y(60);
    for (auto& v : y) v = normal(gen);
    const double x = 0.5;
    const auto path = oracles::ma_path(a, y);
    std::int64_t want = 61;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path[i] > x) {
        want = static_cast<std::int64_t>(i) + 1;
        break;
      }
    }
    EXPECT_EQ(crossing_time_from(ARParams(a), y, x).tau, want) << trial;
  }
}

TEST(Crossing, SimulatePathMatchesCrossing) {
  const ARParams params{0.6, 0.3, -0.2};
  RngStream a(8, 4), b(8, 4);
  const auto path = simulate_path(params, InnovationSpec::gaussian(), 200, a);
  const auto c = simulate_crossing_time(params, InnovationSpec::gaussian(), 1.0, 200, b);
  std::int64_t want = 201;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] > 1.0) {
      want = static_cast<std::int64_t>(i) + 1;
      break;
    }
  }
  EXPECT_EQ(c.tau, want);
}

TEST(Estimate, RandomWalkOneStep) {
  const auto c = estimate_survival(ARParams{1.0, 0.0}, InnovationSpec::rademacher(), 0.0, {1},
                                   400000, 11);
  EXPECT_NEAR(c.p_hat[0], 0.5, 4 * c.std_err[0]);
}

TEST(Estimate, RandomWalkThreeStepsMatchesBruteForce) {
  const auto c = estimate_survival(ARParams{1.0, 0.0}, InnovationSpec::rademacher(), 0.0, {3},
                                   1000000, 12);
  const double exact = oracles::brute_force_two_point({1.0, 0.0}, 1.0, 0.0, 3);
  EXPECT_DOUBLE_EQ(exact, 3.0 / 8.0);
  EXPECT_LE(std::fabs(c.p_hat[0] - exact), 3 * c.std_err[0]);
}

TEST(Estimate, SquaredIdentity) {
  const auto two = estimate_survival(ARParams{0.0, 1.0}, InnovationSpec::gaussian(), 0.0,
                                     {8, 32}, 400000, 13);
  const auto rw = estimate_survival(ARParams{1.0}, InnovationSpec::gaussian(), 0.0, {4, 16},
                                    400000, 14);
  for (std::size_t i = 0; i < 2; ++i) {
    const double p = rw.p_hat[i];
    const double se = std::hypot(two.std_err[i], 2 * p * rw.std_err[i]);
    EXPECT_LE(std::fabs(two.p_hat[i] - p * p), 3 * se) << i;
  }
}

TEST(Estimate, CurveInvariants) {
  const auto c = estimate_survival(ARParams{0.5, 0.5}, InnovationSpec::gaussian(), 0.0,
                                   {1, 2, 4, 8, 16, 32}, 20000, 15);
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    if (i > 0) EXPECT_LE(c.survivors[i], c.survivors[i - 1]);
    EXPECT_DOUBLE_EQ(c.p_hat[i], static_cast<double>(c.survivors[i]) / 20000.0);
    EXPECT_DOUBLE_EQ(c.std_err[i], std::sqrt(c.p_hat[i] * (1 - c.p_hat[i]) / 20000.0));
  }
  EXPECT_TRUE(c.valid);
}

TEST(Estimate, CensoredEntriesCarryRuleOfThree) {
  const auto c = estimate_survival(ARParams{-0.4, -0.4}, InnovationSpec::gaussian(), 0.0,
                                   {1, 10, 40}, 1000, 16);
  EXPECT_TRUE(c.zero_flag[2]);
  EXPECT_EQ(c.p_hat[2], 0.0);
  EXPECT_DOUBLE_EQ(c.upper_bound[2], 3.0 / 1000);
  EXPECT_FALSE(c.zero_flag[0]);
}

TEST(Estimate, MonotoneInBarrierUnderCommonNumbers) {
  const std::vector<std::int64_t> grid{1, 4, 16, 64};
  const auto lo = estimate_survival(ARParams{0.5, 0.5}, InnovationSpec::gaussian(), 0.0, grid,
                                    20000, 17);
  const auto hi = estimate_survival(ARParams{0.5, 0.5}, InnovationSpec::gaussian(), 0.5, grid,
                                    20000, 17);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_GE(hi.survivors[i], lo.survivors[i]);
}

TEST(Estimate, WorkerCountIndependent) {
  const std::vector<std::int64_t> grid{2, 8, 32, 128};
  const auto one = estimate_survival(ARParams{1.0}, InnovationSpec::gaussian(), 0.0, grid,
                                     10001, 18, {1});
  for (unsigned w : {2u, 3u, 8u}) {
    const auto many = estimate_survival(ARParams{1.0}, InnovationSpec::gaussian(), 0.0, grid,
                                        10001, 18, {w});
    EXPECT_EQ(many.survivors, one.survivors) << w;
  }
}

TEST(Estimate, NonFinitePathsInvalidate) {
  const auto c = estimate_survival(ARParams{1e200}, InnovationSpec::gaussian(), 1e308, {5}, 100,
                                   19);
  EXPECT_EQ(c.non_finite, 100u);
  EXPECT_FALSE(c.valid);
}

TEST(Estimate, RejectsBadGrid) {
  const auto g = InnovationSpec::gaussian();
  EXPECT_THROW(estimate_survival(ARParams{1.0}, g, 0, {}, 10, 1), PreconditionError);
  EXPECT_THROW(estimate_survival(ARParams{1.0}, g, 0, {0, 1}, 10, 1), PreconditionError);
  EXPECT_THROW(estimate_survival(ARParams{1.0}, g, 0, {4, 2}, 10, 1), PreconditionError);
  EXPECT_THROW(estimate_survival(ARParams{1.0}, g, 0, {1}, 0, 1), PreconditionError);
}

TEST(Estimate, TrivialBoundOnE2) {
  for (const auto& params : {ARParams{-0.4, -0.4}, ARParams{-1.0, -2.0}, ARParams{0.0, -0.5}}) {
    for (const auto& spec : {InnovationSpec::gaussian(), InnovationSpec::uniform(-1, 1)}) {
      const auto c = estimate_survival(params, spec, 0.0, {1, 2, 3, 4, 5, 6, 8, 10}, 100000, 20);
      for (std::size_t i = 0; i < c.grid.size(); ++i) {
        const double bound = std::pow(spec.cdf(0.0), static_cast<double>(c.grid[i]));
        EXPECT_LE(c.p_hat[i], bound + 3 * c.std_err[i]) << params.to_string() << " N=" << c.grid[i];
      }
    }
  }
}

TEST(Estimate, AgreesWithEnumeration) {
  const auto spec = InnovationSpec::rademacher();
  const auto support = *spec.finite_support();
  std::uint64_t seed = 30;
  for (const auto& params : {ARParams{1.0, 0.0}, ARParams{2.0, -1.0}, ARParams{0.5, 0.5},
                             ARParams{-0.4, -0.4}, ARParams{0.0, 1.0}}) {
    const auto c = estimate_survival(params, spec, 0.0, {2, 5, 9, 12}, 200000, seed++);
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      const double exact = enumerate_survival(params, support, 0.0, static_cast<int>(c.grid[i]));
      const double tol = c.std_err[i] > 0 ? 3.5 * c.std_err[i] : 0.0;
      EXPECT_LE(std::fabs(c.p_hat[i] - exact), tol) << params.to_string() << " N=" << c.grid[i];
    }
  }
}

TEST(Reduction, NorthWest) {
  const auto r = pathwise_reduction_check(ARParams{-0.5, 0.5}, InnovationSpec::gaussian(),
                                          ReductionKind::NorthWest, 100, 1000, 1);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.checks, 100000u);
  EXPECT_DOUBLE_EQ(*r.rho, 0.5);
}

TEST(Reduction, RandomWalk) {
  const auto r = pathwise_reduction_check(ARParams{0.5, 0.5}, InnovationSpec::rademacher(),
                                          ReductionKind::RandomWalk, 100, 1000, 2);
  EXPECT_EQ(r.violations, 0u);
}

TEST(Reduction, AR1ReportsRho) {
  const auto r = pathwise_reduction_check(ARParams{0.5, 0.25}, InnovationSpec::gaussian(),
                                          ReductionKind::AR1, 100, 1000, 3);
  EXPECT_EQ(r.violations, 0u);
  const double s2 = (0.5 - std::sqrt(0.25 + 1.0)) / 2;
  EXPECT_NEAR(*r.rho, -0.25 / s2, 1e-14);
}

TEST(Reduction, IntegrationRandomCoefficients) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> coef(-0.3, 0.3);
  for (int p = 1; p <= 4; ++p) {
    std::vector<double> a(static_cast<std::size_t>(p));
    for (auto& v : a) v = coef(gen);
    const auto r = pathwise_reduction_check(ARParams(a), InnovationSpec::gaussian(),
                                            ReductionKind::Integration, 50, 1000, 4);
    EXPECT_EQ(r.violations, 0u) << p;
  }
}

TEST(Reduction, ConstraintsChecked) {
  const auto g = InnovationSpec::gaussian();
  EXPECT_THROW(pathwise_reduction_check(ARParams{0.5, 0.5}, g, ReductionKind::NorthWest, 1, 1, 1),
               PreconditionError);
  EXPECT_THROW(pathwise_reduction_check(ARParams{0.5, 0.4}, g, ReductionKind::RandomWalk, 1, 1, 1),
               PreconditionError);
  EXPECT_THROW(pathwise_reduction_check(ARParams{0.5, -0.5}, g, ReductionKind::AR1, 1, 1, 1),
               PreconditionError);
  EXPECT_EQ(reduction_from_string("ar1"), ReductionKind::AR1);
  EXPECT_THROW(reduction_from_string("x"), PreconditionError);
}
