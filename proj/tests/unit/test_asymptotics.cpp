#include <gtest/gtest.h>

#include <cmath>

#include "arsurv/asymptotics.hpp"
#include "arsurv/bounds.hpp"
#include "arsurv/mc.hpp"

using namespace arsurv;

namespace {

// Curve with survivors set from an exact survival function.
template <class F>
SurvivalCurve synthetic(const std::vector<std::int64_t>& grid, std::uint64_t paths, F&& p) {
  SurvivalCurve c;
  c.grid = grid;
  c.paths = paths;
  for (auto n : grid) {
    c.survivors.push_back(static_cast<std::uint64_t>(std::llround(p(static_cast<double>(n)) *
                                                                  static_cast<double>(paths))));
  }
  finalize_curve(c);
  return c;
}

std::vector<std::int64_t> pow2(int lo, int hi) {
  std::vector<std::int64_t> g;
  for (int e = lo; e <= hi; ++e) g.push_back(std::int64_t{1} << e);
  return g;
}

std::vector<std::int64_t> range(int lo, int hi) {
  std::vector<std::int64_t> g;
  for (int n = lo; n <= hi; ++n) g.push_back(n);
  return g;
}

}  // namespace

TEST(FitDecay, ExactHalvingIsExponential) {
  const auto c = synthetic(range(1, 40), std::uint64_t{1} << 50,
                           [](double n) { return std::pow(2.0, -n); });
  const DecayFit f = fit_decay(c);
  EXPECT_EQ(f.cls, DecayClass::Exponential);
  EXPECT_NEAR(f.lambda, std::log(2.0), 0.01 * std::log(2.0));
  EXPECT_LE(f.lambda_ci.lo, f.lambda);
  EXPECT_GE(f.lambda_ci.hi, f.lambda);
}

TEST(FitDecay, GeometricRecoversRate) {
  const auto c = synthetic(range(1, 60), 1'000'000'000'000'000ULL,
                           [](double n) { return 0.5 * std::pow(0.8, n); });
  const DecayFit f = fit_decay(c);
  EXPECT_EQ(f.cls, DecayClass::Exponential);
  EXPECT_NEAR(f.lambda, -std::log(0.8), 0.01 * -std::log(0.8));
}

TEST(FitDecay, PowerLawsRecoverExponent) {
  for (double theta : {0.25, 0.5, 1.0}) {
    const auto c = synthetic(pow2(1, 14), 1'000'000'000'000'000ULL,
                             [theta](double n) { return std::pow(n, -theta); });
    const DecayFit f = fit_decay(c);
    EXPECT_EQ(f.cls, DecayClass::Polynomial) << theta;
    EXPECT_NEAR(f.theta, theta, 0.01 * theta);
    EXPECT_GE(f.theta, 0.0);
  }
}

TEST(FitDecay, FlatTailIsPositiveLimit) {
  const auto c = synthetic(pow2(1, 12), 100000,
                           [](double n) { return 0.3 + 0.4 * std::pow(2.0, -n / 8.0); });
  const DecayFit f = fit_decay(c);
  EXPECT_TRUE(f.plateau);
  EXPECT_EQ(f.cls, DecayClass::PositiveLimit);
  EXPECT_NEAR(f.p_inf, 0.3, 1e-3);
}

TEST(FitDecay, TooFewUsablePoints) {
  const auto c = synthetic(range(1, 10), 100, [](double n) { return std::pow(0.3, n); });
  const DecayFit f = fit_decay(c);
  EXPECT_EQ(f.cls, DecayClass::Inconclusive);
  EXPECT_LT(f.usable_points, 6u);
  EXPECT_FALSE(f.censored.empty());
  EXPECT_EQ(f.censored.back(), 10);
}

TEST(FitDecay, CensoredPointsExcluded) {
  const auto c = synthetic(range(1, 30), 100000, [](double n) { return std::pow(0.5, n); });
  const DecayFit f = fit_decay(c);
  EXPECT_EQ(f.cls, DecayClass::Exponential);
  EXPECT_EQ(f.usable_points + f.censored.size(), 30u);
  for (auto n : f.censored) EXPECT_GT(n, 10);
}

TEST(FitDecay, RandomWalkMonteCarlo) {
  const auto c = estimate_survival(ARParams{1.0, 0.0}, InnovationSpec::gaussian(), 0.0,
                                   pow2(4, 13), 100000, 2024);
  const DecayFit f = fit_decay(c);
  EXPECT_EQ(f.cls, DecayClass::Polynomial);
  EXPECT_GE(f.theta, 0.45);
  EXPECT_LE(f.theta, 0.55);
}

TEST(FitDecay, PositiveLimitMonteCarlo) {
  const auto c = estimate_survival(ARParams{1.0, 1.0}, InnovationSpec::gaussian(), 0.0,
                                   pow2(4, 10), 100000, 2025);
  const DecayFit f = fit_decay(c);
  EXPECT_EQ(f.cls, DecayClass::PositiveLimit);
  EXPECT_GT(f.p_inf, 0.0);
}

TEST(FitDecay, E1RateBoundHoldsEmpirically) {
  for (const auto& [a1, a2] : {std::pair{-1.0, 2.0}, {-0.5, 2.0}, {-0.9, 0.2}, {-0.5, 0.8}}) {
    const auto c = estimate_survival(ARParams{a1, a2}, InnovationSpec::gaussian(), 0.0,
                                     range(1, 60), 1000000, 2026);
    const DecayFit f = fit_decay(c);
    ASSERT_GE(f.usable_points, 6u) << a1 << ' ' << a2;
    EXPECT_GE(f.lambda, e1_rate_bound(a1, a2) - 0.1) << a1 << ' ' << a2;
  }
}

TEST(Predict, IntegratedWalk) {
  const Prediction p = predict(2, -1, InnovationSpec::gaussian(), 0);
  EXPECT_EQ(p.cls, DecayClass::Polynomial);
  EXPECT_EQ(p.theta, 0.25);
  EXPECT_EQ(p.region.major, MajorRegion::P);
}

TEST(Predict, TwoWalks) {
  const Prediction p = predict(0, 1, InnovationSpec::gaussian(), 0);
  EXPECT_EQ(p.cls, DecayClass::Polynomial);
  EXPECT_EQ(p.theta, 1.0);
}

TEST(Predict, PInterior) {
  const Prediction p = predict(0.5, 0.5, InnovationSpec::gaussian(), 0);
  EXPECT_EQ(p.theta, 0.5);
}

TEST(Predict, E2CarriesBounds) {
  const Prediction p = predict(-0.4, -0.4, InnovationSpec::gaussian(), 0);
  EXPECT_EQ(p.cls, DecayClass::Exponential);
  ASSERT_TRUE(p.rate_upper_bound.has_value());
  const double c = exp_lower_bound(ARParams{-0.4, -0.4}, InnovationSpec::gaussian()).c;
  EXPECT_DOUBLE_EQ(*p.rate_upper_bound, -std::log(c));
  ASSERT_TRUE(p.rate_lower_bound.has_value());
  EXPECT_DOUBLE_EQ(*p.rate_lower_bound, std::log(2.0));
  EXPECT_FALSE(p.log_corrected);
}

TEST(Predict, PositiveLimit) {
  EXPECT_EQ(predict(1, 1, InnovationSpec::gaussian(), 0).cls, DecayClass::PositiveLimit);
}

TEST(Predict, FailedHypothesesAreInconclusive) {
  const Prediction p = predict(-0.4, -0.4, InnovationSpec::rademacher(), 0);
  EXPECT_EQ(p.cls, DecayClass::Inconclusive);
  EXPECT_EQ(p.hypotheses.violated, std::vector<std::string>{"cf_decays"});
  const Prediction u = predict(1, 0, InnovationSpec::uniform(0, 1), 0);
  EXPECT_EQ(u.cls, DecayClass::Inconclusive);
  EXPECT_FALSE(u.theta.has_value());
}

TEST(Predict, NonGaussianEIsLogCorrected) {
  const Prediction p = predict(-0.4, -0.4, InnovationSpec::uniform(-1, 1), 0);
  EXPECT_EQ(p.cls, DecayClass::Exponential);
  EXPECT_TRUE(p.log_corrected);
}

TEST(Predict, E1RateAndNegativeBarrierNote) {
  const Prediction p = predict(-1, 2, InnovationSpec::gaussian(), -0.5);
  ASSERT_TRUE(p.rate_lower_bound.has_value());
  EXPECT_NEAR(*p.rate_lower_bound, std::log(2.0), 1e-15);
  bool noted = false;
  for (const auto& n : p.notes) noted = noted || n.find("x < 0") != std::string::npos;
  EXPECT_TRUE(noted);
}

TEST(Predict, Pure) {
  const auto a = predict(0.7, -0.5, InnovationSpec::gaussian(), 0);
  const auto b = predict(0.7, -0.5, InnovationSpec::gaussian(), 0);
  EXPECT_EQ(a.cls, b.cls);
  EXPECT_EQ(a.region, b.region);
  EXPECT_EQ(a.notes, b.notes);
  EXPECT_EQ(a.rate_upper_bound, b.rate_upper_bound);
}
