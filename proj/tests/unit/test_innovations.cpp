#include <gtest/gtest.h>

#include <cmath>

#include "arsurv/errors.hpp"
#include "arsurv/innovations.hpp"
#include "oracles.hpp"

using namespace arsurv;

TEST(Innovations, InvalidParametersRejected) {
  EXPECT_THROW(InnovationSpec::gaussian(0, 0), PreconditionError);
  EXPECT_THROW(InnovationSpec::two_point(0), PreconditionError);
  EXPECT_THROW(InnovationSpec::uniform(1, 1), PreconditionError);
  EXPECT_THROW(InnovationSpec::centered_exponential(-1), PreconditionError);
}

TEST(Innovations, RademacherSupport) {
  RngStream s(1, 0);
  for (double v : sample(InnovationSpec::rademacher(), s, 4)) EXPECT_TRUE(v == 1.0 || v == -1.0);
}

TEST(Innovations, TwoPointMagnitude) {
  RngStream s(2, 0);
  const auto v = sample(InnovationSpec::two_point(2.0), s, 100000);
  int pos = 0;
  for (double x : v) {
    ASSERT_EQ(std::fabs(x), 2.0);
    pos += x > 0;
  }
  EXPECT_NEAR(pos / 1e5, 0.5, 4 * 0.5 / std::sqrt(1e5));
}

TEST(Innovations, GaussianMoments) {
  RngStream s(3, 0);
  const auto v = sample(InnovationSpec::gaussian(), s, 1000000);
  double m = 0, q = 0;
  for (double x : v) {
    m += x;
    q += x * x;
  }
  m /= v.size();
  q /= v.size();
  EXPECT_LT(std::fabs(m), 4e-3);
  EXPECT_NEAR(q, 1.0, 6e-3);
}

TEST(Innovations, UniformAndExponentialMeans) {
  RngStream s(4, 0);
  const auto u = sample(InnovationSpec::uniform(-1, 3), s, 200000);
  double mu = 0;
  for (double x : u) {
    ASSERT_GT(x, -1.0);
    ASSERT_LT(x, 3.0);
    mu += x;
  }
  EXPECT_NEAR(mu / u.size(), 1.0, 4 * std::sqrt(16.0 / 12 / u.size()));
  const auto e = sample(InnovationSpec::centered_exponential(2.0), s, 200000);
  double me = 0;
  for (double x : e) {
    ASSERT_GT(x, -0.5);
    me += x;
  }
  EXPECT_NEAR(me / e.size(), 0.0, 4 * 0.5 / std::sqrt(e.size()));
}

TEST(Innovations, Deterministic) {
  RngStream a(9, 3), b(9, 3);
  EXPECT_EQ(sample(InnovationSpec::gaussian(), a, 50), sample(InnovationSpec::gaussian(), b, 50));
}

TEST(Innovations, FlagsTotalAndConsistent) {
  const auto r = InnovationSpec::rademacher().flags();
  EXPECT_EQ(r.bounded_by, 1.0);
  EXPECT_FALSE(r.cf_decays);
  EXPECT_TRUE(std::isinf(r.exp_moment_alpha));
  const auto g = InnovationSpec::gaussian().flags();
  EXPECT_EQ(g.exp_moment_alpha, 2.0);
  EXPECT_TRUE(g.cf_decays);
  EXPECT_FALSE(g.bounded_by.has_value());
  const auto u = InnovationSpec::uniform(0, 1).flags();
  EXPECT_DOUBLE_EQ(u.mean, 0.5);
  EXPECT_FALSE(u.neg_mass);
  EXPECT_TRUE(u.pos_mass);
  const auto e = InnovationSpec::centered_exponential(1).flags();
  EXPECT_EQ(e.exp_moment_alpha, 1.0);
  EXPECT_DOUBLE_EQ(e.variance, 1.0);
}

TEST(Innovations, CdfAndIntervals) {
  const auto g = InnovationSpec::gaussian(1.0, 2.0);
  for (double y : {-5.0, -1.0, 0.0, 1.0, 4.0}) {
    EXPECT_NEAR(g.cdf(y), oracles::normal_cdf((y - 1.0) / 2.0), 1e-15);
  }
  const auto z = InnovationSpec::gaussian();
  EXPECT_NEAR(z.prob_closed_interval(-1, 1), 0.6826894921370859, 1e-15);
  EXPECT_GT(z.prob_closed_interval(-30, -29), 0.0);  // far tail, no cancellation
  const auto r = InnovationSpec::rademacher();
  EXPECT_EQ(r.prob_closed_interval(-1, -1), 0.5);
  EXPECT_EQ(r.prob_closed_interval(-0.5, 0.5), 0.0);
  EXPECT_EQ(r.cdf(0.0), 0.5);
}

TEST(Hypotheses, Examples) {
  const auto rt = hypothesis_check(InnovationSpec::rademacher(), TheoremId::SuperPolynomialDecayE);
  EXPECT_FALSE(rt.satisfied);
  EXPECT_EQ(rt.violated, std::vector<std::string>{"cf_decays"});
  EXPECT_TRUE(hypothesis_check(InnovationSpec::gaussian(), TheoremId::PolynomialDecayP).satisfied);
  const auto ut = hypothesis_check(InnovationSpec::uniform(0, 1), TheoremId::PolynomialDecayP);
  EXPECT_FALSE(ut.satisfied);
  EXPECT_EQ(ut.violated, std::vector<std::string>{"mean_zero"});
}

TEST(Hypotheses, AmbiguityNoteOnE1Rate) {
  const auto h = hypothesis_check(InnovationSpec::gaussian(), TheoremId::NorthWestRate);
  EXPECT_TRUE(h.satisfied);
  EXPECT_FALSE(h.note.empty());
}

TEST(Hypotheses, NamesRoundTrip) {
  for (auto id : {TheoremId::PolynomialDecayP, TheoremId::SuperPolynomialDecayE,
                  TheoremId::PositiveLimitC, TheoremId::SummableCoefficients,
                  TheoremId::ExponentialLowerBound, TheoremId::NorthWestRate,
                  TheoremId::ReductionToAR1, TheoremId::SignChangeE3,
                  TheoremId::ReductionToRandomWalk}) {
    EXPECT_EQ(theorem_from_string(to_string(id)), id);
  }
  EXPECT_THROW(theorem_from_string("nope"), PreconditionError);
}
