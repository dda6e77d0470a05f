#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ale/errors.hpp"
#include "ale/models.hpp"
#include "ale/profile.hpp"

using namespace ale;

namespace {

Jet exp_jet(double t) {
  const double v = std::exp(0.5 * t);
  return {v, 0.5 * v, 0.25 * v, 0.125 * v, 0.0625 * v};
}

}  // namespace

TEST(RadialProfile, DomainIsHalfOpen) {
  const RadialProfile p(2, 1, 1.0, 10.0, exp_jet);
  EXPECT_THROW(p.jet(1.0), DomainError);
  EXPECT_THROW(p.jet(10.5), DomainError);
  EXPECT_NO_THROW(p.jet(10.0));
  EXPECT_THROW(p.derivative(5, 2.0), DomainError);
  EXPECT_DOUBLE_EQ(p.derivative(2, 2.0), 0.25 * std::exp(1.0));
}

TEST(RadialProfile, HeaderPreconditions) {
  EXPECT_THROW(RadialProfile(1, 1, 0.0, exp_jet), PreconditionError);
  EXPECT_THROW(RadialProfile(2, 0, 0.0, exp_jet), PreconditionError);
  EXPECT_THROW(RadialProfile(2, 1, -1.0, exp_jet), PreconditionError);
  EXPECT_THROW(RadialProfile(2, 1, 2.0, 1.0, exp_jet), PreconditionError);
  EXPECT_THROW(RadialProfile(2, 1, 0.0, RadialProfile::Evaluator{}), PreconditionError);
}

TEST(FiniteDifferenceJet, MatchesAnalyticDerivatives) {
  const auto f = [](double t) { return std::exp(0.5 * t); };
  for (double t : {0.5, 3.0, 20.0}) {
    const Jet fd = finite_difference_jet(f, t);
    const Jet ex = exp_jet(t);
    EXPECT_NEAR(fd[0], ex[0], 1e-15 * ex[0]);
    EXPECT_NEAR(fd[1], ex[1], 1e-8 * ex[1]);
    EXPECT_NEAR(fd[2], ex[2], 1e-4 * ex[2]);
    EXPECT_NEAR(fd[3], ex[3], 1e-3 * ex[3] * std::max(1.0, t));
    EXPECT_NEAR(fd[4], ex[4], 1e-2 * ex[4] * std::max(1.0, t));
  }
}

TEST(FiniteDifferenceJet, StaysAboveLowerBound) {
  const auto f = [](double t) {
    if (t <= 1.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log(t - 1.0);
  };
  const Jet j = finite_difference_jet(f, 1.01, 1.0);
  EXPECT_TRUE(std::isfinite(j[4]));
  EXPECT_NEAR(j[1], 100.0, 1e-3);
}

TEST(FiniteDifferenceJet, AgreesWithEguchiHansonJet) {
  const RadialProfile eh = profile_of(ALEModel::eguchi_hanson(1.0));
  const auto f = [&eh](double t) { return eh.value(t); };
  for (double t : {0.3, 2.0, 8.0}) {
    const Jet fd = finite_difference_jet(f, t, 0.0);
    const Jet ex = eh.jet(t);
    EXPECT_NEAR(fd[1], ex[1], 1e-7 * std::abs(ex[1]));
    EXPECT_NEAR(fd[2], ex[2], 1e-3 * std::abs(ex[2]));
    EXPECT_NEAR(fd[3], ex[3], 1e-2 * std::abs(ex[3]));
  }
}

TEST(RadialProfile, FromFunctionUsesDifferences) {
  const auto p = RadialProfile::from_function(2, 1, 0.0, [](double t) { return 0.25 * t + std::log(t); });
  EXPECT_NEAR(p.derivative(1, 4.0), 0.5, 1e-9);
  EXPECT_NEAR(p.derivative(2, 4.0), -1.0 / 16.0, 1e-5);
  EXPECT_FALSE(p.asymptotics().has_value());
}

TEST(RadialProfile, FromSamplesReproducesSmoothProfile) {
  std::vector<std::pair<double, double>> samples;
  for (int k = 0; k <= 80; ++k) {
    const double t = std::pow(10.0, k / 20.0);
    samples.emplace_back(t, 0.25 * t + std::log(t));
  }
  const auto p = RadialProfile::from_samples(2, 1, samples, Asymptotics{-1.0, 0.0});
  EXPECT_DOUBLE_EQ(p.t_min(), 1.0);
  EXPECT_DOUBLE_EQ(p.t_max(), 1e4);
  EXPECT_NEAR(p.value(37.0), 0.25 * 37.0 + std::log(37.0), 1e-9);
  EXPECT_NEAR(p.derivative(1, 37.0), 0.25 + 1.0 / 37.0, 1e-8);
  EXPECT_THROW(p.jet(2e4), DomainError);
}

TEST(RadialProfile, FromSamplesRejectsBadInput) {
  EXPECT_THROW(RadialProfile::from_samples(2, 1, {{1, 1}, {2, 2}, {3, 3}}), PreconditionError);
  EXPECT_THROW(RadialProfile::from_samples(2, 1, {{1, 1}, {2, 2}, {2, 2}, {3, 3}}), PreconditionError);
  EXPECT_THROW(RadialProfile::from_samples(2, 1, {{-1, 1}, {2, 2}, {3, 2}, {4, 3}}), PreconditionError);
}
