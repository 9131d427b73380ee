#include <gtest/gtest.h>

#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/stepsizes.hpp"

namespace ncpl {
namespace {

TEST(Theorem1, DeterministicKappaOne) {
  const auto s = theorem1_stepsizes(2, 2, 0, 1000, 1);
  EXPECT_DOUBLE_EQ(s.tau1, 1.0 / 136);
  EXPECT_DOUBLE_EQ(s.tau2, 0.5);
}

TEST(Theorem1, DoublingKappaQuartersTau1) {
  const auto a = theorem1_stepsizes(2, 2, 0, 1000, 1);
  const auto b = theorem1_stepsizes(2, 1, 0, 1000, 1);
  EXPECT_DOUBLE_EQ(b.tau1, a.tau1 / 4);
  EXPECT_DOUBLE_EQ(b.tau2, a.tau2);
}

TEST(Theorem1, NoiseBranchRatioScalesAsInverseKappaSquared) {
  // Large σ makes the √Δ/(σ√(Tl)) branches bind for both blocks.
  for (double kappa : {1.0, 4.0, 16.0}) {
    const double l = 2, mu = l / kappa;
    const auto s = theorem1_stepsizes(l, mu, 1e6, 1000, 1);
    EXPECT_NEAR(s.tau1 / s.tau2, 1.0 / (68 * kappa * kappa), 1e-15);
  }
}

TEST(Theorem2, DeterministicKappaOne) {
  const auto s = theorem2_stepsizes(2, 2, 0, 1000, 1);
  EXPECT_DOUBLE_EQ(s.tau1, 1.0 / 6);
  EXPECT_DOUBLE_EQ(s.tau2, 1.0 / 288);
  EXPECT_DOUBLE_EQ(s.p, 4.0);
  EXPECT_DOUBLE_EQ(s.beta, (1.0 / 288) * 2 / 1600);
}

TEST(Theorem2, RatioIsFortyEightAndKappaFree) {
  for (double l : {0.5, 2.0, 30.0}) {
    for (double kappa : {1.0, 10.0, 100.0}) {
      const auto s = theorem2_stepsizes(l, l / kappa, 0, 1000, 1);
      EXPECT_NEAR(s.tau1 / s.tau2, 48.0, 1e-12);
    }
  }
}

TEST(Catalyst, InnerStepsAndStopFactor) {
  const auto s = catalyst_inner_stepsizes(2);
  EXPECT_DOUBLE_EQ(s.tau1, 1.0 / 6);
  EXPECT_DOUBLE_EQ(s.tau2, 1.0 / 972);
  EXPECT_NEAR(catalyst_stop_factor(1), 3.7879e-3, 1e-7);
  EXPECT_DOUBLE_EQ(catalyst_stop_factor(2), 1.0 / (264 * 16));
}

TEST(StepSizes, InvalidInputsAreConfigErrors) {
  EXPECT_THROW(theorem1_stepsizes(0, 1, 0, 10, 1), ConfigError);
  EXPECT_THROW(theorem1_stepsizes(1, 2, 0, 10, 1), ConfigError);  // κ < 1
  EXPECT_THROW(theorem2_stepsizes(1, 1, 1, 0, 1), ConfigError);
  EXPECT_THROW(theorem2_stepsizes(1, 1, -1, 10, 1), ConfigError);
}

}  // namespace
}  // namespace ncpl
