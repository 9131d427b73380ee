#include <gtest/gtest.h>

#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/problems/linear_wgan.hpp"
#include "ncpl/problems/quadratic_saddle.hpp"
#include "ncpl/solvers.hpp"

namespace ncpl {
namespace {

Vec s1(double a) { return Vec::Constant(1, a); }

SolverState at(const MinimaxProblem& p, double x, double y, SolverKind k, std::uint64_t seed = 0) {
  return make_state(p, {s1(x), s1(y)}, k, seed);
}

TEST(Agda, HandStep) {
  const QuadraticSaddle q(1, 1, 2);
  const auto s = stoc_agda_step(q, at(q, 1, 1, SolverKind::kAgda), {0.1, 0.1});
  EXPECT_NEAR(s.point.x[0], 0.8, 1e-15);
  EXPECT_NEAR(s.point.y[0], 0.88, 1e-15);  // ∇_y f(0.8, 1) = −1.2
  EXPECT_EQ(s.iter, 1);
  EXPECT_EQ(s.oracle_calls, 2);
}

TEST(Gda, HandStepDiffersFromAgda) {
  const QuadraticSaddle q(1, 1, 2);
  const auto g = gda_step(q, at(q, 1, 1, SolverKind::kGda), {0.1, 0.1});
  EXPECT_NEAR(g.point.x[0], 0.8, 1e-15);
  EXPECT_NEAR(g.point.y[0], 0.9, 1e-15);
  const auto a = stoc_agda_step(q, at(q, 1, 1, SolverKind::kAgda), {0.1, 0.1});
  EXPECT_NE(a.point.y[0], g.point.y[0]);
  // With b = 0 the y-gradient ignores x, so the two coincide.
  const QuadraticSaddle q0(1, 0, 2);
  EXPECT_EQ(gda_step(q0, at(q0, 1, 1, SolverKind::kGda), {0.1, 0.1}).point.y[0],
            stoc_agda_step(q0, at(q0, 1, 1, SolverKind::kAgda), {0.1, 0.1}).point.y[0]);
}

TEST(SmoothedAgda, HandStep) {
  const QuadraticSaddle q(1, 1, 2);
  const auto s = smoothed_agda_step(q, at(q, 1, 1, SolverKind::kSmoothedAgda), {0.1, 0.1, 4, 0.01});
  EXPECT_NEAR(s.point.x[0], 0.8, 1e-15);
  EXPECT_NEAR(s.point.y[0], 0.88, 1e-15);
  EXPECT_NEAR((*s.z)[0], 0.998, 1e-15);
}

TEST(SmoothedAgda, ReducesToAgdaWithBetaOneOrPZero) {
  const LinearWGAN w;
  const Point start = w.initial_point();
  for (const StepSizes sm : {StepSizes{0.05, 0.2, 3.0, 1.0}, StepSizes{0.05, 0.2, 0.0, 0.4}}) {
    auto a = make_state(w, start, SolverKind::kAgda, 17);
    auto b = make_state(w, start, SolverKind::kSmoothedAgda, 17);
    for (int i = 0; i < 50; ++i) {
      a = stoc_agda_step(w, a, {0.05, 0.2});
      b = smoothed_agda_step(w, b, sm);
      ASSERT_EQ(a.point.x, b.point.x);
      ASSERT_EQ(a.point.y, b.point.y);
    }
  }
}

TEST(Solvers, FixedPointIsUnchanged) {
  const QuadraticSaddle q(1, 1, 2);
  EXPECT_EQ(stoc_agda_step(q, at(q, 0, 0, SolverKind::kAgda), {0.3, 0.3}).point.x[0], 0.0);
  EXPECT_EQ(gda_step(q, at(q, 0, 0, SolverKind::kGda), {0.3, 0.3}).point.y[0], 0.0);
  const auto s = smoothed_agda_step(q, at(q, 0, 0, SolverKind::kSmoothedAgda), {0.3, 0.3, 2, 0.5});
  EXPECT_EQ(s.point.x[0], 0.0);
  EXPECT_EQ((*s.z)[0], 0.0);
  const auto ad = adam_step(q, at(q, 0, 0, SolverKind::kAdam), AdaptiveParams::adam(0.1));
  EXPECT_EQ(ad.point.x[0], 0.0);
  EXPECT_EQ(ad.point.y[0], 0.0);
  const auto rm = rmsprop_step(q, at(q, 0, 0, SolverKind::kRmsprop), AdaptiveParams::rmsprop(0.1));
  EXPECT_EQ(rm.point.x[0], 0.0);
}

TEST(Solvers, SameSeedIsBitIdentical) {
  const QuadraticSaddle q(1, 1, 2, 1.0);
  auto a = at(q, 1, 1, SolverKind::kAgda, 5), b = at(q, 1, 1, SolverKind::kAgda, 5);
  auto c = at(q, 1, 1, SolverKind::kAgda, 6);
  for (int i = 0; i < 100; ++i) {
    a = stoc_agda_step(q, a, {0.05, 0.1});
    b = stoc_agda_step(q, b, {0.05, 0.1});
    c = stoc_agda_step(q, c, {0.05, 0.1});
  }
  EXPECT_EQ(a.point.x, b.point.x);
  EXPECT_EQ(a.point.y, b.point.y);
  EXPECT_TRUE(a.rng == b.rng);
  EXPECT_NE(a.point.x, c.point.x);
}

TEST(Solvers, AdvanceMatchesStep) {
  const QuadraticSaddle q(1, 1, 2, 0.5);
  auto a = at(q, 1, 1, SolverKind::kSmoothedAgda, 3);
  auto b = a;
  StepWorkspace ws;
  const StepSizes s{0.1, 0.2, 1.0, 0.3};
  for (int i = 0; i < 20; ++i) {
    a = smoothed_agda_step(q, a, s);
    smoothed_agda_advance(q, b, s, ws);
  }
  EXPECT_EQ(a.point.x, b.point.x);
  EXPECT_EQ(*a.z, *b.z);
  EXPECT_EQ(a.oracle_calls, 40);
}

TEST(Adam, FirstStepIsSignedStepOfSizeLr) {
  const QuadraticSaddle q(1, 1, 2);
  const auto s = adam_step(q, at(q, 1, 1, SolverKind::kAdam), AdaptiveParams::adam(1e-3));
  // Bias correction makes the first step lr·g/(|g| + eps).
  EXPECT_NEAR(s.point.x[0], 1 - 1e-3, 1e-10);
  EXPECT_NEAR(s.point.y[0], 1 - 1e-3, 1e-10);
}

TEST(Rmsprop, FirstStepMatchesDefinition) {
  const QuadraticSaddle q(1, 1, 2);
  const double lr = 1e-2, alpha = 0.99;
  const auto s = rmsprop_step(q, at(q, 1, 1, SolverKind::kRmsprop), AdaptiveParams::rmsprop(lr, alpha));
  // v = (1 − α)g², step = lr·g/(√v + eps) with g = (2, −1) at the old point.
  EXPECT_NEAR(s.point.x[0], 1 - lr * 2 / (std::sqrt(0.01 * 4) + 1e-8), 1e-14);
  EXPECT_NEAR(s.point.y[0], 1 - lr * 1 / (std::sqrt(0.01 * 1) + 1e-8), 1e-14);
}

TEST(Divergence, LeavesLastFiniteState) {
  const QuadraticSaddle q(1, 1, 2);
  auto s = at(q, 1, 1, SolverKind::kAgda);
  StepWorkspace ws;
  try {
    for (int i = 0; i < 10000; ++i) stoc_agda_advance(q, s, {50, 50}, ws);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_TRUE(all_finite(e.last_state().point.x));
    EXPECT_FALSE(diverged(s.point.x));
    EXPECT_EQ(e.last_state().iter, s.iter);
  }
}

TEST(GradientAscent, HandStepAndFixedPoint) {
  const QuadraticSaddle q(1, 1, 2);
  EXPECT_DOUBLE_EQ(gradient_ascent(q, s1(1), s1(0), 0.5, 1, nullptr)[0], 0.5);
  EXPECT_EQ(gradient_ascent(q, s1(1), s1(0.5), 0.5, 10, nullptr)[0], 0.5);
  EXPECT_LE(std::abs(gradient_ascent(q, s1(1), s1(1), 1 / q.l(), 200, nullptr)[0] - 0.5), 1e-12);
}

TEST(ParseSolver, RoundTrip) {
  for (const char* id : {"gda", "agda", "smoothed-agda", "catalyst-agda", "adam", "rmsprop", "gradient-ascent"}) {
    EXPECT_EQ(to_string(parse_solver(id)), id);
  }
  EXPECT_THROW(parse_solver("sgd"), ConfigError);
}

}  // namespace
}  // namespace ncpl
