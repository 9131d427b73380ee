#include <gtest/gtest.h>

#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/convert.hpp"
#include "ncpl/problems/degenerate_quadratic.hpp"
#include "ncpl/problems/quadratic_saddle.hpp"

namespace ncpl {
namespace {

Vec s1(double a) { return Vec::Constant(1, a); }

TEST(ToF, AlreadyAtTargetIsUnchanged) {
  const QuadraticSaddle q(1, 1, 2);
  RandomStream rng(1, StreamId::kAscent);
  const auto r = to_f_stationary(q, s1(0.5), s1(0.25), 1e-3, 1e-2, rng);
  EXPECT_EQ(r.steps, 0);
  EXPECT_EQ(r.point.y[0], 0.25);
  EXPECT_TRUE(r.certified_exactly);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ToF, CertificateAndCallCount) {
  const QuadraticSaddle q(1, 1, 2);
  const double eps = 1e-3, eps_prime = 1e-2;
  const double x = eps / 1.5;  // ‖∇Φ(x)‖ = ε
  const double y = x / 2 + eps_prime / 2;  // ‖∇_y f‖ = ε′ exactly
  RandomStream rng(1, StreamId::kAscent);
  const auto r = to_f_stationary(q, s1(x), s1(y), eps, eps_prime, rng);
  const auto g = grad(q, r.point);
  EXPECT_LE(std::abs(g.gy[0]), std::sqrt(2.0) * eps);
  EXPECT_LE(std::abs(g.gx[0]), (1 + std::sqrt(2.0)) * eps);
  EXPECT_LE(r.oracle_calls, std::ceil(q.kappa() * std::log(q.kappa() * eps_prime / eps)) + 3);
}

TEST(ToF, ViolatedPreconditionWarnsAndProceeds) {
  const QuadraticSaddle q(1, 1, 2);
  RandomStream rng(1, StreamId::kAscent);
  const auto r = to_f_stationary(q, s1(1e-3), s1(5), 1e-3, 1e-2, rng);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_LE(std::abs(grad(q, r.point).gy[0]), std::sqrt(2.0) * 1e-3);
}

TEST(ToF, IdempotentOnItsOutput) {
  const QuadraticSaddle q(1, 1, 4);
  RandomStream rng(1, StreamId::kAscent);
  const auto a = to_f_stationary(q, s1(1e-3), s1(0.3), 1e-3, 1, rng);
  const auto b = to_f_stationary(q, a.point.x, a.point.y, 1e-3, 1, rng);
  EXPECT_EQ(b.steps, 0);
  EXPECT_EQ(a.point.y, b.point.y);
}

TEST(ToF, DegenerateQuadraticGapTarget) {
  const auto d = DegenerateQuadratic::standard();
  RandomStream rng(1, StreamId::kAscent);
  const Vec x = Vec::Constant(2, 0.4);
  const auto r = to_f_stationary(d, x, Vec::Zero(3), 1e-2, 10, rng, {});
  EXPECT_TRUE(r.certified_exactly);  // Φ is closed form here
  EXPECT_LE(d.phi(x) - d.value(x, r.point.y), 1e-4 / (d.l() * d.kappa()));
}

TEST(ToF, StochasticModeReachesTarget) {
  const QuadraticSaddle q(1, 1, 2, 0.01);
  RandomStream rng(4, StreamId::kAscent);
  ConversionOptions opt;
  opt.stochastic = true;
  const auto r = to_f_stationary(q, s1(1e-2), s1(0.3), 1e-2, 1, rng, opt);
  EXPECT_LE(q.phi(s1(1e-2)) - q.value(s1(1e-2), r.point.y), 1e-4 / 2);
}

TEST(ToPhi, ProxPointIsImmediate) {
  const QuadraticSaddle q(1, 1, 2);
  RandomStream rng(1, StreamId::kAscent);
  // Anchoring at the minimizer of Φ: the prox point is the anchor itself.
  const auto r = to_phi_stationary(q, s1(0), s1(0), 1e-3, rng);
  EXPECT_EQ(r.steps, 0);
  EXPECT_EQ(r.point.x[0], 0.0);
}

TEST(ToPhi, CertificateAndIterationBudget) {
  for (double c : {2.0, 0.5}) {
    const QuadraticSaddle q(1, 1, c);
    const double eps = 1e-3;
    const double x = 0.5 * eps / q.phi_curvature();
    RandomStream rng(1, StreamId::kAscent);
    const auto r = to_phi_stationary(q, s1(x), q.y_star(s1(x)), eps, rng);
    EXPECT_TRUE(r.certified_exactly);
    EXPECT_LE(q.grad_phi(r.point.x).norm(), (2 * std::sqrt(2.0) + 2) * eps);
    EXPECT_LE(r.steps, 1e4 * q.kappa() * std::max(1.0, std::log(q.kappa())));
  }
}

TEST(ToPhi, SurrogateBoundWithoutClosedForms) {
  const auto d = DegenerateQuadratic::standard();
  RandomStream rng(1, StreamId::kAscent);
  const Vec x = Vec::Constant(2, 0.5);
  const auto r = to_phi_stationary(d, x, d.y_star(x), 1e-2, rng);
  EXPECT_FALSE(r.certified_exactly);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_GT(r.steps, 0);
}

TEST(Conversions, RejectBadEps) {
  const QuadraticSaddle q(1, 1, 2);
  RandomStream rng(1, StreamId::kAscent);
  EXPECT_THROW(to_f_stationary(q, s1(0), s1(0), 0, 1, rng), ConfigError);
  EXPECT_THROW(to_phi_stationary(q, s1(0), s1(0), -1, rng), ConfigError);
}

TEST(Conversions, BudgetExhaustionIsNonConvergence) {
  const QuadraticSaddle q(1, 1, 0.5);  // τ = 1/l contracts y by ½ per step
  RandomStream rng(1, StreamId::kAscent);
  ConversionOptions opt;
  opt.max_steps = 2;
  EXPECT_THROW(to_f_stationary(q, s1(1), s1(-5), 1e-6, 1, rng, opt), NonConvergenceError);
}

}  // namespace
}  // namespace ncpl
