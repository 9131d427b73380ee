#include <gtest/gtest.h>

#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/catalyst.hpp"
#include "ncpl/problems/degenerate_quadratic.hpp"
#include "ncpl/problems/quadratic_saddle.hpp"
#include "ncpl/stepsizes.hpp"

namespace ncpl {
namespace {

Vec s1(double a) { return Vec::Constant(1, a); }

TEST(Catalyst, StationaryStartStopsImmediately) {
  const QuadraticSaddle q(1, 1, 2);
  for (StopKind kind : {StopKind::kExact, StopKind::kSurrogate}) {
    StoppingRule rule;
    rule.kind = kind;
    const auto tr = catalyst_agda_run(q, {s1(0), s1(0)}, 3, rule, catalyst_inner_stepsizes(q.l()));
    ASSERT_EQ(tr.outer.size(), 3u);
    for (const auto& rec : tr.outer) EXPECT_EQ(rec.inner_iters, 0);
    EXPECT_EQ(tr.total_inner, 0);
  }
}

TEST(Catalyst, InnerBudgetAndOuterProgress) {
  const QuadraticSaddle q(1, 1, 2);
  const double bound = 1e4 * q.kappa() * std::max(1.0, std::log(q.kappa()));
  double prev = q.grad_phi(s1(1)).norm();
  // Each outer step is roughly a proximal step on Φ: x ← x/(1 + 1.5/4).
  const auto tr = catalyst_agda_run(q, {s1(1), s1(1)}, 40, {}, catalyst_inner_stepsizes(q.l()),
                                    [&](const CatalystOuterRecord& r) {
                                      EXPECT_LE(r.inner_iters, bound);
                                      EXPECT_LE(r.gap_final, catalyst_stop_factor(q.kappa()) * r.gap0);
                                      const double g = q.grad_phi(r.point.x).norm();
                                      EXPECT_LT(g, prev);
                                      prev = g;
                                      return true;
                                    });
  EXPECT_EQ(tr.outer.size(), 40u);
  EXPECT_LT(q.grad_phi(tr.final_point.x).norm(), 1e-3);
}

TEST(Catalyst, SurrogateRuleImpliesExactRule) {
  const QuadraticSaddle q(-1, 3, 0.5);
  StoppingRule rule;
  rule.kind = StopKind::kSurrogate;
  const auto* model = q.quadratic_model();
  Point prev{s1(2), s1(-1)};
  catalyst_agda_run(q, prev, 4, rule, catalyst_inner_stepsizes(q.l()), [&](const CatalystOuterRecord& r) {
    const double g0 = model->anchored_gap(prev.x, prev.y, prev.x, q.l());
    const double gk = model->anchored_gap(r.point.x, r.point.y, prev.x, q.l());
    EXPECT_LE(gk, catalyst_stop_factor(q.kappa()) * g0 * (1 + 1e-9) + 1e-300);
    prev = r.point;
    return true;
  });
}

TEST(Catalyst, CallbackCanStopEarly) {
  const QuadraticSaddle q(1, 1, 2);
  const auto tr = catalyst_agda_run(q, {s1(1), s1(1)}, 50, {}, catalyst_inner_stepsizes(q.l()),
                                    [](const CatalystOuterRecord& r) { return r.outer < 2; });
  EXPECT_EQ(tr.outer.size(), 3u);
}

TEST(Catalyst, ExactRuleNeedsClosedForms) {
  const auto d = DegenerateQuadratic::standard();
  StoppingRule rule;
  rule.kind = StopKind::kExact;
  EXPECT_THROW(catalyst_agda_run(d, d.initial_point(), 1, rule, catalyst_inner_stepsizes(d.l())),
               UnsupportedCapability);
}

TEST(Catalyst, SurrogateRuleRunsWithoutClosedForms) {
  const auto d = DegenerateQuadratic::standard();
  const auto tr = catalyst_agda_run(d, d.initial_point(), 5, {}, catalyst_inner_stepsizes(d.l()));
  EXPECT_LT(d.grad_phi(tr.final_point.x).norm(), d.grad_phi(d.initial_point().x).norm());
}

}  // namespace
}  // namespace ncpl
