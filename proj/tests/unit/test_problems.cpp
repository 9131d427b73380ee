#include <gtest/gtest.h>

#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/problem.hpp"
#include "ncpl/problems/degenerate_quadratic.hpp"
#include "ncpl/problems/linear_wgan.hpp"
#include "ncpl/problems/neural_wgan.hpp"
#include "ncpl/problems/quadratic_saddle.hpp"
#include "ncpl/problems/registry.hpp"
#include "ncpl/problems/robust_regression.hpp"

namespace ncpl {
namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

double rel_err(const Vec& a, const Vec& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

TEST(QuadraticSaddle, HandGradient) {
  const QuadraticSaddle q(1, 1, 2);
  const auto g = grad(q, {v({1}), v({1})});
  EXPECT_DOUBLE_EQ(g.gx[0], 2.0);
  EXPECT_DOUBLE_EQ(g.gy[0], -1.0);
  EXPECT_DOUBLE_EQ(q.l(), 2.0);
  EXPECT_DOUBLE_EQ(q.mu(), 2.0);
  EXPECT_DOUBLE_EQ(q.kappa(), 1.0);
}

TEST(QuadraticSaddle, ZeroGradientAtSaddle) {
  const QuadraticSaddle q(1, 1, 2);
  const auto g = grad(q, {v({0}), v({0})});
  EXPECT_EQ(g.gx[0], 0.0);
  EXPECT_EQ(g.gy[0], 0.0);
}

TEST(QuadraticSaddle, ClosedForms) {
  const QuadraticSaddle q(1, 1, 2);
  EXPECT_DOUBLE_EQ(q.grad_phi(v({0.8}))[0], 1.2);
  // argmin_z 0.75 z² + 2(z − 1)² = 4/5.5
  EXPECT_NEAR(q.prox_phi(v({1}), 1.0 / (2 * q.l()))[0], 4.0 / 5.5, 1e-15);
  EXPECT_DOUBLE_EQ(q.y_star(v({0}))[0], 0.0);
  EXPECT_DOUBLE_EQ(q.y_star(v({3}))[0], 1.5);
  EXPECT_DOUBLE_EQ(q.phi(v({2})), 3.0);
  EXPECT_DOUBLE_EQ(q.phi_star(), 0.0);
  // Ψ(y) = min_x ½x² + xy − y² = −1.5y²
  EXPECT_DOUBLE_EQ(q.psi(v({2})), -6.0);
}

TEST(QuadraticSaddle, NegativeCurvatureHasNoPsi) {
  const QuadraticSaddle q(-1, 1, 2);
  EXPECT_FALSE(q.has(ClosedForm::kPsi));
  EXPECT_THROW(q.psi(v({1})), UnsupportedCapability);
  EXPECT_FALSE(q.has(ClosedForm::kPhiStar));  // Φ curvature −1 + 1/2 < 0: unbounded below
}

TEST(QuadraticSaddle, RejectsNonPositiveC) {
  EXPECT_THROW(QuadraticSaddle(1, 1, 0), ConfigError);
}

TEST(SampleGrad, ZeroNoiseIsExact) {
  const QuadraticSaddle q(1, 1, 2);
  RandomStream rng(1, StreamId::kXOracle);
  const Point p{v({0.3}), v({-0.7})};
  const auto a = sample_grad(q, p, rng);
  const auto b = grad(q, p);
  EXPECT_EQ(a.gx[0], b.gx[0]);
  EXPECT_EQ(a.gy[0], b.gy[0]);
}

TEST(SampleGrad, UnitNoiseMeanMatchesGradient) {
  const QuadraticSaddle q(1, 1, 2, 1.0);
  RandomStream rng(11, StreamId::kXOracle);
  const int n = 100000;
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    const auto g = sample_grad(q, {v({1}), v({1})}, rng);
    sx += g.gx[0];
    sy += g.gy[0];
  }
  // Per-coordinate noise variance σ²/d = 1/2.
  const double se = std::sqrt(0.5 / n);
  EXPECT_NEAR(sx / n, 2.0, 3 * se);
  EXPECT_NEAR(sy / n, -1.0, 3 * se);
}

TEST(SampleGrad, DimensionMismatchIsConfigError) {
  const QuadraticSaddle q(1, 1, 2);
  EXPECT_THROW(grad(q, {v({1, 2}), v({1})}), ConfigError);
}

TEST(SampleGrad, NonFiniteInputIsNumericError) {
  const QuadraticSaddle q(1, 1, 2);
  EXPECT_THROW(grad(q, {v({NAN}), v({1})}), NumericError);
}

class ConstantProblem final : public MinimaxProblem {
 public:
  ConstantProblem() : MinimaxProblem(3, 2, {}, NoiseModel::kNone) {}
  std::string name() const override { return "constant"; }
  double value(const Vec&, const Vec&) const override { return 4.2; }
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override {
    gx = Vec::Zero(x.size());
    gy = Vec::Zero(y.size());
  }
};

TEST(FiniteDiff, ConstantObjectiveGivesZero) {
  const ConstantProblem c;
  const auto g = finite_diff_grad(c, {v({1, 2, 3}), v({4, 5})});
  EXPECT_EQ(g.gx.norm(), 0.0);
  EXPECT_EQ(g.gy.norm(), 0.0);
}

TEST(FiniteDiff, QuadraticSaddleAtOneOne) {
  const QuadraticSaddle q(1, 1, 2);
  const Point p{v({1}), v({1})};
  const auto fd = finite_diff_grad(q, p, 1e-6);
  const auto g = grad(q, p);
  EXPECT_LE(rel_err(fd.gx, g.gx), 1e-6);
  EXPECT_LE(rel_err(fd.gy, g.gy), 1e-6);
}

TEST(FiniteDiff, RobustRegressionBackprop) {
  const RobustRegression r;
  RandomStream rng(2, StreamId::kSampling);
  int checked = 0;
  for (int i = 0; i < 20 && checked < 5; ++i) {
    const Point p = r.sample_in_box(rng);
    if (r.kink_distance(p) < 1e-4) continue;
    const auto fd = finite_diff_grad(r, p, 1e-6);
    const auto g = grad(r, p);
    EXPECT_LE(rel_err(fd.gx, g.gx), 1e-5);
    EXPECT_LE(rel_err(fd.gy, g.gy), 1e-5);
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

TEST(LinearWGAN, HandGradient) {
  LinearWganParams prm;
  prm.deterministic = true;
  const LinearWGAN w(prm);
  const auto g = grad(w, {v({0.5, 1}), v({0, 0})});
  EXPECT_NEAR(g.gx[0], 0.0, 1e-15);
  EXPECT_NEAR(g.gx[1], 0.0, 1e-15);
  EXPECT_NEAR(g.gy[0], -0.5, 1e-15);
  EXPECT_NEAR(g.gy[1], -1.24, 1e-15);
}

TEST(LinearWGAN, SigmaSymmetry) {
  const LinearWGAN w;
  RandomStream rng(4, StreamId::kSampling);
  for (int i = 0; i < 100; ++i) {
    Point p = w.sample_in_box(rng);
    const double f1 = w.value(p.x, p.y);
    p.x[1] = -p.x[1];
    EXPECT_DOUBLE_EQ(f1, w.value(p.x, p.y));
  }
}

TEST(LinearWGAN, SaddleAtBothSymmetricOptima) {
  LinearWganParams prm;
  prm.deterministic = true;
  const LinearWGAN w(prm);
  for (double s : {0.1, -0.1}) {
    const auto g = grad(w, {v({0, s}), v({0, 0})});
    EXPECT_NEAR(g.gx.norm(), 0.0, 1e-15);
    EXPECT_NEAR(g.gy.norm(), 0.0, 1e-15);
    EXPECT_NEAR(w.phi(v({0, s})), 0.0, 1e-15);
    EXPECT_NEAR(*w.distance_to_optimum({v({0, s}), v({0, 0})}), 0.0, 1e-15);
  }
}

TEST(LinearWGAN, FullBatchEqualsEmpiricalExpectation) {
  const LinearWGAN w;
  std::vector<double> real = {0.1, -0.05, 0.02, 0.3}, latent = {1.0, -0.4, 0.7, 2.0};
  const Vec x = v({0.3, 0.6}), y = v({0.2, -0.1});
  Vec bx, by, ex, ey;
  w.batch_gradient(x, y, real, latent, bx, by);
  w.gradient_at_moments(x, y, WganMoments::of(real, latent), ex, ey);
  EXPECT_LE((bx - ex).norm(), 1e-15);
  EXPECT_LE((by - ey).norm(), 1e-15);
}

TEST(LinearWGAN, StochasticOracleIsUnbiased) {
  LinearWganParams prm;
  prm.batch_size = 10;
  const LinearWGAN w(prm);
  const Vec x = v({0.5, 0.5}), y = v({0.1, -0.2});
  const auto exact = grad(w, {x, y});
  RandomStream rng(8, StreamId::kXOracle);
  const int n = 100000;
  Vec s1 = Vec::Zero(4), s2 = Vec::Zero(4);
  for (int i = 0; i < n; ++i) {
    const auto g = sample_grad(w, {x, y}, rng);
    Vec c(4);
    c << g.gx, g.gy;
    s1 += c;
    s2 += c.cwiseProduct(c);
  }
  Vec e(4);
  e << exact.gx, exact.gy;
  for (int k = 0; k < 4; ++k) {
    const double mean = s1[k] / n;
    const double se = std::sqrt(std::max(s2[k] / n - mean * mean, 0.0) / n);
    EXPECT_LE(std::abs(mean - e[k]), 3 * se + 1e-15) << "coordinate " << k;
  }
}

TEST(DegenerateQuadratic, ConcaveNotStronglyConcaveButPL) {
  const auto d = DegenerateQuadratic::standard();
  EXPECT_GT(d.nullity(), 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(d.M());
  EXPECT_NEAR(es.eigenvalues().minCoeff(), 0.0, 1e-12);
  RandomStream rng(5, StreamId::kSampling);
  for (int i = 0; i < 1000; ++i) {
    const Point p = d.sample_in_box(rng);
    const auto g = grad(d, p);
    const double gap = d.phi(p.x) - d.value(p.x, p.y);
    ASSERT_GE(gap, -1e-12);
    EXPECT_GE(g.gy.squaredNorm(), 2 * d.mu() * gap * (1 - 1e-10));
  }
}

TEST(DegenerateQuadratic, ArgmaxSetIsAffineOfNullityDimension) {
  const auto d = DegenerateQuadratic::standard();
  const Vec x = v({0.3, -0.2});
  const Vec ys = d.y_star(x);
  Eigen::FullPivLU<Mat> lu(d.M());
  const Mat null = lu.kernel();
  ASSERT_EQ(null.cols(), d.nullity());
  for (Index k = 0; k < null.cols(); ++k) {
    const Vec y = ys + 3.0 * null.col(k);
    EXPECT_NEAR(d.value(x, y), d.phi(x), 1e-12);
    EXPECT_LE(grad(d, {x, y}).gy.norm(), 1e-12);
  }
}

TEST(DegenerateQuadratic, PhiMatchesPseudoinverseFormula) {
  const auto d = DegenerateQuadratic::standard();
  const Mat Mp = d.M().completeOrthogonalDecomposition().pseudoInverse();
  RandomStream rng(6, StreamId::kSampling);
  for (int i = 0; i < 50; ++i) {
    const Vec x = d.sample_in_box(rng).x;
    const double r2 = x.squaredNorm();
    const double expect = 0.25 * r2 * r2 - 0.5 * d.well_depth() * r2 + 0.5 * x.dot(d.B() * Mp * d.B().transpose() * x);
    EXPECT_NEAR(d.phi(x), expect, 1e-12);
    // ∇Φ agrees with differencing Φ.
    const Vec gp = d.grad_phi(x);
    for (Index k = 0; k < x.size(); ++k) {
      Vec xp = x, xm = x;
      xp[k] += 1e-6;
      xm[k] -= 1e-6;
      EXPECT_NEAR(gp[k], (d.phi(xp) - d.phi(xm)) / 2e-6, 1e-7);
    }
  }
}

TEST(DegenerateQuadratic, RejectsRangeViolation) {
  Mat B = Mat::Zero(1, 2), M = Mat::Zero(2, 2);
  M(0, 0) = 1;
  B(0, 1) = 1;  // Bᵀ points into the null space of M
  EXPECT_THROW(DegenerateQuadratic(B, M, 1.0), ConfigError);
}

TEST(NeuralWGAN, FiniteDifferenceAwayFromKinks) {
  const NeuralWGAN n;
  RandomStream rng(3, StreamId::kSampling);
  int checked = 0;
  for (int i = 0; i < 50 && checked < 5; ++i) {
    const Point p = n.sample_in_box(rng);
    if (n.kink_distance(p) < 1e-4) continue;
    const auto fd = finite_diff_grad(n, p);
    const auto g = grad(n, p);
    EXPECT_LE(rel_err(fd.gx, g.gx), 1e-5);
    EXPECT_LE(rel_err(fd.gy, g.gy), 1e-5);
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

TEST(Smoothness, CertifiedConstantsHoldOnTheTestBox) {
  std::vector<std::shared_ptr<const MinimaxProblem>> ps = {
      std::make_shared<QuadraticSaddle>(1, 1, 2), std::make_shared<QuadraticSaddle>(-1, 3, 0.5),
      std::make_shared<DegenerateQuadratic>(DegenerateQuadratic::standard()),
      std::make_shared<LinearWGAN>()};
  RandomStream rng(7, StreamId::kSampling);
  for (const auto& p : ps) {
    ASSERT_TRUE(p->constants().smoothness_certified) << p->name();
    for (int i = 0; i < 1000; ++i) {
      const Point a = p->sample_in_box(rng), b = p->sample_in_box(rng);
      const auto ga = grad(*p, a), gb = grad(*p, b);
      const double dist = (a.x - b.x).norm() + (a.y - b.y).norm();
      EXPECT_LE((ga.gx - gb.gx).norm(), p->l() * dist * (1 + 1e-12)) << p->name();
      EXPECT_LE((ga.gy - gb.gy).norm(), p->l() * dist * (1 + 1e-12)) << p->name();
    }
  }
}

TEST(Registry, BuildsEveryProblemAndRejectsUnknownKeys) {
  for (const auto& id : problem_ids()) {
    const auto p = make_problem(id, nlohmann::json::object());
    EXPECT_EQ(p->name(), id);
  }
  EXPECT_THROW(make_problem("nope", {}), ConfigError);
  EXPECT_THROW(make_problem("quadratic-saddle", {{"d", 1.0}}), ConfigError);
  EXPECT_THROW(make_problem("quadratic-saddle", {{"a", "x"}}), ConfigError);
  const auto q = make_problem("quadratic-saddle", {{"a", 2.0}, {"b", 0.5}, {"c", 4.0}});
  EXPECT_DOUBLE_EQ(q->l(), 4.0);
}

TEST(ClosedFormQuery, UnsupportedIsReported) {
  const RobustRegression r;
  EXPECT_FALSE(r.has(ClosedForm::kProxPhi));
  EXPECT_THROW(closed_form_query(r, ClosedForm::kProxPhi, Vec::Zero(r.dim_x()), 0.1), UnsupportedCapability);
}

}  // namespace
}  // namespace ncpl
