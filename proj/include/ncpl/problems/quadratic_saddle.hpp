#pragma once

#include "ncpl/problem.hpp"
#include "ncpl/quadratic_model.hpp"

namespace ncpl {

/// f(x, y) = (a/2)x² + bxy − (c/2)y², scalar x and y, c > 0.
/// Φ(x) = (k/2)x² with k = a + b²/c.
class QuadraticSaddle final : public MinimaxProblem {
 public:
  QuadraticSaddle(double a, double b, double c, double sigma = 0.0, TestBox box = {});

  std::string name() const override { return "quadratic-saddle"; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  /// Curvature of Φ.
  double phi_curvature() const { return a_ + b_ * b_ / c_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;

  bool has(ClosedForm which) const override;
  Vec y_star(const Vec& x) const override;
  double phi(const Vec& x) const override;
  Vec grad_phi(const Vec& x) const override;
  double psi(const Vec& y) const override;
  double phi_star() const override;
  Vec prox_phi(const Vec& x, double lambda) const override;
  std::optional<Vec> project_to_argmax(const Vec& x, const Vec& y) const override;
  const QuadraticModel* quadratic_model() const override { return &model_; }
  std::optional<double> distance_to_optimum(const Point& p) const override;
  Point initial_point() const override;

 private:
  double a_, b_, c_;
  QuadraticModel model_;
};

}  // namespace ncpl
