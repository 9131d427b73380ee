#include "ncpl/problems/quadratic_saddle.hpp"

#include <cmath>

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

ProblemConstants saddle_constants(double a, double b, double c, double sigma, TestBox box) {
  if (!(c > 0.0)) throw ConfigError("quadratic-saddle: c must be positive");
  if (!(sigma >= 0.0)) throw ConfigError("quadratic-saddle: sigma must be nonnegative");
  ProblemConstants k;
  k.smoothness_l = std::max({std::abs(a), std::abs(b), std::abs(c)});
  k.pl_mu = c;
  k.noise_sigma = sigma;
  k.box = box;
  return k;
}

Mat one(double v) { return Mat::Constant(1, 1, v); }

}  // namespace

QuadraticSaddle::QuadraticSaddle(double a, double b, double c, double sigma, TestBox box)
    : MinimaxProblem(1, 1, saddle_constants(a, b, c, sigma, box),
                     sigma > 0.0 ? NoiseModel::kGaussian : NoiseModel::kNone),
      a_(a), b_(b), c_(c), model_(one(a), one(b), one(c)) {}

double QuadraticSaddle::value(const Vec& x, const Vec& y) const {
  const double u = x[0], v = y[0];
  return 0.5 * a_ * u * u + b_ * u * v - 0.5 * c_ * v * v;
}

void QuadraticSaddle::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  gx.resize(1);
  gy.resize(1);
  gx[0] = a_ * x[0] + b_ * y[0];
  gy[0] = b_ * x[0] - c_ * y[0];
}

bool QuadraticSaddle::has(ClosedForm which) const {
  switch (which) {
    case ClosedForm::kPsi: return a_ > 0.0;
    case ClosedForm::kPhiStar: return phi_curvature() >= 0.0;
    default: return true;
  }
}

Vec QuadraticSaddle::y_star(const Vec& x) const { return Vec::Constant(1, b_ / c_ * x[0]); }

double QuadraticSaddle::phi(const Vec& x) const { return 0.5 * phi_curvature() * x[0] * x[0]; }

Vec QuadraticSaddle::grad_phi(const Vec& x) const { return Vec::Constant(1, phi_curvature() * x[0]); }

double QuadraticSaddle::psi(const Vec& y) const {
  if (!has(ClosedForm::kPsi)) unsupported(ClosedForm::kPsi);
  return -0.5 * (b_ * b_ / a_ + c_) * y[0] * y[0];
}

double QuadraticSaddle::phi_star() const {
  if (!has(ClosedForm::kPhiStar)) unsupported(ClosedForm::kPhiStar);
  return 0.0;
}

Vec QuadraticSaddle::prox_phi(const Vec& x, double lambda) const {
  // argmin_z (k/2)z² + (z − x)²/(2λ)
  const double denom = 1.0 + lambda * phi_curvature();
  if (!(denom > 0.0)) throw ConfigError("quadratic-saddle: prox is unbounded for this lambda");
  return Vec::Constant(1, x[0] / denom);
}

std::optional<Vec> QuadraticSaddle::project_to_argmax(const Vec& x, const Vec&) const {
  return y_star(x);
}

std::optional<double> QuadraticSaddle::distance_to_optimum(const Point& p) const {
  if (!(phi_curvature() > 0.0)) return std::nullopt;
  return std::hypot(p.x[0], p.y[0]);
}

Point QuadraticSaddle::initial_point() const { return {Vec::Ones(1), Vec::Ones(1)}; }

}  // namespace ncpl
