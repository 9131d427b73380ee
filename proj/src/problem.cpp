#include "ncpl/problem.hpp"

#include <cmath>

#include "ncpl/errors.hpp"

namespace ncpl {

std::string to_string(ClosedForm which) {
  switch (which) {
    case ClosedForm::kYStar: return "y_star";
    case ClosedForm::kPhi: return "Phi";
    case ClosedForm::kGradPhi: return "grad_Phi";
    case ClosedForm::kPsi: return "Psi";
    case ClosedForm::kPhiStar: return "Phi_star";
    case ClosedForm::kProxPhi: return "prox_Phi";
  }
  return "?";
}

void MinimaxProblem::unsupported(ClosedForm which) const {
  throw UnsupportedCapability(name() + " has no closed-form " + to_string(which));
}

void MinimaxProblem::sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                                     Vec& gy) const {
  gradient(x, y, gx, gy);
  const double s = sigma();
  if (s == 0.0) return;
  const double sx = s / std::sqrt(static_cast<double>(dim_x()));
  const double sy = s / std::sqrt(static_cast<double>(dim_y()));
  for (Index i = 0; i < gx.size(); ++i) gx[i] += sx * rng.normal();
  for (Index j = 0; j < gy.size(); ++j) gy[j] += sy * rng.normal();
}

Vec MinimaxProblem::y_star(const Vec&) const { unsupported(ClosedForm::kYStar); }
double MinimaxProblem::phi(const Vec&) const { unsupported(ClosedForm::kPhi); }
double MinimaxProblem::psi(const Vec&) const { unsupported(ClosedForm::kPsi); }
double MinimaxProblem::phi_star() const { unsupported(ClosedForm::kPhiStar); }
Vec MinimaxProblem::prox_phi(const Vec&, double) const { unsupported(ClosedForm::kProxPhi); }

Vec MinimaxProblem::grad_phi(const Vec& x) const {
  if (!has(ClosedForm::kYStar)) unsupported(ClosedForm::kGradPhi);
  Vec gx(dim_x()), gy(dim_y());
  gradient(x, y_star(x), gx, gy);
  return gx;
}

std::optional<Vec> MinimaxProblem::project_to_argmax(const Vec& x, const Vec&) const {
  if (has(ClosedForm::kYStar)) return y_star(x);
  return std::nullopt;
}

std::optional<double> MinimaxProblem::distance_to_optimum(const Point&) const { return std::nullopt; }

Point MinimaxProblem::initial_point() const { return {Vec::Zero(dim_x()), Vec::Zero(dim_y())}; }

Point MinimaxProblem::sample_in_box(RandomStream& rng) const {
  const TestBox& b = constants().box;
  Point p{Vec(dim_x()), Vec(dim_y())};
  for (Index i = 0; i < dim_x(); ++i) p.x[i] = rng.uniform(-b.x_radius, b.x_radius);
  for (Index j = 0; j < dim_y(); ++j) p.y[j] = rng.uniform(-b.y_radius, b.y_radius);
  return p;
}

void check_dimensions(const MinimaxProblem& problem, const Point& p) {
  if (p.x.size() != problem.dim_x() || p.y.size() != problem.dim_y()) {
    throw ConfigError(problem.name() + ": point has dimensions (" + std::to_string(p.x.size()) +
                      ", " + std::to_string(p.y.size()) + "), expected (" +
                      std::to_string(problem.dim_x()) + ", " + std::to_string(problem.dim_y()) + ")");
  }
}

namespace {

void check_finite(const MinimaxProblem& problem, const GradientPair& g, const char* what) {
  if (!all_finite(g.gx) || !all_finite(g.gy)) {
    throw NumericError(problem.name() + ": non-finite " + what);
  }
}

}  // namespace

GradientPair grad(const MinimaxProblem& problem, const Point& p) {
  check_dimensions(problem, p);
  GradientPair g{Vec(problem.dim_x()), Vec(problem.dim_y())};
  problem.gradient(p.x, p.y, g.gx, g.gy);
  check_finite(problem, g, "gradient");
  return g;
}

GradientPair sample_grad(const MinimaxProblem& problem, const Point& p, RandomStream& rng) {
  check_dimensions(problem, p);
  GradientPair g{Vec(problem.dim_x()), Vec(problem.dim_y())};
  problem.sample_gradient(p.x, p.y, rng, g.gx, g.gy);
  check_finite(problem, g, "stochastic gradient");
  return g;
}

GradientPair finite_diff_grad(const MinimaxProblem& problem, const Point& p, double h) {
  check_dimensions(problem, p);
  if (!(h > 0.0)) throw ConfigError("finite_diff_grad: step must be positive");
  GradientPair g{Vec(problem.dim_x()), Vec(problem.dim_y())};
  Vec x = p.x;
  Vec y = p.y;
  for (Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double step = h * std::max(1.0, std::abs(xi));
    x[i] = xi + step;
    const double fp = problem.value(x, y);
    x[i] = xi - step;
    const double fm = problem.value(x, y);
    x[i] = xi;
    g.gx[i] = (fp - fm) / (2.0 * step);
  }
  for (Index j = 0; j < y.size(); ++j) {
    const double yj = y[j];
    const double step = h * std::max(1.0, std::abs(yj));
    y[j] = yj + step;
    const double fp = problem.value(x, y);
    y[j] = yj - step;
    const double fm = problem.value(x, y);
    y[j] = yj;
    g.gy[j] = (fp - fm) / (2.0 * step);
  }
  check_finite(problem, g, "finite-difference gradient");
  return g;
}

Vec closed_form_query(const MinimaxProblem& problem, ClosedForm which, const Vec& arg,
                      double lambda) {
  if (!problem.has(which)) {
    throw UnsupportedCapability(problem.name() + " has no closed-form " + to_string(which));
  }
  auto scalar = [](double v) { return Vec::Constant(1, v); };
  auto need = [&](Index n) {
    if (arg.size() != n) {
      throw ConfigError(to_string(which) + ": argument has length " + std::to_string(arg.size()) +
                        ", expected " + std::to_string(n));
    }
  };
  switch (which) {
    case ClosedForm::kYStar: need(problem.dim_x()); return problem.y_star(arg);
    case ClosedForm::kPhi: need(problem.dim_x()); return scalar(problem.phi(arg));
    case ClosedForm::kGradPhi: need(problem.dim_x()); return problem.grad_phi(arg);
    case ClosedForm::kPsi: need(problem.dim_y()); return scalar(problem.psi(arg));
    case ClosedForm::kPhiStar: return scalar(problem.phi_star());
    case ClosedForm::kProxPhi:
      need(problem.dim_x());
      if (!(lambda > 0.0)) throw ConfigError("prox_Phi: lambda must be positive");
      return problem.prox_phi(arg, lambda);
  }
  return {};
}

}  // namespace ncpl
