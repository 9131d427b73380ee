#include "ncpl/convert.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "ncpl/errors.hpp"
#include "ncpl/quadratic_model.hpp"
#include "ncpl/solvers.hpp"

namespace ncpl {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("conversion: eps must be positive");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void finish(const MinimaxProblem& problem, ConversionResult& r, const ConversionOptions& opt) {
  MetricOptions m;
  m.y_hint = r.point.y;
  r.certificate = stationarity_report(problem, r.point, opt.report_tol, false, m);
}

}  // namespace

ConversionResult to_f_stationary(const MinimaxProblem& problem, const Vec& x_hat, const Vec& y_tilde,
                                 double eps, double eps_prime, RandomStream& rng,
                                 const ConversionOptions& opt) {
  check_eps(eps);
  ConversionResult r;
  r.point = {x_hat, y_tilde};
  check_dimensions(problem, r.point);
  const double l = problem.l(), mu = problem.mu(), kappa = problem.kappa(), sigma = problem.sigma();
  const double target = eps * eps / (l * kappa);
  const bool closed = problem.has(ClosedForm::kPhi);
  r.certified_exactly = closed;

  Vec gx(problem.dim_x()), gy(problem.dim_y());
  problem.gradient(x_hat, y_tilde, gx, gy);
  if (gy.norm() > eps_prime) {
    r.warnings.push_back("precondition violated: |grad_y f| = " + fmt(gy.norm()) + " > eps' = " + fmt(eps_prime));
  }

  double tau = 1.0 / l;
  if (opt.stochastic && sigma > 0.0) tau = std::min(tau, eps * eps / (l * kappa * kappa * sigma * sigma));
  const double phi = closed ? problem.phi(x_hat) : 0.0;
  Vec& y = r.point.y;
  for (;;) {
    double gap;
    if (closed) {
      gap = phi - problem.value(x_hat, y);
    } else {
      problem.gradient(x_hat, y, gx, gy);
      ++r.oracle_calls;
      gap = gy.squaredNorm() / (2.0 * mu);
    }
    if (!std::isfinite(gap)) throw NumericError("to_f_stationary: non-finite gap");
    if (gap <= target) break;
    if (r.steps >= opt.max_steps) {
      throw NonConvergenceError("to_f_stationary: exhausted " + std::to_string(opt.max_steps) + " ascent steps",
                                r.steps, gap);
    }
    if (opt.stochastic) {
      problem.sample_gradient(x_hat, y, rng, gx, gy);
      ++r.oracle_calls;
    } else if (closed) {
      problem.gradient(x_hat, y, gx, gy);
      ++r.oracle_calls;
    }
    y += tau * gy;
    ++r.steps;
    if (diverged(y)) throw NumericError("to_f_stationary: ascent diverged");
  }
  finish(problem, r, opt);
  return r;
}

ConversionResult to_phi_stationary(const MinimaxProblem& problem, const Vec& x_tilde,
                                   const Vec& y_tilde, double eps, RandomStream& rng,
                                   const ConversionOptions& opt) {
  check_eps(eps);
  ConversionResult r;
  r.point = {x_tilde, y_tilde};
  check_dimensions(problem, r.point);
  const double l = problem.l(), kappa = problem.kappa(), sigma = problem.sigma();

  Vec gx(problem.dim_x()), gy(problem.dim_y());
  problem.gradient(x_tilde, y_tilde, gx, gy);
  if (gx.norm() > eps || gy.norm() > eps / std::sqrt(kappa)) {
    r.warnings.push_back("precondition violated: (|grad_x f|, |grad_y f|) = (" + fmt(gx.norm()) + ", " +
                         fmt(gy.norm()) + ") is not (eps, eps/sqrt(kappa))-stationary");
  }

  double tau2 = 1.0 / (486.0 * l);
  double tau1 = 1.0 / (3.0 * l);
  if (opt.stochastic && sigma > 0.0) {
    tau2 = std::min(tau2, eps * eps / (kappa * kappa * kappa * kappa * l * sigma * sigma));
    tau1 = 162.0 * tau2;
  }

  std::optional<Vec> x_star;
  if (problem.has(ClosedForm::kProxPhi)) {
    x_star = problem.prox_phi(x_tilde, 1.0 / (2.0 * l));
  } else if (const QuadraticModel* q = problem.quadratic_model()) {
    x_star = q->anchored_saddle_x(x_tilde, l);
  }
  r.certified_exactly = x_star.has_value();
  if (!x_star) {
    r.warnings.push_back("no closed-form prox: stopping uses the surrogate-gap distance bound");
  }
  const double target = eps / (kappa * l);
  const Vec& anchor = x_tilde;
  Point& pt = r.point;
  for (;;) {
    double dist;
    if (x_star) {
      dist = (pt.x - *x_star).norm();
    } else {
      // Φ̂ is l-strongly convex, so ‖x − x*‖² ≤ 2·gap/l ≤ 2·surrogate/l.
      const GapBound g = gap_bound(problem, anchor, pt, l);
      ++r.oracle_calls;
      dist = std::sqrt(2.0 * g.surrogate / l);
    }
    if (!std::isfinite(dist)) throw NumericError("to_phi_stationary: non-finite distance");
    if (dist <= target) break;
    if (r.steps >= opt.max_steps) {
      throw NonConvergenceError("to_phi_stationary: exhausted " + std::to_string(opt.max_steps) + " inner steps",
                                r.steps, dist);
    }
    if (opt.stochastic) {
      problem.sample_gradient(pt.x, pt.y, rng, gx, gy);
    } else {
      problem.gradient(pt.x, pt.y, gx, gy);
    }
    pt.y += tau2 * gy;
    if (opt.stochastic) {
      problem.sample_gradient(pt.x, pt.y, rng, gx, gy);
    } else {
      problem.gradient(pt.x, pt.y, gx, gy);
    }
    gx += 2.0 * l * (pt.x - anchor);
    pt.x -= tau1 * gx;
    r.oracle_calls += 2;
    ++r.steps;
    if (diverged(pt.x) || diverged(pt.y)) throw NumericError("to_phi_stationary: inner AGDA diverged");
  }
  finish(problem, r, opt);
  return r;
}

}  // namespace ncpl
