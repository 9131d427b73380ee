#include "ncpl/metrics.hpp"

#include <cmath>
#include <functional>

#include "ncpl/errors.hpp"
#include "ncpl/quadratic_model.hpp"

namespace ncpl {

namespace {

void require_tol(double tol, const char* who) {
  if (!(tol > 0.0)) throw ConfigError(std::string(who) + ": tolerance must be positive");
}

Vec ascent_start(const MinimaxProblem& problem, const Vec& x, const MetricOptions& opt) {
  if (opt.y_hint) return *opt.y_hint;
  if (problem.has(ClosedForm::kYStar)) return problem.y_star(x);
  return Vec::Zero(problem.dim_y());
}

/// Deterministic ascent with step 1/l until ‖∇_y f‖ ≤ target. Returns ŷ and ∇ₓf(x, ŷ).
struct AscentResult {
  Vec y, gx, gy;
};

AscentResult ascend_until(const MinimaxProblem& problem, const Vec& x, Vec y, double target,
                          long max_inner, const char* who) {
  const double tau = 1.0 / problem.l();
  AscentResult r{std::move(y), Vec(problem.dim_x()), Vec(problem.dim_y())};
  for (long k = 0;; ++k) {
    problem.gradient(x, r.y, r.gx, r.gy);
    const double res = r.gy.norm();
    if (!std::isfinite(res)) throw NumericError(std::string(who) + ": inner ascent produced non-finite values");
    if (res <= target) return r;
    if (k >= max_inner) {
      throw NonConvergenceError(std::string(who) + ": inner ascent exhausted its budget of " +
                                    std::to_string(max_inner) + " iterations",
                                k, res);
    }
    r.y += tau * r.gy;
  }
}

}  // namespace

Estimate grad_phi_norm(const MinimaxProblem& problem, const Vec& x, double tol,
                       const MetricOptions& opt) {
  require_tol(tol, "grad_phi");
  if (opt.prefer_closed_form && problem.has(ClosedForm::kGradPhi)) {
    return {problem.grad_phi(x).norm(), true, 0.0};
  }
  // ‖∇ₓf(x, ŷ) − ∇Φ(x)‖ ≤ l‖ŷ − y*‖ ≤ (l/μ)‖∇_y f(x, ŷ)‖ ≤ tol/2.
  const double target = tol * problem.mu() / (2.0 * problem.l());
  const AscentResult r = ascend_until(problem, x, ascent_start(problem, x, opt), target,
                                      opt.max_inner, "grad_phi");
  return {r.gx.norm(), false, tol};
}

Estimate phi_value(const MinimaxProblem& problem, const Vec& x, double tol, const MetricOptions& opt) {
  require_tol(tol, "phi");
  if (opt.prefer_closed_form && problem.has(ClosedForm::kPhi)) return {problem.phi(x), true, 0.0};
  // PL: Φ(x) − f(x, ŷ) ≤ ‖∇_y f‖²/(2μ).
  const double target = std::sqrt(2.0 * problem.mu() * tol);
  const AscentResult r = ascend_until(problem, x, ascent_start(problem, x, opt), target,
                                      opt.max_inner, "phi");
  return {problem.value(x, r.y), false, tol};
}

GapBound gap_bound(const MinimaxProblem& problem, const Vec& anchor, const Point& p,
                   std::optional<double> w_opt) {
  check_dimensions(problem, p);
  const double l = problem.l();
  const double w = w_opt.value_or(l);
  if (!(2.0 * w > l)) throw ConfigError("gap_bound: anchoring weight must exceed l/2");
  Vec gx(problem.dim_x()), gy(problem.dim_y());
  problem.gradient(p.x, p.y, gx, gy);
  gx += 2.0 * w * (p.x - anchor);
  const double nx = gx.squaredNorm(), ny = gy.squaredNorm();
  GapBound g;
  g.surrogate = ny / (2.0 * problem.mu()) + nx / (2.0 * (2.0 * w - l));
  g.lower = ny / (2.0 * l) + nx / (2.0 * (l + 2.0 * w));
  if (const QuadraticModel* q = problem.quadratic_model()) {
    g.exact = std::max(0.0, q->anchored_gap(p.x, p.y, anchor, w));
  }
  return g;
}

namespace {

/// Shared AGDA (y first) loop on the anchored problem; `done` sees the current
/// surrogate bound and x_k.
AnchoredSolution anchored_loop(const MinimaxProblem& problem, const Vec& anchor, double w,
                               Point pt, long max_iter,
                               const std::function<bool(double surrogate, const Vec& x)>& done,
                               const char* who) {
  check_dimensions(problem, pt);
  const double l = problem.l();
  if (!(2.0 * w > l)) throw ConfigError(std::string(who) + ": anchoring weight must exceed l/2");
  const double l_hat = l + 2.0 * w;
  const double mu1 = 2.0 * w - l;
  const double tau1 = 1.0 / l_hat;
  const double tau2 = mu1 * mu1 / (18.0 * l_hat * l_hat * l_hat);
  Vec gx(problem.dim_x()), gy(problem.dim_y()), gx2(problem.dim_x()), gy2(problem.dim_y());
  for (long k = 0;; ++k) {
    problem.gradient(pt.x, pt.y, gx, gy);
    gx += 2.0 * w * (pt.x - anchor);
    const double surrogate = gy.squaredNorm() / (2.0 * problem.mu()) + gx.squaredNorm() / (2.0 * mu1);
    if (!std::isfinite(surrogate)) throw NumericError(std::string(who) + ": anchored solve produced non-finite values");
    if (done(surrogate, pt.x)) {
      AnchoredSolution s;
      s.point = std::move(pt);
      s.iterations = k;
      // Φ̂ is μ₁-strongly convex and Φ̂(x) − Φ̂(x*) ≤ gap ≤ surrogate.
      s.x_distance_bound = std::sqrt(2.0 * surrogate / mu1);
      return s;
    }
    if (k >= max_iter) {
      throw NonConvergenceError(std::string(who) + ": anchored AGDA exhausted its budget of " +
                                    std::to_string(max_iter) + " iterations",
                                k, surrogate);
    }
    pt.y += tau2 * gy;
    problem.gradient(pt.x, pt.y, gx2, gy2);
    gx2 += 2.0 * w * (pt.x - anchor);
    pt.x -= tau1 * gx2;
  }
}

}  // namespace

AnchoredSolution solve_anchored(const MinimaxProblem& problem, const Vec& anchor, double w,
                                Point start, double tol, long max_iter) {
  require_tol(tol, "solve_anchored");
  const double mu1 = 2.0 * w - problem.l();
  const double floor = 1e-4 * std::max(1.0, anchor.norm());
  auto done = [&](double surrogate, const Vec& x) {
    const double d = std::sqrt(2.0 * surrogate / mu1);
    return d <= tol * std::max((anchor - x).norm() - d, floor);
  };
  return anchored_loop(problem, anchor, w, std::move(start), max_iter, done, "solve_anchored");
}

Estimate moreau_grad(const MinimaxProblem& problem, const Vec& x, double tol, const MetricOptions& opt) {
  require_tol(tol, "moreau_grad");
  const double l = problem.l();
  if (opt.prefer_closed_form && problem.has(ClosedForm::kProxPhi)) {
    return {2.0 * l * (x - problem.prox_phi(x, 1.0 / (2.0 * l))).norm(), true, 0.0};
  }
  Point start{x, ascent_start(problem, x, opt)};
  const AnchoredSolution s = solve_anchored(problem, x, l, std::move(start), tol, opt.max_inner);
  const double value = 2.0 * l * (x - s.point.x).norm();
  return {value, false, 2.0 * l * s.x_distance_bound};
}

Estimate potential_agda(const MinimaxProblem& problem, const Point& p, double tol,
                        const MetricOptions& opt) {
  check_dimensions(problem, p);
  MetricOptions o = opt;
  if (!o.y_hint) o.y_hint = p.y;
  const Estimate phi = phi_value(problem, p.x, tol, o);
  const double f = problem.value(p.x, p.y);
  return {phi.value + 0.125 * (phi.value - f), phi.exact, 1.125 * phi.tol};
}

Estimate potential_smoothed(const MinimaxProblem& problem, const Point& pt, const Vec& z, double p,
                            double tol, const MetricOptions& opt) {
  check_dimensions(problem, pt);
  if (z.size() != problem.dim_x()) throw ConfigError("potential_smoothed: z has the wrong length");
  const double w = 0.5 * p;
  const double l = problem.l();
  if (!(2.0 * w > l)) throw ConfigError("potential_smoothed: need p > l");
  if (opt.prefer_closed_form) {
    if (const QuadraticModel* q = problem.quadratic_model()) {
      const double v = q->anchored_value(pt.x, pt.y, z, w) - 2.0 * q->anchored_psi(pt.y, z, w) +
                       2.0 * q->anchored_saddle_value(z, w);
      return {v, true, 0.0};
    }
  }
  require_tol(tol, "potential_smoothed");
  // Ψ(y; z): gradient descent on the (2w − l)-strongly convex x-problem.
  const double mu1 = 2.0 * w - l;
  Vec x = pt.x;
  Vec gx(problem.dim_x()), gy(problem.dim_y());
  double psi_err = 0.0;
  for (long k = 0;; ++k) {
    problem.gradient(x, pt.y, gx, gy);
    gx += 2.0 * w * (x - z);
    psi_err = gx.squaredNorm() / (2.0 * mu1);
    if (psi_err <= tol / 4.0) break;
    if (k >= opt.max_inner) {
      throw NonConvergenceError("potential_smoothed: inner descent exhausted its budget", k, psi_err);
    }
    x -= gx / (l + 2.0 * w);
  }
  const double psi = problem.value(x, pt.y) + w * (x - z).squaredNorm();
  // P(z) = f̂ at an approximate saddle, |f̂(x_k, y_k) − P| ≤ surrogate.
  auto done = [&](double surrogate, const Vec&) { return surrogate <= tol / 4.0; };
  const AnchoredSolution s = anchored_loop(problem, z, w, {z, pt.y}, opt.max_inner, done,
                                           "potential_smoothed");
  const double P = problem.value(s.point.x, s.point.y) + w * (s.point.x - z).squaredNorm();
  const double fhat = problem.value(pt.x, pt.y) + w * (pt.x - z).squaredNorm();
  return {fhat - 2.0 * psi + 2.0 * P, false, tol};
}

double two_sided_pl_potential(const MinimaxProblem& problem, const Vec& anchor, double w,
                              const Point& p) {
  const QuadraticModel* q = problem.quadratic_model();
  if (!q) throw UnsupportedCapability(problem.name() + ": two-sided PL potential needs a quadratic model");
  const double psi_star = q->anchored_saddle_value(anchor, w);
  const double psi = q->anchored_psi(p.y, anchor, w);
  return (psi_star - psi) + 0.1 * (q->anchored_value(p.x, p.y, anchor, w) - psi);
}

StationarityReport stationarity_report(const MinimaxProblem& problem, const Point& p, double tol,
                                       bool with_moreau, const MetricOptions& opt) {
  const GradientPair g = grad(problem, p);
  StationarityReport r;
  r.grad_f_x_norm = g.gx.norm();
  r.grad_f_y_norm = g.gy.norm();
  r.eps1 = r.grad_f_x_norm;
  r.eps2 = r.grad_f_y_norm;
  MetricOptions o = opt;
  if (!o.y_hint) o.y_hint = p.y;
  r.grad_phi_norm = grad_phi_norm(problem, p.x, tol, o);
  if (with_moreau) r.moreau_grad_norm = moreau_grad(problem, p.x, tol, o);
  return r;
}

std::vector<std::string> metric_ids() {
  return {"grad-f", "grad-phi", "moreau", "potential-agda", "potential-smoothed", "gap", "dist-to-opt"};
}

}  // namespace ncpl
