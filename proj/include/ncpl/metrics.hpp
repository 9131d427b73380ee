#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncpl/problem.hpp"

namespace ncpl {

/// A metric value with its fidelity. When estimated, |value − truth| ≤ tol.
struct Estimate {
  double value = 0.0;
  bool exact = true;
  double tol = 0.0;
};

/// Upper/lower bounds on the gap of f̂ = f + w‖x − anchor‖², w ≥ l, at a point:
///   surrogate = ‖∇_y f̂‖²/(2μ) + ‖∇ₓf̂‖²/(2(2w − l))   (≥ gap)
///   lower     = ‖∇_y f̂‖²/(2l) + ‖∇ₓf̂‖²/(2(l + 2w))    (≤ gap)
struct GapBound {
  std::optional<double> exact;
  double surrogate = 0.0;
  double lower = 0.0;
};

struct StationarityReport {
  double grad_f_x_norm = 0.0;
  double grad_f_y_norm = 0.0;
  Estimate grad_phi_norm;
  std::optional<Estimate> moreau_grad_norm;
  /// The (ε₁, ε₂) pair this point certifies for f.
  double eps1 = 0.0;
  double eps2 = 0.0;
};

struct MetricOptions {
  bool prefer_closed_form = true;
  long max_inner = 100000;
  /// Start for inner maximizations when no y*(x) is known.
  std::optional<Vec> y_hint;
};

/// ‖∇Φ(x)‖: closed form, or ‖∇ₓf(x, ŷ)‖ after gradient ascent until
/// ‖∇_y f(x, ŷ)‖ ≤ tol·μ/(2l).
Estimate grad_phi_norm(const MinimaxProblem& problem, const Vec& x, double tol,
                       const MetricOptions& opt = {});

/// Φ(x): closed form, or f(x, ŷ) after ascent until ‖∇_y f‖²/(2μ) ≤ tol.
Estimate phi_value(const MinimaxProblem& problem, const Vec& x, double tol,
                   const MetricOptions& opt = {});

/// Result of solving min_x′ max_y f(x′, y) + w‖x′ − anchor‖².
struct AnchoredSolution {
  Point point;
  long iterations = 0;
  /// Certified bound on ‖point.x − x*‖.
  double x_distance_bound = 0.0;
};

/// Deterministic AGDA (y first) with τ₁ = 1/(l + 2w), τ₂ = 1/(486l) on the
/// anchored problem until ‖x_k − x*‖ ≤ tol·max(‖anchor − x_k‖ − bound, 1).
/// Requires w > l/2. Throws NonConvergenceError after max_iter steps.
AnchoredSolution solve_anchored(const MinimaxProblem& problem, const Vec& anchor, double w,
                                Point start, double tol, long max_iter);

/// ‖∇Φ_{1/2l}(x)‖ = 2l‖x − prox_Φ(x, 1/2l)‖.
Estimate moreau_grad(const MinimaxProblem& problem, const Vec& x, double tol,
                     const MetricOptions& opt = {});

/// Φ(x) + (1/8)(Φ(x) − f(x, y)).
Estimate potential_agda(const MinimaxProblem& problem, const Point& p, double tol = 1e-10,
                        const MetricOptions& opt = {});

/// f̂(x,y;z) − 2Ψ(y;z) + 2P(z) with f̂ = f + (p/2)‖x − z‖², Ψ(y;z) = min_x f̂,
/// P(z) = min_x max_y f̂. Closed form on quadratic models; nested solves otherwise.
Estimate potential_smoothed(const MinimaxProblem& problem, const Point& pt, const Vec& z, double p,
                            double tol = 1e-10, const MetricOptions& opt = {});

/// Gap bounds of f + w‖x − anchor‖² at `p`; w defaults to l.
GapBound gap_bound(const MinimaxProblem& problem, const Vec& anchor, const Point& p,
                   std::optional<double> w = std::nullopt);

/// [Ψ* − Ψ(y)] + (1/10)[f̂(x,y) − Ψ(y)] on f̂ = f + w‖x − anchor‖² (quadratic models).
double two_sided_pl_potential(const MinimaxProblem& problem, const Vec& anchor, double w,
                              const Point& p);

StationarityReport stationarity_report(const MinimaxProblem& problem, const Point& p, double tol,
                                       bool with_moreau = false, const MetricOptions& opt = {});

/// Metric ids accepted in run configs.
std::vector<std::string> metric_ids();

}  // namespace ncpl
