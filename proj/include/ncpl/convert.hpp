#pragma once

#include <string>
#include <vector>

#include "ncpl/metrics.hpp"
#include "ncpl/problem.hpp"
#include "ncpl/rng.hpp"

namespace ncpl {

struct ConversionResult {
  Point point;
  long oracle_calls = 0;  ///< gradient evaluations consumed, certificate checks included
  long steps = 0;         ///< ascent steps (to-f) or inner AGDA steps (to-phi)
  StationarityReport certificate;
  /// True when the stopping test used closed forms, false when it used a gradient surrogate.
  bool certified_exactly = false;
  std::vector<std::string> warnings;
};

struct ConversionOptions {
  bool stochastic = false;
  long max_steps = 1000000;
  double report_tol = 1e-8;  ///< tolerance for the certificate's ∇Φ estimate
};

/// Gradient ascent on f(x̂, ·) from ỹ until Φ(x̂) − f(x̂, ŷ) ≤ ε²/(lκ), using
/// closed-form Φ when available and ‖∇_y f‖²/(2μ) otherwise. Stepsize 1/l, or
/// min{1/l, ε²/(lκ²σ²)} in stochastic mode. A violated precondition
/// ‖∇_y f(x̂, ỹ)‖ ≤ ε′ is reported as a warning.
ConversionResult to_f_stationary(const MinimaxProblem& problem, const Vec& x_hat, const Vec& y_tilde,
                                 double eps, double eps_prime, RandomStream& rng,
                                 const ConversionOptions& opt = {});

/// AGDA updating y first on f + l‖x − x̃‖² from (x̃, ỹ) until ‖x_k − x*‖ ≤ ε/(κl),
/// with x* in closed form when available and the certified surrogate distance
/// bound otherwise. Stepsizes τ₁ = 1/(3l), τ₂ = 1/(486l), or in stochastic mode
/// τ₂ = min{1/(486l), ε²/(κ⁴lσ²)}, τ₁ = 162τ₂.
ConversionResult to_phi_stationary(const MinimaxProblem& problem, const Vec& x_tilde,
                                   const Vec& y_tilde, double eps, RandomStream& rng,
                                   const ConversionOptions& opt = {});

}  // namespace ncpl
