#pragma once

namespace ncpl {

/// Solver hyperparameters. p and beta are only read by Smoothed-AGDA; beta
/// doubles as the Catalyst stop factor.
struct StepSizes {
  double tau1 = 0.0;  ///< x stepsize
  double tau2 = 0.0;  ///< y stepsize
  double p = 0.0;     ///< smoothing strength
  double beta = 1.0;  ///< proximal-center averaging

  bool operator==(const StepSizes&) const = default;
};

/// Stoc-AGDA stepsizes for horizon T and initial gap Δ = Φ(x₀) − Φ*:
///   τ₁ = min(√Δ/(4σκ²√(Tl)), 1/(68lκ²)),  τ₂ = min(17√Δ/(σ√(Tl)), 1/l).
/// σ = 0 selects the second branch of each min.
StepSizes theorem1_stepsizes(double l, double mu, double sigma, double T, double Delta);

/// Smoothed-AGDA stepsizes:
///   τ₁ = min(√Δ/(2σ√(Tl)), 1/(3l)),  τ₂ = min(√Δ/(96σ√(Tl)), 1/(144l)),
///   p = 2l,  β = τ₂μ/1600.
StepSizes theorem2_stepsizes(double l, double mu, double sigma, double T, double Delta);

/// Catalyst inner AGDA stepsizes τ₁ = 1/(3l), τ₂ = 1/(486l).
StepSizes catalyst_inner_stepsizes(double l);

/// Catalyst stop factor 1/(264κ⁴).
double catalyst_stop_factor(double kappa);

}  // namespace ncpl
