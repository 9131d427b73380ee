#pragma once

#include <span>

#include "ncpl/problem.hpp"

namespace ncpl {

/// Moments of a sample of real points x_r and latent draws z.
struct WganMoments {
  double real_m1 = 0.0;    ///< mean x_r
  double real_m2 = 0.0;    ///< mean x_r²
  double latent_m1 = 0.0;  ///< mean z
  double latent_m2 = 1.0;  ///< mean z²

  static WganMoments of(std::span<const double> real, std::span<const double> latent);
};

struct LinearWganParams {
  double mu_hat = 0.0;
  double sigma_hat = 0.1;
  double lambda = 0.001;
  int batch_size = 100;
  bool deterministic = false;
  TestBox box{2.0, 2.0};
};

/// Generator G(z) = μ + σz, critic D(v) = φ₁v + φ₂v², real data N(μ̂, σ̂²),
/// x = (μ, σ), y = (φ₁, φ₂):
///   f = E D(x_r) − E D(G(z)) − λ‖φ‖².
/// The expectation is closed form; the stochastic oracle draws a fresh batch of
/// `batch_size` (x_r, z) pairs per call, consuming 2·batch_size normals
/// (x_r then z, alternating).
class LinearWGAN final : public MinimaxProblem {
 public:
  explicit LinearWGAN(LinearWganParams params = {});

  std::string name() const override { return "linear-wgan"; }
  const LinearWganParams& params() const { return params_; }
  WganMoments population_moments() const;

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                       Vec& gy) const override;

  /// Gradient of the objective with expectations replaced by the given moments.
  void gradient_at_moments(const Vec& x, const Vec& y, const WganMoments& m, Vec& gx,
                           Vec& gy) const;
  /// Gradient of the empirical objective over paired samples (batch mean).
  void batch_gradient(const Vec& x, const Vec& y, std::span<const double> real,
                      std::span<const double> latent, Vec& gx, Vec& gy) const;

  bool has(ClosedForm which) const override;
  Vec y_star(const Vec& x) const override;
  double phi(const Vec& x) const override;
  double phi_star() const override { return 0.0; }
  std::optional<double> distance_to_optimum(const Point& p) const override;
  Point initial_point() const override;

 private:
  LinearWganParams params_;
};

}  // namespace ncpl
