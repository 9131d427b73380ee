#pragma once

#include <cstdint>
#include <vector>

#include "ncpl/problem.hpp"

namespace ncpl {

struct NeuralWganParams {
  double mu_hat = 0.0;
  double sigma_hat = 0.1;
  double lambda = 0.001;
  int hidden = 5;
  int pool_size = 1000;
  int batch_size = 100;
  bool deterministic = false;
  std::uint64_t seed = 1;
  TestBox box{2.0, 2.0};
};

/// The quadratic critic of LinearWGAN against a one-hidden-layer ReLU
/// generator G(z) = Σⱼ vⱼ relu(wⱼz + cⱼ) + d. x packs (w, c, v, d).
///
/// The latent distribution is a fixed seeded pool of standard normals so Φ is
/// exact: Φ = ((m₁ − E G)² + (m₂ − E G²)²)/(4λ) with E over the pool and
/// (m₁, m₂) the exact real moments. The stochastic oracle draws, per sample,
/// one fresh real point then one pool index: 2·batch_size draws per call.
/// ReLU'(0) = 0.
class NeuralWGAN final : public MinimaxProblem {
 public:
  explicit NeuralWGAN(NeuralWganParams params = {});

  std::string name() const override { return "neural-wgan"; }
  const NeuralWganParams& params() const { return params_; }
  const std::vector<double>& latent_pool() const { return pool_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                       Vec& gy) const override;

  bool has(ClosedForm which) const override;
  Vec y_star(const Vec& x) const override;
  double phi(const Vec& x) const override;
  double phi_star() const override { return 0.0; }
  double kink_distance(const Point& p) const override;
  Point initial_point() const override;

  /// Generator output at latent z.
  double generate(const Vec& x, double z) const;

 private:
  /// Accumulates (1/n)Σ G, (1/n)Σ G², and if gx is non-null the generator
  /// gradient −(1/n)Σ (φ₁ + 2φ₂G)∂G/∂x over the given latents.
  void accumulate(const Vec& x, const Vec& y, const double* latents, const std::uint64_t* idx,
                  std::size_t n, double& m1, double& m2, Vec* gx) const;

  NeuralWganParams params_;
  std::vector<double> pool_;
};

}  // namespace ncpl
