#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ncpl/problem.hpp"

namespace ncpl {

struct RegressionData {
  Mat inputs;   ///< n × input_dim
  Vec targets;  ///< y₀, length n

  /// Inputs ~ N(0, I), targets = inputs·w + noise·N(0, 1) with w ~ N(0, I/input_dim).
  static RegressionData synthesize(Index n, Index input_dim, double noise, std::uint64_t seed);
  /// CSV with one header row; every other row holds input_dim inputs followed by the target.
  static RegressionData load_csv(const std::string& path);
};

struct RobustRegressionParams {
  Index n = 200;
  Index input_dim = 20;
  Index hidden1 = 16;
  Index hidden2 = 8;
  double lambda = 1.0;
  double data_noise = 0.1;
  std::uint64_t seed = 1;
  int batch_size = 0;  ///< 0 selects the deterministic full-batch oracle
  std::optional<std::string> csv_path;
  TestBox box{1.0, 3.0};
};

/// f(x, y) = (1/n) Σᵢ ½(net_x(zᵢ) − yᵢ)² − (λ/2)‖y − y₀‖², net_x a
/// two-hidden-layer ReLU network with scalar output and ReLU'(0) = 0.
///
/// x packs W₁ (row-major), b₁, W₂ (row-major), b₂, W₃, b₃. The y-block is
/// (λ − 1/n)-strongly concave, which is the declared PL constant.
/// Mini-batch oracle: batch_size indices drawn with replacement, one draw each.
class RobustRegression final : public MinimaxProblem {
 public:
  explicit RobustRegression(RobustRegressionParams params = {});
  RobustRegression(RobustRegressionParams params, RegressionData data);

  std::string name() const override { return "robust-regression"; }
  const RobustRegressionParams& params() const { return params_; }
  const RegressionData& data() const { return data_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                       Vec& gy) const override;

  /// Network outputs on all data points.
  Vec predict(const Vec& x) const;

  bool has(ClosedForm which) const override;
  Vec y_star(const Vec& x) const override;
  double phi(const Vec& x) const override;
  double kink_distance(const Point& p) const override;
  Point initial_point() const override;

 private:
  struct Forward;
  Forward forward(const Vec& x, const Mat& inputs) const;
  /// Adds Σᵢ weightᵢ·(outᵢ − tᵢ)·∂outᵢ/∂x into gx.
  void backward(const Vec& x, const Mat& inputs, const Forward& fw, const Vec& dout, Vec& gx) const;

  RobustRegressionParams params_;
  RegressionData data_;
};

}  // namespace ncpl
