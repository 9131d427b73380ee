#include "ncpl/problems/neural_wgan.hpp"

#include <cmath>
#include <limits>

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

ProblemConstants neural_constants(const NeuralWganParams& p) {
  if (!(p.lambda > 0.0)) throw ConfigError("neural-wgan: lambda must be positive");
  if (p.hidden < 1 || p.pool_size < 1 || p.batch_size < 1) {
    throw ConfigError("neural-wgan: hidden, pool_size and batch_size must be positive");
  }
  ProblemConstants k;
  const double rx = p.box.x_radius, ry = p.box.y_radius;
  // Heuristic: the linear-generator bound with the box radii. ReLU is not smooth.
  k.smoothness_l = std::max({2.0 * ry, std::sqrt(1.0 + 8.0 * rx * rx), 2.0 * p.lambda});
  k.pl_mu = 2.0 * p.lambda;
  k.noise_sigma = p.deterministic ? 0.0 : 1.0;
  k.box = p.box;
  k.smoothness_certified = false;
  return k;
}

}  // namespace

NeuralWGAN::NeuralWGAN(NeuralWganParams params)
    : MinimaxProblem(3 * params.hidden + 1, 2, neural_constants(params),
                     params.deterministic ? NoiseModel::kNone : NoiseModel::kMiniBatch),
      params_(params) {
  RandomStream rng(params_.seed, StreamId::kData);
  pool_.resize(static_cast<std::size_t>(params_.pool_size));
  for (double& z : pool_) z = rng.normal();
}

double NeuralWGAN::generate(const Vec& x, double z) const {
  const int h = params_.hidden;
  double g = x[3 * h];
  for (int j = 0; j < h; ++j) {
    const double a = x[j] * z + x[h + j];
    if (a > 0.0) g += x[2 * h + j] * a;
  }
  return g;
}

void NeuralWGAN::accumulate(const Vec& x, const Vec& y, const double* latents,
                            const std::uint64_t* idx, std::size_t n, double& m1, double& m2,
                            Vec* gx) const {
  const int h = params_.hidden;
  m1 = 0.0;
  m2 = 0.0;
  if (gx) *gx = Vec::Zero(dim_x());
  for (std::size_t i = 0; i < n; ++i) {
    const double z = idx ? pool_[idx[i]] : latents[i];
    const double g = generate(x, z);
    m1 += g;
    m2 += g * g;
    if (!gx) continue;
    const double dD = y[0] + 2.0 * y[1] * g;
    Vec& out = *gx;
    for (int j = 0; j < h; ++j) {
      const double a = x[j] * z + x[h + j];
      if (a <= 0.0) continue;
      const double vj = x[2 * h + j];
      out[j] -= dD * vj * z;
      out[h + j] -= dD * vj;
      out[2 * h + j] -= dD * a;
    }
    out[3 * h] -= dD;
  }
  const double inv = 1.0 / static_cast<double>(n);
  m1 *= inv;
  m2 *= inv;
  if (gx) *gx *= inv;
}

double NeuralWGAN::value(const Vec& x, const Vec& y) const {
  double m1, m2;
  accumulate(x, y, pool_.data(), nullptr, pool_.size(), m1, m2, nullptr);
  const double r1 = params_.mu_hat;
  const double r2 = r1 * r1 + params_.sigma_hat * params_.sigma_hat;
  return y[0] * (r1 - m1) + y[1] * (r2 - m2) - params_.lambda * y.squaredNorm();
}

void NeuralWGAN::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  double m1, m2;
  accumulate(x, y, pool_.data(), nullptr, pool_.size(), m1, m2, &gx);
  const double r1 = params_.mu_hat;
  const double r2 = r1 * r1 + params_.sigma_hat * params_.sigma_hat;
  gy.resize(2);
  gy[0] = r1 - m1 - 2.0 * params_.lambda * y[0];
  gy[1] = r2 - m2 - 2.0 * params_.lambda * y[1];
}

void NeuralWGAN::sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                                 Vec& gy) const {
  if (params_.deterministic) {
    gradient(x, y, gx, gy);
    return;
  }
  const auto b = static_cast<std::size_t>(params_.batch_size);
  thread_local std::vector<std::uint64_t> idx;
  idx.resize(b);
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    const double xr = params_.mu_hat + params_.sigma_hat * rng.normal();
    r1 += xr;
    r2 += xr * xr;
    idx[i] = rng.index(pool_.size());
  }
  r1 /= static_cast<double>(b);
  r2 /= static_cast<double>(b);
  double m1, m2;
  accumulate(x, y, nullptr, idx.data(), b, m1, m2, &gx);
  gy.resize(2);
  gy[0] = r1 - m1 - 2.0 * params_.lambda * y[0];
  gy[1] = r2 - m2 - 2.0 * params_.lambda * y[1];
}

bool NeuralWGAN::has(ClosedForm which) const {
  switch (which) {
    case ClosedForm::kYStar:
    case ClosedForm::kPhi:
    case ClosedForm::kGradPhi: return true;
    default: return false;
  }
}

Vec NeuralWGAN::y_star(const Vec& x) const {
  double m1, m2;
  accumulate(x, Vec::Zero(2), pool_.data(), nullptr, pool_.size(), m1, m2, nullptr);
  const double r1 = params_.mu_hat;
  const double r2 = r1 * r1 + params_.sigma_hat * params_.sigma_hat;
  Vec y(2);
  y[0] = (r1 - m1) / (2.0 * params_.lambda);
  y[1] = (r2 - m2) / (2.0 * params_.lambda);
  return y;
}

double NeuralWGAN::phi(const Vec& x) const {
  const Vec ys = y_star(x);
  return params_.lambda * ys.squaredNorm();
}

double NeuralWGAN::kink_distance(const Point& p) const {
  const int h = params_.hidden;
  double best = std::numeric_limits<double>::infinity();
  for (double z : pool_) {
    for (int j = 0; j < h; ++j) best = std::min(best, std::abs(p.x[j] * z + p.x[h + j]));
  }
  return best;
}

Point NeuralWGAN::initial_point() const {
  const int h = params_.hidden;
  RandomStream rng(params_.seed, StreamId::kInit);
  Vec x(dim_x());
  for (int j = 0; j < h; ++j) x[j] = rng.normal();
  for (int j = 0; j < h; ++j) x[h + j] = 0.1 * rng.normal();
  for (int j = 0; j < h; ++j) x[2 * h + j] = rng.normal() / std::sqrt(static_cast<double>(h));
  x[3 * h] = 0.5;
  return {x, Vec::Zero(2)};
}

}  // namespace ncpl
