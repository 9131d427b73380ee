#include "ncpl/problems/linear_wgan.hpp"

#include <cmath>
#include <vector>

#include "ncpl/errors.hpp"

namespace ncpl {

WganMoments WganMoments::of(std::span<const double> real, std::span<const double> latent) {
  if (real.empty() || latent.empty()) throw ConfigError("WGAN moments of an empty sample");
  WganMoments m{0.0, 0.0, 0.0, 0.0};
  for (double v : real) {
    m.real_m1 += v;
    m.real_m2 += v * v;
  }
  for (double z : latent) {
    m.latent_m1 += z;
    m.latent_m2 += z * z;
  }
  const double nr = static_cast<double>(real.size());
  const double nz = static_cast<double>(latent.size());
  m.real_m1 /= nr;
  m.real_m2 /= nr;
  m.latent_m1 /= nz;
  m.latent_m2 /= nz;
  return m;
}

namespace {

// Sup over the box of the total per-sample gradient variance, divided by the batch size.
double minibatch_sigma(const LinearWganParams& p) {
  const double rx = p.box.x_radius, ry = p.box.y_radius;
  const double m = std::abs(p.mu_hat), s2 = p.sigma_hat * p.sigma_hat;
  auto var_sq = [](double mean_abs, double var) { return 2.0 * var * var + 4.0 * mean_abs * mean_abs * var; };
  const double g_var = rx * rx;
  const double total = (s2 + g_var)                                  // ∂φ₁
                       + var_sq(m, s2) + var_sq(rx, g_var)           // ∂φ₂
                       + 4.0 * ry * ry * g_var                       // ∂μ
                       + (ry + 2.0 * ry * rx) * (ry + 2.0 * ry * rx)  // ∂σ, linear in z
                       + 8.0 * ry * ry * g_var;                      // ∂σ, z² part
  return std::sqrt(total / static_cast<double>(p.batch_size));
}

ProblemConstants wgan_constants(const LinearWganParams& p) {
  if (!(p.lambda > 0.0)) throw ConfigError("linear-wgan: lambda must be positive");
  if (!(p.sigma_hat >= 0.0)) throw ConfigError("linear-wgan: sigma_hat must be nonnegative");
  if (p.batch_size < 1) throw ConfigError("linear-wgan: batch_size must be positive");
  ProblemConstants k;
  const double rx = p.box.x_radius, ry = p.box.y_radius;
  // ‖∂²ₓₓf‖ = 2|φ₂|, ‖∂²ₓᵧf‖ ≤ ‖[[1, 2μ], [0, 2σ]]‖_F, ‖∂²ᵧᵧf‖ = 2λ.
  k.smoothness_l = std::max({2.0 * ry, std::sqrt(1.0 + 8.0 * rx * rx), 2.0 * p.lambda});
  k.pl_mu = 2.0 * p.lambda;
  k.noise_sigma = p.deterministic ? 0.0 : minibatch_sigma(p);
  k.box = p.box;
  return k;
}

}  // namespace

LinearWGAN::LinearWGAN(LinearWganParams params)
    : MinimaxProblem(2, 2, wgan_constants(params),
                     params.deterministic ? NoiseModel::kNone : NoiseModel::kMiniBatch),
      params_(params) {}

WganMoments LinearWGAN::population_moments() const {
  const double m = params_.mu_hat, s = params_.sigma_hat;
  return {m, m * m + s * s, 0.0, 1.0};
}

double LinearWGAN::value(const Vec& x, const Vec& y) const {
  const double mu = x[0], sg = x[1], p1 = y[0], p2 = y[1];
  const WganMoments m = population_moments();
  return p1 * (m.real_m1 - mu) + p2 * (m.real_m2 - mu * mu - sg * sg) -
         params_.lambda * (p1 * p1 + p2 * p2);
}

void LinearWGAN::gradient_at_moments(const Vec& x, const Vec& y, const WganMoments& m, Vec& gx,
                                     Vec& gy) const {
  const double mu = x[0], sg = x[1], p1 = y[0], p2 = y[1];
  // Fake-sample moments of G(z) = μ + σz.
  const double g1 = mu + sg * m.latent_m1;
  const double g2 = mu * mu + 2.0 * mu * sg * m.latent_m1 + sg * sg * m.latent_m2;
  const double gz = mu * m.latent_m1 + sg * m.latent_m2;  // mean G(z)·z
  gx.resize(2);
  gy.resize(2);
  gx[0] = -(p1 + 2.0 * p2 * g1);
  gx[1] = -(p1 * m.latent_m1 + 2.0 * p2 * gz);
  gy[0] = m.real_m1 - g1 - 2.0 * params_.lambda * p1;
  gy[1] = m.real_m2 - g2 - 2.0 * params_.lambda * p2;
}

void LinearWGAN::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  gradient_at_moments(x, y, population_moments(), gx, gy);
}

void LinearWGAN::batch_gradient(const Vec& x, const Vec& y, std::span<const double> real,
                                std::span<const double> latent, Vec& gx, Vec& gy) const {
  if (real.size() != latent.size() || real.empty()) {
    throw ConfigError("linear-wgan: batch needs equally many real and latent samples");
  }
  const double mu = x[0], sg = x[1], p1 = y[0], p2 = y[1];
  gx = Vec::Zero(2);
  gy = Vec::Zero(2);
  for (std::size_t i = 0; i < real.size(); ++i) {
    const double xr = real[i], z = latent[i];
    const double g = mu + sg * z;
    const double dD = p1 + 2.0 * p2 * g;  // D'(G(z))
    gx[0] -= dD;
    gx[1] -= dD * z;
    gy[0] += xr - g;
    gy[1] += xr * xr - g * g;
  }
  const double n = static_cast<double>(real.size());
  gx /= n;
  gy /= n;
  gy[0] -= 2.0 * params_.lambda * p1;
  gy[1] -= 2.0 * params_.lambda * p2;
}

void LinearWGAN::sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                                 Vec& gy) const {
  if (params_.deterministic) {
    gradient(x, y, gx, gy);
    return;
  }
  WganMoments m{0.0, 0.0, 0.0, 0.0};
  const int b = params_.batch_size;
  for (int i = 0; i < b; ++i) {
    const double xr = params_.mu_hat + params_.sigma_hat * rng.normal();
    const double z = rng.normal();
    m.real_m1 += xr;
    m.real_m2 += xr * xr;
    m.latent_m1 += z;
    m.latent_m2 += z * z;
  }
  m.real_m1 /= b;
  m.real_m2 /= b;
  m.latent_m1 /= b;
  m.latent_m2 /= b;
  gradient_at_moments(x, y, m, gx, gy);
}

bool LinearWGAN::has(ClosedForm which) const {
  switch (which) {
    case ClosedForm::kYStar:
    case ClosedForm::kPhi:
    case ClosedForm::kGradPhi:
    case ClosedForm::kPhiStar: return true;
    default: return false;
  }
}

Vec LinearWGAN::y_star(const Vec& x) const {
  const WganMoments m = population_moments();
  const double mu = x[0], sg = x[1];
  Vec y(2);
  y[0] = (m.real_m1 - mu) / (2.0 * params_.lambda);
  y[1] = (m.real_m2 - mu * mu - sg * sg) / (2.0 * params_.lambda);
  return y;
}

double LinearWGAN::phi(const Vec& x) const {
  const WganMoments m = population_moments();
  const double d1 = m.real_m1 - x[0];
  const double d2 = m.real_m2 - x[0] * x[0] - x[1] * x[1];
  return (d1 * d1 + d2 * d2) / (4.0 * params_.lambda);
}

std::optional<double> LinearWGAN::distance_to_optimum(const Point& p) const {
  // Generator-parameter distance, minimized over the two sign-symmetric optima.
  const double dm = p.x[0] - params_.mu_hat;
  const double ds = std::min(std::abs(p.x[1] - params_.sigma_hat), std::abs(p.x[1] + params_.sigma_hat));
  return std::hypot(dm, ds);
}

Point LinearWGAN::initial_point() const { return {Vec::Constant(2, 0.5), Vec::Zero(2)}; }

}  // namespace ncpl
