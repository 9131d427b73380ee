#include "ncpl/problems/degenerate_quadratic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/rng.hpp"

namespace ncpl {

namespace {

constexpr double kRankTol = 1e-10;

struct Spectrum {
  double mu = 0.0;
  Index nullity = 0;
  Mat pinv;
};

Spectrum analyse(const Mat& M) {
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  const Vec& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Spectrum s;
  Vec inv = Vec::Zero(ev.size());
  s.mu = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kRankTol * scale) throw ConfigError("degenerate-quadratic: M must be PSD");
    if (ev[i] > kRankTol * scale) {
      inv[i] = 1.0 / ev[i];
      s.mu = std::min(s.mu, ev[i]);
    } else {
      ++s.nullity;
    }
  }
  if (s.nullity == 0) throw ConfigError("degenerate-quadratic: M must be singular");
  if (s.nullity == ev.size()) throw ConfigError("degenerate-quadratic: M must be nonzero");
  s.pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  return s;
}

ProblemConstants degenerate_constants(const Mat& B, const Mat& M, double rho, double sigma,
                                      TestBox box) {
  if (B.cols() != M.rows() || M.rows() != M.cols()) {
    throw ConfigError("degenerate-quadratic: inconsistent shapes of B and M");
  }
  if (!(rho > 0.0)) throw ConfigError("degenerate-quadratic: well_depth must be positive");
  if (!(sigma >= 0.0)) throw ConfigError("degenerate-quadratic: sigma must be nonnegative");
  // ‖∇²g(x)‖ = max(|3r² − ρ|, |r² − ρ|) ≤ max(3R² − ρ, ρ) for r ≤ R on the box.
  const double R2 = static_cast<double>(B.rows()) * box.x_radius * box.x_radius;
  const double g_curv = std::max(3.0 * R2 - rho, rho);
  const double normB = Eigen::JacobiSVD<Mat>(B).singularValues()(0);
  const double normM = Eigen::SelfAdjointEigenSolver<Mat>(M).eigenvalues().cwiseAbs().maxCoeff();
  ProblemConstants k;
  k.smoothness_l = std::max({g_curv, normB, normM});
  k.pl_mu = analyse(M).mu;
  k.noise_sigma = sigma;
  k.box = box;
  return k;
}

}  // namespace

DegenerateQuadratic::DegenerateQuadratic(Mat B, Mat M, double well_depth, double sigma, TestBox box)
    : DegenerateQuadratic(std::move(B), std::move(M), well_depth, sigma, box, 0) {}

DegenerateQuadratic::DegenerateQuadratic(Mat B, Mat M, double rho, double sigma, TestBox box, int)
    : MinimaxProblem(B.rows(), B.cols(), degenerate_constants(B, M, rho, sigma, box),
                     sigma > 0.0 ? NoiseModel::kGaussian : NoiseModel::kNone),
      B_(std::move(B)), M_(std::move(M)), rho_(rho) {
  const Spectrum s = analyse(M_);
  M_pinv_ = s.pinv;
  nullity_ = s.nullity;
  null_proj_ = Mat::Identity(M_.rows(), M_.cols()) - M_pinv_ * M_;
  const double leak = (null_proj_ * B_.transpose()).norm();
  if (leak > 1e-8 * std::max(1.0, B_.norm())) {
    throw ConfigError("degenerate-quadratic: columns of B^T must lie in range(M)");
  }
  K_ = B_ * M_pinv_ * B_.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(K_);
  k_min_ = es.eigenvalues()(0);
  Index mult = 1;
  while (mult < K_.rows() && es.eigenvalues()(mult) - k_min_ < 1e-10) ++mult;
  k_min_space_ = es.eigenvectors().leftCols(mult);
}

DegenerateQuadratic DegenerateQuadratic::standard(Index dim_x, Index dim_y, Index rank,
                                                  double well_depth, std::uint64_t seed,
                                                  double sigma, TestBox box) {
  if (dim_x < 1 || dim_y < 2 || rank < 1 || rank >= dim_y) {
    throw ConfigError("degenerate-quadratic: need dim_x >= 1 and 1 <= rank < dim_y");
  }
  RandomStream rng(seed, StreamId::kData);
  Mat G(dim_y, dim_y);
  for (Index j = 0; j < dim_y; ++j)
    for (Index i = 0; i < dim_y; ++i) G(i, j) = rng.normal();
  const Mat Q = Eigen::HouseholderQR<Mat>(G).householderQ();
  Vec spectrum = Vec::Zero(dim_y);
  for (Index i = 0; i < rank; ++i) {
    spectrum[i] = rank == 1 ? 1.0 : 2.0 - static_cast<double>(i) / static_cast<double>(rank - 1);
  }
  const Mat M = Q * spectrum.asDiagonal() * Q.transpose();
  Mat C(dim_x, rank);
  for (Index j = 0; j < rank; ++j)
    for (Index i = 0; i < dim_x; ++i) C(i, j) = rng.normal() / std::sqrt(static_cast<double>(rank));
  const Mat B = C * Q.leftCols(rank).transpose();
  return DegenerateQuadratic(B, M, well_depth, sigma, box);
}

double DegenerateQuadratic::value(const Vec& x, const Vec& y) const {
  const double r2 = x.squaredNorm();
  return 0.25 * r2 * r2 - 0.5 * rho_ * r2 + x.dot(B_ * y) - 0.5 * y.dot(M_ * y);
}

void DegenerateQuadratic::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  gx.noalias() = B_ * y;
  gx += (x.squaredNorm() - rho_) * x;
  gy.noalias() = B_.transpose() * x;
  gy.noalias() -= M_ * y;
}

bool DegenerateQuadratic::has(ClosedForm which) const {
  switch (which) {
    case ClosedForm::kYStar:
    case ClosedForm::kPhi:
    case ClosedForm::kGradPhi:
    case ClosedForm::kPhiStar: return true;
    default: return false;
  }
}

Vec DegenerateQuadratic::y_star(const Vec& x) const { return M_pinv_ * (B_.transpose() * x); }

double DegenerateQuadratic::phi(const Vec& x) const {
  const double r2 = x.squaredNorm();
  return 0.25 * r2 * r2 - 0.5 * rho_ * r2 + 0.5 * x.dot(K_ * x);
}

Vec DegenerateQuadratic::grad_phi(const Vec& x) const {
  return (x.squaredNorm() - rho_) * x + K_ * x;
}

double DegenerateQuadratic::phi_star() const {
  // Along a unit direction u, Φ(ru) = ¼r⁴ − ½(ρ − uᵀKu)r²; best u is the k_min eigenvector.
  const double d = rho_ - k_min_;
  return d > 0.0 ? -0.25 * d * d : 0.0;
}

std::optional<Vec> DegenerateQuadratic::project_to_argmax(const Vec& x, const Vec& y) const {
  return Vec(y_star(x) + null_proj_ * y);
}

std::optional<double> DegenerateQuadratic::distance_to_optimum(const Point& p) const {
  const double d = rho_ - k_min_;
  Vec xs = Vec::Zero(dim_x());
  if (d > 0.0) {
    // Minimizers form the sphere of radius √d in the k_min eigenspace.
    Vec proj = k_min_space_ * (k_min_space_.transpose() * p.x);
    if (proj.norm() == 0.0) proj = k_min_space_.col(0);
    xs = std::sqrt(d) * proj.normalized();
  }
  const Vec ys = y_star(xs) + null_proj_ * p.y;
  return std::sqrt((p.x - xs).squaredNorm() + (p.y - ys).squaredNorm());
}

Point DegenerateQuadratic::initial_point() const {
  return {Vec::Constant(dim_x(), 0.5), Vec::Zero(dim_y())};
}

}  // namespace ncpl
