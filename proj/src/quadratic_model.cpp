#include "ncpl/quadratic_model.hpp"

#include <Eigen/Eigenvalues>

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

Mat symmetric_pinv(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  const Vec& ev = es.eigenvalues();
  const double cut = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Vec inv(ev.size());
  for (Index i = 0; i < ev.size(); ++i) inv[i] = std::abs(ev[i]) > cut ? 1.0 / ev[i] : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Mat shifted(const Mat& M, double w) {
  return M + 2.0 * w * Mat::Identity(M.rows(), M.cols());
}

Vec solve_spd(const Mat& M, const Vec& rhs, const char* what) {
  Eigen::LLT<Mat> llt(M);
  if (llt.info() != Eigen::Success) {
    throw ConfigError(std::string("anchored quadratic: ") + what + " is not positive definite");
  }
  return llt.solve(rhs);
}

}  // namespace

QuadraticModel::QuadraticModel(Mat A, Mat B, Mat C)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
  if (A_.rows() != A_.cols() || C_.rows() != C_.cols() || B_.rows() != A_.rows() ||
      B_.cols() != C_.rows()) {
    throw ConfigError("QuadraticModel: inconsistent block shapes");
  }
  C_pinv_ = symmetric_pinv(C_);
  null_proj_ = Mat::Identity(C_.rows(), C_.cols()) - C_pinv_ * C_;
  K_ = A_ + B_ * C_pinv_ * B_.transpose();
}

double QuadraticModel::value(const Vec& x, const Vec& y) const {
  return 0.5 * x.dot(A_ * x) + x.dot(B_ * y) - 0.5 * y.dot(C_ * y);
}

Vec QuadraticModel::y_star(const Vec& x) const { return C_pinv_ * (B_.transpose() * x); }

Vec QuadraticModel::project_to_argmax(const Vec& x, const Vec& y) const {
  return y_star(x) + null_proj_ * y;
}

double QuadraticModel::phi(const Vec& x) const { return 0.5 * x.dot(K_ * x); }

Vec QuadraticModel::grad_phi(const Vec& x) const { return K_ * x; }

double QuadraticModel::anchored_value(const Vec& x, const Vec& y, const Vec& a, double w) const {
  return value(x, y) + w * (x - a).squaredNorm();
}

double QuadraticModel::anchored_phi(const Vec& x, const Vec& a, double w) const {
  return phi(x) + w * (x - a).squaredNorm();
}

Vec QuadraticModel::anchored_x_of_y(const Vec& y, const Vec& a, double w) const {
  // ∇ₓf̂ = Hx + By − 2wa = 0
  return solve_spd(shifted(A_, w), 2.0 * w * a - B_ * y, "A + 2wI");
}

double QuadraticModel::anchored_psi(const Vec& y, const Vec& a, double w) const {
  return anchored_value(anchored_x_of_y(y, a, w), y, a, w);
}

Vec QuadraticModel::anchored_saddle_x(const Vec& a, double w) const {
  return solve_spd(shifted(K_, w), 2.0 * w * a, "K + 2wI");
}

double QuadraticModel::anchored_saddle_value(const Vec& a, double w) const {
  return anchored_phi(anchored_saddle_x(a, w), a, w);
}

double QuadraticModel::anchored_gap(const Vec& x, const Vec& y, const Vec& a, double w) const {
  return anchored_phi(x, a, w) - anchored_psi(y, a, w);
}

}  // namespace ncpl
