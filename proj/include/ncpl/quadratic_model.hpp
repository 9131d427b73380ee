#pragma once

#include "ncpl/types.hpp"

namespace ncpl {

/// f(x, y) = ½xᵀAx + xᵀBy − ½yᵀCy with C ⪰ 0 and range(Bᵀ) ⊆ range(C).
///
/// Besides f itself this exposes the anchored objective
///   f̂(x, y) = f(x, y) + w‖x − a‖²
/// used by Smoothed-AGDA (w = p/2), Catalyst and the Moreau envelope (w = l).
/// Anchored helpers require H = A + 2wI ≻ 0 and K + 2wI ≻ 0, K = A + BC⁺Bᵀ.
class QuadraticModel {
 public:
  QuadraticModel(Mat A, Mat B, Mat C);

  Index dim_x() const { return A_.rows(); }
  Index dim_y() const { return C_.rows(); }
  const Mat& A() const { return A_; }
  const Mat& B() const { return B_; }
  const Mat& C() const { return C_; }
  /// Hessian of Φ.
  const Mat& K() const { return K_; }

  double value(const Vec& x, const Vec& y) const;
  Vec y_star(const Vec& x) const;
  /// Euclidean projection of y onto the affine argmax set {y : Cy = Bᵀx}.
  Vec project_to_argmax(const Vec& x, const Vec& y) const;
  double phi(const Vec& x) const;
  Vec grad_phi(const Vec& x) const;

  double anchored_value(const Vec& x, const Vec& y, const Vec& a, double w) const;
  /// max_y f̂(x, y).
  double anchored_phi(const Vec& x, const Vec& a, double w) const;
  /// min_x f̂(x, y).
  double anchored_psi(const Vec& y, const Vec& a, double w) const;
  /// argmin_x f̂(x, y).
  Vec anchored_x_of_y(const Vec& y, const Vec& a, double w) const;
  /// x-part of the saddle of f̂; equals prox_Φ(a, 1/(2w)).
  Vec anchored_saddle_x(const Vec& a, double w) const;
  /// min_x max_y f̂ = max_y min_x f̂ = Φ_{1/(2w)}(a).
  double anchored_saddle_value(const Vec& a, double w) const;
  /// max_y f̂(x, ·) − min_x f̂(·, y) ≥ 0.
  double anchored_gap(const Vec& x, const Vec& y, const Vec& a, double w) const;

 private:
  Mat A_, B_, C_;
  Mat C_pinv_;
  Mat null_proj_;  ///< I − C⁺C
  Mat K_;
};

}  // namespace ncpl
