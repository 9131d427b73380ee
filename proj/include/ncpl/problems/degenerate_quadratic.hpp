#pragma once

#include <cstdint>

#include "ncpl/problem.hpp"

namespace ncpl {

/// f(x, y) = g(x) + xᵀBy − ½yᵀMy with g(x) = ¼‖x‖⁴ − (ρ/2)‖x‖² and M ⪰ 0 singular.
///
/// Concave but not strongly concave in y; PL in y with μ = smallest positive
/// eigenvalue of M. The argmax set is the affine subspace M⁺Bᵀx + null(M).
class DegenerateQuadratic final : public MinimaxProblem {
 public:
  /// Requires range(Bᵀ) ⊆ range(M) and rank(M) < dim_y.
  DegenerateQuadratic(Mat B, Mat M, double well_depth, double sigma = 0.0,
                      TestBox box = {1.0, 10.0});

  /// M = Q diag(2 … 1, 0 …) Qᵀ for a seeded orthogonal Q, B = G Uᵀ where U
  /// spans range(M). rank < dim_y.
  static DegenerateQuadratic standard(Index dim_x = 2, Index dim_y = 3, Index rank = 2,
                                      double well_depth = 1.0, std::uint64_t seed = 7,
                                      double sigma = 0.0, TestBox box = {1.0, 10.0});

  std::string name() const override { return "degenerate-quadratic"; }
  const Mat& B() const { return B_; }
  const Mat& M() const { return M_; }
  double well_depth() const { return rho_; }
  /// Dimension of the argmax set in y.
  Index nullity() const { return nullity_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;

  bool has(ClosedForm which) const override;
  Vec y_star(const Vec& x) const override;
  double phi(const Vec& x) const override;
  Vec grad_phi(const Vec& x) const override;
  double phi_star() const override;
  std::optional<Vec> project_to_argmax(const Vec& x, const Vec& y) const override;
  std::optional<double> distance_to_optimum(const Point& p) const override;
  Point initial_point() const override;

 private:
  DegenerateQuadratic(Mat B, Mat M, double well_depth, double sigma, TestBox box, int);

  Mat B_, M_;
  double rho_;
  Mat M_pinv_;
  Mat null_proj_;
  Mat K_;  ///< B M⁺ Bᵀ
  Index nullity_ = 0;
  double k_min_ = 0.0;
  Mat k_min_space_;  ///< orthonormal basis of the k_min eigenspace of K
};

}  // namespace ncpl
