#pragma once

#include <Eigen/Dense>

namespace ncpl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// A primal-dual pair (x, y).
struct Point {
  Vec x;
  Vec y;
};

/// Full gradient (∇ₓf, ∇_y f) at a point.
struct GradientPair {
  Vec gx;
  Vec gy;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace ncpl
