#pragma once

#include <limits>
#include <optional>
#include <string>

#include "ncpl/rng.hpp"
#include "ncpl/types.hpp"

namespace ncpl {

class QuadraticModel;

/// Analytic helpers a problem may provide.
enum class ClosedForm { kYStar, kPhi, kGradPhi, kPsi, kPhiStar, kProxPhi };

std::string to_string(ClosedForm which);

enum class NoiseModel {
  kNone,      ///< sample_gradient returns the exact gradient
  kGaussian,  ///< additive isotropic Gaussian, total variance sigma^2 per block
  kMiniBatch  ///< with-replacement mini-batches over the problem's data
};

/// Box on which the declared constants are certified: |x_i| <= x_radius, |y_j| <= y_radius.
struct TestBox {
  double x_radius = 10.0;
  double y_radius = 10.0;
};

struct ProblemConstants {
  double smoothness_l = 1.0;  ///< Lipschitz constant of both partial gradients
  double pl_mu = 1.0;         ///< PL constant in y
  double noise_sigma = 0.0;   ///< per-block standard deviation of the oracle noise
  TestBox box;
  /// False when l is a heuristic (ReLU networks are not smooth).
  bool smoothness_certified = true;

  double kappa() const { return smoothness_l / pl_mu; }
};

/// min_x max_y f(x, y) with analytic gradients and a stochastic oracle.
///
/// Problems are immutable after construction; every method is const and
/// randomness only enters through caller-owned RandomStreams.
class MinimaxProblem {
 public:
  virtual ~MinimaxProblem() = default;

  virtual std::string name() const = 0;

  Index dim_x() const { return dim_x_; }
  Index dim_y() const { return dim_y_; }
  const ProblemConstants& constants() const { return constants_; }
  double l() const { return constants_.smoothness_l; }
  double mu() const { return constants_.pl_mu; }
  double kappa() const { return constants_.kappa(); }
  double sigma() const { return constants_.noise_sigma; }
  NoiseModel noise_model() const { return noise_model_; }

  virtual double value(const Vec& x, const Vec& y) const = 0;

  /// Exact gradient written into preallocated (or resizable) buffers.
  virtual void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const = 0;

  /// Unbiased stochastic gradient. The default implementation adds
  /// N(0, sigma^2 / d) noise to every coordinate of each block and consumes
  /// exactly dim_x + dim_y normal draws (none when sigma == 0).
  virtual void sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                               Vec& gy) const;

  virtual bool has(ClosedForm) const { return false; }
  virtual Vec y_star(const Vec& x) const;
  virtual double phi(const Vec& x) const;
  /// Defaults to ∇ₓf(x, y*(x)) when y_star is available.
  virtual Vec grad_phi(const Vec& x) const;
  virtual double psi(const Vec& y) const;
  virtual double phi_star() const;
  virtual Vec prox_phi(const Vec& x, double lambda) const;

  /// Projection of y onto argmax_y f(x, ·); defaults to y_star(x) when the maximizer is unique.
  virtual std::optional<Vec> project_to_argmax(const Vec& x, const Vec& y) const;

  /// Quadratic structure for anchored closed forms, or nullptr.
  virtual const QuadraticModel* quadratic_model() const { return nullptr; }

  /// Distance from the point to the closest known optimum, if any are known.
  virtual std::optional<double> distance_to_optimum(const Point& p) const;

  /// Distance from the point to the nearest non-differentiable set
  /// (infinity for smooth problems).
  virtual double kink_distance(const Point&) const { return std::numeric_limits<double>::infinity(); }

  virtual Point initial_point() const;

  /// Uniform draw from the test box; one uniform per coordinate, x first.
  Point sample_in_box(RandomStream& rng) const;

 protected:
  MinimaxProblem(Index dim_x, Index dim_y, ProblemConstants constants, NoiseModel noise)
      : dim_x_(dim_x), dim_y_(dim_y), constants_(constants), noise_model_(noise) {}

  [[noreturn]] void unsupported(ClosedForm which) const;

 private:
  Index dim_x_;
  Index dim_y_;
  ProblemConstants constants_;
  NoiseModel noise_model_;
};

/// Exact gradient with dimension and finiteness checks.
GradientPair grad(const MinimaxProblem& problem, const Point& p);

/// Stochastic gradient with dimension and finiteness checks.
GradientPair sample_grad(const MinimaxProblem& problem, const Point& p, RandomStream& rng);

/// Central differences of f, one coordinate at a time. The step for
/// coordinate i is h * max(1, |v_i|).
GradientPair finite_diff_grad(const MinimaxProblem& problem, const Point& p, double h = 1e-6);

/// Generic access to closed-form helpers. Scalar results come back as a
/// length-1 vector. `lambda` is only read by kProxPhi.
Vec closed_form_query(const MinimaxProblem& problem, ClosedForm which, const Vec& arg,
                      double lambda = 0.0);

void check_dimensions(const MinimaxProblem& problem, const Point& p);

}  // namespace ncpl
