#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ncpl/errors.hpp"
#include "ncpl/problem.hpp"
#include "ncpl/stepsizes.hpp"

namespace ncpl {

enum class SolverKind { kGda, kAgda, kSmoothedAgda, kCatalystAgda, kAdam, kRmsprop, kGradientAscent };

SolverKind parse_solver(const std::string& id);
std::string to_string(SolverKind kind);

/// One stream per oracle call site of a minimax step.
struct OracleStreams {
  RandomStream x;
  RandomStream y;

  explicit OracleStreams(std::uint64_t seed = 0)
      : x(seed, StreamId::kXOracle), y(seed, StreamId::kYOracle) {}
  bool operator==(const OracleStreams&) const = default;
};

/// Exponential-moment buffers of Adam / RMSprop. For RMSprop, m holds the
/// momentum buffer and v the running mean of squares.
struct MomentBuffers {
  Vec mx, my, vx, vy;
};

struct AdaptiveParams {
  double lr = 1e-3;
  double beta1 = 0.9;     ///< Adam first-moment decay, RMSprop momentum
  double beta2 = 0.999;   ///< Adam second-moment decay
  double decay = 0.99;    ///< RMSprop square-average decay
  double eps = 1e-8;

  static AdaptiveParams adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  static AdaptiveParams rmsprop(double lr, double decay = 0.99, double momentum = 0.0, double eps = 1e-8);
};

struct SolverState {
  Point point;
  std::optional<Vec> z;                  ///< proximal center (Smoothed-AGDA)
  std::optional<MomentBuffers> moments;  ///< Adam / RMSprop
  std::int64_t iter = 0;
  std::int64_t oracle_calls = 0;  ///< gradient evaluations consumed so far
  OracleStreams rng;
};

/// Fresh state at `start`: z = x for Smoothed-AGDA, zero moments for adaptive solvers.
SolverState make_state(const MinimaxProblem& problem, const Point& start, SolverKind kind,
                       std::uint64_t seed);

/// An iterate left the finite region (non-finite or |coordinate| > 1e10).
/// Carries the last state whose iterate was still finite.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, SolverState last)
      : NumericError(what), last_(std::move(last)) {}
  const SolverState& last_state() const { return last_; }

 private:
  SolverState last_;
};

constexpr double kDivergenceThreshold = 1e10;
bool diverged(const Vec& v);

/// Scratch buffers reused across in-place steps.
struct StepWorkspace {
  Vec gx, gy, x_next, y_next;
};

// Pure steps: the input state is not modified.
SolverState stoc_agda_step(const MinimaxProblem& problem, SolverState state, const StepSizes& s);
SolverState gda_step(const MinimaxProblem& problem, SolverState state, const StepSizes& s);
SolverState smoothed_agda_step(const MinimaxProblem& problem, SolverState state, const StepSizes& s);
SolverState adam_step(const MinimaxProblem& problem, SolverState state, const AdaptiveParams& a);
SolverState rmsprop_step(const MinimaxProblem& problem, SolverState state, const AdaptiveParams& a);

// In-place variants used by long runs. On divergence the state is left at the
// last finite iterate and DivergenceError is thrown.
void stoc_agda_advance(const MinimaxProblem& problem, SolverState& state, const StepSizes& s,
                       StepWorkspace& ws);
void gda_advance(const MinimaxProblem& problem, SolverState& state, const StepSizes& s,
                 StepWorkspace& ws);
void smoothed_agda_advance(const MinimaxProblem& problem, SolverState& state, const StepSizes& s,
                           StepWorkspace& ws);
void adam_advance(const MinimaxProblem& problem, SolverState& state, const AdaptiveParams& a,
                  StepWorkspace& ws);
void rmsprop_advance(const MinimaxProblem& problem, SolverState& state, const AdaptiveParams& a,
                     StepWorkspace& ws);

/// y_{k+1} = y_k + τ·G_y(x, y_k) for `iters` steps. rng == nullptr uses exact gradients.
Vec gradient_ascent(const MinimaxProblem& problem, const Vec& x_fixed, const Vec& y0, double tau,
                    std::int64_t iters, RandomStream* rng);

}  // namespace ncpl
