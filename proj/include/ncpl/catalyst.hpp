#pragma once

#include <functional>
#include <vector>

#include "ncpl/metrics.hpp"
#include "ncpl/problem.hpp"
#include "ncpl/stepsizes.hpp"

namespace ncpl {

enum class StopKind {
  kAuto,       ///< exact gap when a quadratic model exists, surrogate otherwise
  kExact,      ///< gap_k ≤ β·gap_0 with closed-form gaps
  kSurrogate   ///< surrogate_k ≤ β·lower_0, which implies gap_k ≤ β·gap_0
};

struct StoppingRule {
  double beta = 0.0;  ///< 0 selects 1/(264κ⁴)
  StopKind kind = StopKind::kAuto;
  long max_inner = 1000000;
};

struct CatalystOuterRecord {
  long outer = 0;        ///< t, starting at 0
  long inner_iters = 0;  ///< AGDA steps until the rule fired
  double gap0 = 0.0;     ///< criterion value at k = 0 (exact gap or lower bound)
  double gap_final = 0.0;
  Point point;           ///< (x^{t+1}, y^{t+1})
};

struct CatalystTrace {
  std::vector<CatalystOuterRecord> outer;
  Point final_point;
  long total_inner = 0;
};

/// Called after every outer iteration; returning false stops the run early.
using CatalystCallback = std::function<bool(const CatalystOuterRecord&)>;

/// Catalyst-AGDA with deterministic gradients. Outer iteration t approximately
/// solves min_x max_y f + l‖x − x₀ᵗ‖² by AGDA updating y first:
///   y⁺ = y + τ₂∇_y f(x, y),  x⁺ = x − τ₁[∇ₓf(x, y⁺) + 2l(x − x₀ᵗ)],
/// stopping as soon as the rule holds (checked before the first step), then
/// re-anchors at the inner output. Each inner step counts two oracle calls.
CatalystTrace catalyst_agda_run(const MinimaxProblem& problem, const Point& start, long outer_T,
                                const StoppingRule& stop, const StepSizes& inner,
                                const CatalystCallback& on_outer = {});

}  // namespace ncpl
