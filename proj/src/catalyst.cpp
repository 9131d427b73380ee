#include "ncpl/catalyst.hpp"

#include <cmath>

#include "ncpl/errors.hpp"
#include "ncpl/quadratic_model.hpp"
#include "ncpl/solvers.hpp"

namespace ncpl {

CatalystTrace catalyst_agda_run(const MinimaxProblem& problem, const Point& start, long outer_T,
                                const StoppingRule& stop, const StepSizes& inner,
                                const CatalystCallback& on_outer) {
  check_dimensions(problem, start);
  if (outer_T < 0) throw ConfigError("catalyst-agda: outer horizon must be nonnegative");
  if (!(inner.tau1 > 0.0) || !(inner.tau2 > 0.0)) {
    throw ConfigError("catalyst-agda: inner stepsizes must be positive");
  }
  const double beta = stop.beta > 0.0 ? stop.beta : catalyst_stop_factor(problem.kappa());
  if (!(beta <= 1.0)) throw ConfigError("catalyst-agda: stop factor must lie in (0, 1]");
  const double l = problem.l();
  const QuadraticModel* model = problem.quadratic_model();
  bool exact = false;
  switch (stop.kind) {
    case StopKind::kAuto: exact = model != nullptr; break;
    case StopKind::kExact:
      if (!model) throw UnsupportedCapability(problem.name() + ": exact Catalyst stopping needs closed-form gaps");
      exact = true;
      break;
    case StopKind::kSurrogate: exact = false; break;
  }

  CatalystTrace trace;
  Point pt = start;
  Vec gx(problem.dim_x()), gy(problem.dim_y());
  for (long t = 0; t < outer_T; ++t) {
    const Vec anchor = pt.x;
    double reference = 0.0;
    long k = 0;
    double current = 0.0;
    for (;; ++k) {
      if (exact) {
        current = std::max(0.0, model->anchored_gap(pt.x, pt.y, anchor, l));
        if (k == 0) reference = current;
      } else {
        const GapBound g = gap_bound(problem, anchor, pt, l);
        current = g.surrogate;
        if (k == 0) reference = g.lower;
      }
      if (!std::isfinite(current)) {
        throw NumericError("catalyst-agda: non-finite gap at outer iteration " + std::to_string(t));
      }
      if (current <= beta * reference) break;
      if (k >= stop.max_inner) {
        throw NonConvergenceError("catalyst-agda: inner loop exceeded " + std::to_string(stop.max_inner) +
                                      " iterations at outer iteration " + std::to_string(t),
                                  k, current);
      }
      problem.gradient(pt.x, pt.y, gx, gy);
      pt.y += inner.tau2 * gy;
      problem.gradient(pt.x, pt.y, gx, gy);
      gx += 2.0 * l * (pt.x - anchor);
      pt.x -= inner.tau1 * gx;
      if (diverged(pt.x) || diverged(pt.y)) {
        throw NumericError("catalyst-agda: inner iterate diverged at outer iteration " + std::to_string(t));
      }
    }
    trace.total_inner += k;
    CatalystOuterRecord rec{t, k, reference, current, pt};
    trace.outer.push_back(rec);
    if (on_outer && !on_outer(trace.outer.back())) break;
  }
  trace.final_point = pt;
  return trace;
}

}  // namespace ncpl
