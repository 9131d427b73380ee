#include "ncpl/solvers.hpp"

#include <cmath>

namespace ncpl {

SolverKind parse_solver(const std::string& id) {
  if (id == "gda") return SolverKind::kGda;
  if (id == "agda") return SolverKind::kAgda;
  if (id == "smoothed-agda") return SolverKind::kSmoothedAgda;
  if (id == "catalyst-agda") return SolverKind::kCatalystAgda;
  if (id == "adam") return SolverKind::kAdam;
  if (id == "rmsprop") return SolverKind::kRmsprop;
  if (id == "gradient-ascent") return SolverKind::kGradientAscent;
  throw ConfigError("unknown solver id '" + id +
                    "' (known: gda, agda, smoothed-agda, catalyst-agda, adam, rmsprop, gradient-ascent)");
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kGda: return "gda";
    case SolverKind::kAgda: return "agda";
    case SolverKind::kSmoothedAgda: return "smoothed-agda";
    case SolverKind::kCatalystAgda: return "catalyst-agda";
    case SolverKind::kAdam: return "adam";
    case SolverKind::kRmsprop: return "rmsprop";
    case SolverKind::kGradientAscent: return "gradient-ascent";
  }
  return "?";
}

AdaptiveParams AdaptiveParams::adam(double lr, double beta1, double beta2, double eps) {
  AdaptiveParams a;
  a.lr = lr;
  a.beta1 = beta1;
  a.beta2 = beta2;
  a.eps = eps;
  return a;
}

AdaptiveParams AdaptiveParams::rmsprop(double lr, double decay, double momentum, double eps) {
  AdaptiveParams a;
  a.lr = lr;
  a.decay = decay;
  a.beta1 = momentum;
  a.eps = eps;
  return a;
}

SolverState make_state(const MinimaxProblem& problem, const Point& start, SolverKind kind,
                       std::uint64_t seed) {
  check_dimensions(problem, start);
  SolverState s;
  s.point = start;
  s.rng = OracleStreams(seed);
  if (kind == SolverKind::kSmoothedAgda) s.z = start.x;
  if (kind == SolverKind::kAdam || kind == SolverKind::kRmsprop) {
    s.moments = MomentBuffers{Vec::Zero(problem.dim_x()), Vec::Zero(problem.dim_y()),
                              Vec::Zero(problem.dim_x()), Vec::Zero(problem.dim_y())};
  }
  return s;
}

bool diverged(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!(std::abs(v[i]) <= kDivergenceThreshold)) return true;
  }
  return false;
}

namespace {

void oracle(const MinimaxProblem& problem, const Vec& x, const Vec& y, RandomStream& rng,
            StepWorkspace& ws) {
  problem.sample_gradient(x, y, rng, ws.gx, ws.gy);
}

/// Commits (x_next, y_next) or throws with the untouched state.
void commit(SolverState& state, StepWorkspace& ws, const char* solver) {
  if (diverged(ws.x_next) || diverged(ws.y_next)) {
    throw DivergenceError(std::string(solver) + " diverged at iteration " +
                              std::to_string(state.iter + 1),
                          state);
  }
  state.point.x.swap(ws.x_next);
  state.point.y.swap(ws.y_next);
  ++state.iter;
}

void require_z(const SolverState& state, const MinimaxProblem& problem) {
  if (!state.z) throw ConfigError("smoothed-agda: state has no proximal center z");
  if (state.z->size() != problem.dim_x()) throw ConfigError("smoothed-agda: z has the wrong length");
}

void require_moments(const SolverState& state, const MinimaxProblem& problem, const char* who) {
  if (!state.moments || state.moments->mx.size() != problem.dim_x() ||
      state.moments->my.size() != problem.dim_y()) {
    throw ConfigError(std::string(who) + ": state has no moment buffers of the right size");
  }
}

}  // namespace

void stoc_agda_advance(const MinimaxProblem& problem, SolverState& state, const StepSizes& s,
                       StepWorkspace& ws) {
  const Vec& x = state.point.x;
  const Vec& y = state.point.y;
  oracle(problem, x, y, state.rng.x, ws);
  ws.x_next = x - s.tau1 * ws.gx;
  oracle(problem, ws.x_next, y, state.rng.y, ws);
  ws.y_next = y + s.tau2 * ws.gy;
  state.oracle_calls += 2;
  commit(state, ws, "agda");
}

void gda_advance(const MinimaxProblem& problem, SolverState& state, const StepSizes& s,
                 StepWorkspace& ws) {
  const Vec& x = state.point.x;
  const Vec& y = state.point.y;
  oracle(problem, x, y, state.rng.x, ws);
  ws.x_next = x - s.tau1 * ws.gx;
  oracle(problem, x, y, state.rng.y, ws);
  ws.y_next = y + s.tau2 * ws.gy;
  state.oracle_calls += 2;
  commit(state, ws, "gda");
}

void smoothed_agda_advance(const MinimaxProblem& problem, SolverState& state, const StepSizes& s,
                           StepWorkspace& ws) {
  require_z(state, problem);
  const Vec& x = state.point.x;
  const Vec& y = state.point.y;
  Vec& z = *state.z;
  oracle(problem, x, y, state.rng.x, ws);
  ws.x_next = x - s.tau1 * (ws.gx + s.p * (x - z));
  oracle(problem, ws.x_next, y, state.rng.y, ws);
  ws.y_next = y + s.tau2 * ws.gy;
  state.oracle_calls += 2;
  commit(state, ws, "smoothed-agda");
  z += s.beta * (state.point.x - z);
}

void adam_advance(const MinimaxProblem& problem, SolverState& state, const AdaptiveParams& a,
                  StepWorkspace& ws) {
  require_moments(state, problem, "adam");
  MomentBuffers& m = *state.moments;
  const Vec& x = state.point.x;
  const Vec& y = state.point.y;
  const double t = static_cast<double>(state.iter + 1);
  const double c1 = 1.0 - std::pow(a.beta1, t);
  const double c2 = 1.0 - std::pow(a.beta2, t);
  // Both blocks from the old point; buffers are updated only after the divergence check.
  oracle(problem, x, y, state.rng.x, ws);
  const Vec mx = a.beta1 * m.mx + (1.0 - a.beta1) * ws.gx;
  const Vec vx = a.beta2 * m.vx + (1.0 - a.beta2) * ws.gx.cwiseAbs2();
  oracle(problem, x, y, state.rng.y, ws);
  const Vec my = a.beta1 * m.my + (1.0 - a.beta1) * ws.gy;
  const Vec vy = a.beta2 * m.vy + (1.0 - a.beta2) * ws.gy.cwiseAbs2();
  ws.x_next = x.array() - a.lr * (mx.array() / c1) / ((vx.array() / c2).sqrt() + a.eps);
  ws.y_next = y.array() + a.lr * (my.array() / c1) / ((vy.array() / c2).sqrt() + a.eps);
  state.oracle_calls += 2;
  commit(state, ws, "adam");
  m.mx = mx;
  m.vx = vx;
  m.my = my;
  m.vy = vy;
}

void rmsprop_advance(const MinimaxProblem& problem, SolverState& state, const AdaptiveParams& a,
                     StepWorkspace& ws) {
  require_moments(state, problem, "rmsprop");
  MomentBuffers& m = *state.moments;
  const Vec& x = state.point.x;
  const Vec& y = state.point.y;
  oracle(problem, x, y, state.rng.x, ws);
  const Vec vx = a.decay * m.vx + (1.0 - a.decay) * ws.gx.cwiseAbs2();
  const Vec dx = (ws.gx.array() / (vx.array().sqrt() + a.eps)).matrix();
  oracle(problem, x, y, state.rng.y, ws);
  const Vec vy = a.decay * m.vy + (1.0 - a.decay) * ws.gy.cwiseAbs2();
  const Vec dy = (ws.gy.array() / (vy.array().sqrt() + a.eps)).matrix();
  Vec bx = dx, by = dy;
  if (a.beta1 > 0.0) {
    bx = a.beta1 * m.mx + dx;
    by = a.beta1 * m.my + dy;
  }
  ws.x_next = x - a.lr * bx;
  ws.y_next = y + a.lr * by;
  state.oracle_calls += 2;
  commit(state, ws, "rmsprop");
  m.vx = vx;
  m.vy = vy;
  m.mx = bx;
  m.my = by;
}

SolverState stoc_agda_step(const MinimaxProblem& problem, SolverState state, const StepSizes& s) {
  StepWorkspace ws;
  stoc_agda_advance(problem, state, s, ws);
  return state;
}

SolverState gda_step(const MinimaxProblem& problem, SolverState state, const StepSizes& s) {
  StepWorkspace ws;
  gda_advance(problem, state, s, ws);
  return state;
}

SolverState smoothed_agda_step(const MinimaxProblem& problem, SolverState state, const StepSizes& s) {
  StepWorkspace ws;
  smoothed_agda_advance(problem, state, s, ws);
  return state;
}

SolverState adam_step(const MinimaxProblem& problem, SolverState state, const AdaptiveParams& a) {
  StepWorkspace ws;
  adam_advance(problem, state, a, ws);
  return state;
}

SolverState rmsprop_step(const MinimaxProblem& problem, SolverState state, const AdaptiveParams& a) {
  StepWorkspace ws;
  rmsprop_advance(problem, state, a, ws);
  return state;
}

Vec gradient_ascent(const MinimaxProblem& problem, const Vec& x_fixed, const Vec& y0, double tau,
                    std::int64_t iters, RandomStream* rng) {
  if (x_fixed.size() != problem.dim_x() || y0.size() != problem.dim_y()) {
    throw ConfigError("gradient_ascent: dimension mismatch");
  }
  Vec y = y0;
  Vec gx(problem.dim_x()), gy(problem.dim_y());
  for (std::int64_t k = 0; k < iters; ++k) {
    if (rng) {
      problem.sample_gradient(x_fixed, y, *rng, gx, gy);
    } else {
      problem.gradient(x_fixed, y, gx, gy);
    }
    Vec next = y + tau * gy;
    if (diverged(next)) {
      SolverState last;
      last.point = {x_fixed, y};
      last.iter = k;
      throw DivergenceError("gradient ascent diverged at step " + std::to_string(k + 1), last);
    }
    y.swap(next);
  }
  return y;
}

}  // namespace ncpl
