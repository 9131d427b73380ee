#include "ncpl/harness/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <limits>

#include "ncpl/catalyst.hpp"
#include "ncpl/errors.hpp"
#include "ncpl/metrics.hpp"
#include "ncpl/problems/registry.hpp"
#include "ncpl/solvers.hpp"

namespace ncpl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> columns_for(const std::string& metric) {
  if (metric == "grad-f") return {"grad_fx", "grad_fy"};
  if (metric == "grad-phi") return {"grad_phi", "grad_phi_exact", "grad_phi_tol"};
  if (metric == "moreau") return {"moreau", "moreau_exact", "moreau_tol"};
  if (metric == "potential-agda") return {"potential_agda", "potential_agda_exact", "potential_agda_tol"};
  if (metric == "potential-smoothed") {
    return {"potential_smoothed", "potential_smoothed_exact", "potential_smoothed_tol"};
  }
  if (metric == "gap") return {"gap_surrogate", "gap_exact"};
  if (metric == "dist-to-opt") return {"dist_to_opt"};
  if (metric == "phi") return {"phi", "phi_exact", "phi_tol"};
  throw ConfigError("unknown metric '" + metric + "'");
}

struct MetricContext {
  const MinimaxProblem& problem;
  const RunConfig& config;
  const StepSizes& steps;
};

void push_estimate(std::vector<double>& out, const std::function<Estimate()>& f) {
  try {
    const Estimate e = f();
    out.insert(out.end(), {e.value, e.exact ? 1.0 : 0.0, e.tol});
  } catch (const UnsupportedCapability&) {
    out.insert(out.end(), {kNaN, 0.0, kInf});
  } catch (const NumericError&) {
    out.insert(out.end(), {kNaN, 0.0, kInf});
  }
}

void evaluate(const MetricContext& ctx, const Point& p, const std::optional<Vec>& z,
              std::vector<double>& out) {
  const MinimaxProblem& problem = ctx.problem;
  const double tol = ctx.config.metric_tol;
  MetricOptions opt;
  opt.y_hint = p.y;
  out.clear();
  for (const auto& m : ctx.config.metrics) {
    if (m == "grad-f") {
      Vec gx(problem.dim_x()), gy(problem.dim_y());
      problem.gradient(p.x, p.y, gx, gy);
      out.push_back(gx.norm());
      out.push_back(gy.norm());
    } else if (m == "grad-phi") {
      push_estimate(out, [&] { return grad_phi_norm(problem, p.x, tol, opt); });
    } else if (m == "moreau") {
      push_estimate(out, [&] { return moreau_grad(problem, p.x, tol, opt); });
    } else if (m == "potential-agda") {
      push_estimate(out, [&] { return potential_agda(problem, p, tol, opt); });
    } else if (m == "potential-smoothed") {
      const double smoothing = ctx.steps.p > problem.l() ? ctx.steps.p : 2.0 * problem.l();
      push_estimate(out, [&] { return potential_smoothed(problem, p, z ? *z : p.x, smoothing, tol, opt); });
    } else if (m == "gap") {
      const GapBound g = gap_bound(problem, z ? *z : p.x, p);
      out.push_back(g.surrogate);
      out.push_back(g.exact.value_or(kNaN));
    } else if (m == "dist-to-opt") {
      out.push_back(problem.distance_to_optimum(p).value_or(kNaN));
    } else if (m == "phi") {
      push_estimate(out, [&] { return phi_value(problem, p.x, tol, opt); });
    }
  }
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string library_version() { return NCPL_VERSION; }

int TraceTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Point resolve_start(const RunConfig& config, const MinimaxProblem& problem) {
  Point p = problem.initial_point();
  auto assign = [](Vec& dst, const std::vector<double>& src, Index n, const char* field) {
    if (static_cast<Index>(src.size()) != n) {
      throw ConfigError(std::string("field 'start.") + field + "': expected " + std::to_string(n) +
                        " entries, got " + std::to_string(src.size()));
    }
    dst = Eigen::Map<const Vec>(src.data(), n);
  };
  if (config.start_x) assign(p.x, *config.start_x, problem.dim_x(), "x");
  if (config.start_y) assign(p.y, *config.start_y, problem.dim_y(), "y");
  if (config.warm_start_y > 0) {
    p.y = gradient_ascent(problem, p.x, p.y, 1.0 / problem.l(), config.warm_start_y, nullptr);
  }
  return p;
}

StepSizes resolve_stepsizes(const RunConfig& config, const MinimaxProblem& problem, const Point& start) {
  const StepSizeSpec& s = config.steps;
  if (s.mode == StepSizeSpec::Mode::kExplicit) return s.explicit_steps;
  const double T = s.T > 0.0 ? s.T : static_cast<double>(std::max(1L, config.horizon));
  double Delta = s.Delta;
  if (Delta <= 0.0) {
    if (!problem.has(ClosedForm::kPhi) || !problem.has(ClosedForm::kPhiStar)) {
      throw ConfigError("field 'solver.stepsizes.Delta': required because " + problem.name() +
                        " has no closed-form Phi and Phi*");
    }
    Delta = problem.phi(start.x) - problem.phi_star();
  }
  if (s.mode == StepSizeSpec::Mode::kTheorem1) {
    return theorem1_stepsizes(problem.l(), problem.mu(), problem.sigma(), T, Delta);
  }
  return theorem2_stepsizes(problem.l(), problem.mu(), problem.sigma(), T, Delta);
}

RunResult execute(const RunConfig& config) {
  const auto problem = make_problem(config.problem_id, config.problem_params);
  return execute(config, *problem);
}

RunResult execute(const RunConfig& config, const MinimaxProblem& problem) {
  RunResult result;
  for (const auto& m : config.metrics) {
    for (auto& c : columns_for(m)) result.trace.columns.push_back(std::move(c));
  }
  const Point start = resolve_start(config, problem);
  result.steps = resolve_stepsizes(config, problem, start);
  const StepSizes& s = result.steps;
  const MetricContext ctx{problem, config, s};
  const auto t0 = std::chrono::steady_clock::now();
  const long warm_calls = config.warm_start_y;

  auto record = [&](long iter, long calls, const Point& p, const std::optional<Vec>& z) {
    TraceRow row;
    row.iter = iter;
    row.oracle_calls = calls;
    evaluate(ctx, p, z, row.values);
    if (config.record_time) {
      row.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    }
    result.trace.rows.push_back(std::move(row));
  };
  auto due = [&](long iter) { return iter % config.cadence == 0 || iter == config.horizon; };

  if (config.solver == SolverKind::kCatalystAgda) {
    const StepSizes inner = config.catalyst_inner.value_or(catalyst_inner_stepsizes(problem.l()));
    result.steps = inner;
    record(0, warm_calls, start, std::nullopt);
    long cumulative = 0;
    try {
      const CatalystTrace tr = catalyst_agda_run(
          problem, start, config.horizon, config.catalyst_stop, inner, [&](const CatalystOuterRecord& rec) {
            cumulative += rec.inner_iters;
            const long iter = rec.outer + 1;
            if (due(iter)) record(iter, warm_calls + 2 * cumulative, rec.point, std::nullopt);
            return true;
          });
      result.final_point = tr.final_point;
    } catch (const NumericError& e) {
      result.status = RunStatus::kFailed;
      result.message = e.what();
      result.failed_at = result.trace.rows.empty() ? 0 : result.trace.rows.back().iter + 1;
    }
    return result;
  }

  const SolverKind kind = config.solver == SolverKind::kGradientAscent ? SolverKind::kAgda : config.solver;
  SolverState state = make_state(problem, start, kind, config.seed);
  state.oracle_calls = warm_calls;
  RandomStream ascent(config.seed, StreamId::kAscent);
  StepWorkspace ws;
  record(0, state.oracle_calls, state.point, state.z);
  try {
    for (long t = 0; t < config.horizon; ++t) {
      switch (config.solver) {
        case SolverKind::kAgda: stoc_agda_advance(problem, state, s, ws); break;
        case SolverKind::kGda: gda_advance(problem, state, s, ws); break;
        case SolverKind::kSmoothedAgda: smoothed_agda_advance(problem, state, s, ws); break;
        case SolverKind::kAdam: adam_advance(problem, state, config.adaptive, ws); break;
        case SolverKind::kRmsprop: rmsprop_advance(problem, state, config.adaptive, ws); break;
        case SolverKind::kGradientAscent: {
          Vec y = gradient_ascent(problem, state.point.x, state.point.y, s.tau2, 1, &ascent);
          state.point.y.swap(y);
          ++state.oracle_calls;
          ++state.iter;
          break;
        }
        case SolverKind::kCatalystAgda: break;
      }
      if (due(state.iter)) record(state.iter, state.oracle_calls, state.point, state.z);
    }
  } catch (const DivergenceError& e) {
    result.status = RunStatus::kDiverged;
    result.message = e.what();
    result.failed_at = e.last_state().iter + 1;
    result.final_point = e.last_state().point;
    return result;
  } catch (const NumericError& e) {
    result.status = RunStatus::kFailed;
    result.message = e.what();
    result.failed_at = state.iter + 1;
    result.final_point = state.point;
    return result;
  }
  result.final_point = state.point;
  return result;
}

std::string render_trace(const RunConfig& config, const MinimaxProblem& problem, const RunResult& result) {
  std::string out;
  out += "# ncpl " + library_version() + " trace\n";
  out += "# config " + to_json(config).dump() + "\n";
  out += "# problem " + problem.name() + " dim_x=" + std::to_string(problem.dim_x()) +
         " dim_y=" + std::to_string(problem.dim_y()) + " l=" + fmt(problem.l()) + " mu=" + fmt(problem.mu()) +
         " kappa=" + fmt(problem.kappa()) + " sigma=" + fmt(problem.sigma()) + "\n";
  const StepSizes& s = result.steps;
  out += "# stepsizes tau1=" + fmt(s.tau1) + " tau2=" + fmt(s.tau2) + " p=" + fmt(s.p) + " beta=" + fmt(s.beta) + "\n";
  out += "iter,oracle_calls";
  for (const auto& c : result.trace.columns) out += "," + c;
  if (config.record_time) out += ",elapsed_ns";
  out += "\n";
  for (const auto& row : result.trace.rows) {
    out += std::to_string(row.iter) + "," + std::to_string(row.oracle_calls);
    for (double v : row.values) out += "," + fmt(v);
    if (config.record_time) out += "," + std::to_string(row.elapsed_ns);
    out += "\n";
  }
  if (result.status != RunStatus::kOk) {
    out += std::string("# FAILED ") + (result.status == RunStatus::kDiverged ? "diverged" : "numeric") +
           " iter=" + std::to_string(result.failed_at) + ": " + result.message + "\n";
  }
  return out;
}

RunResult run_to_file(const RunConfig& config, const std::string& path) {
  const std::string target = path.empty() ? config.output : path;
  if (target.empty()) throw ConfigError("no output path: set 'output' or pass --out");
  const auto problem = make_problem(config.problem_id, config.problem_params);
  RunResult r = execute(config, *problem);
  std::ofstream out(target, std::ios::binary);
  if (!out) throw ConfigError("cannot write trace file '" + target + "'");
  out << render_trace(config, *problem, r);
  if (!out) throw ConfigError("failed writing trace file '" + target + "'");
  return r;
}

}  // namespace ncpl
