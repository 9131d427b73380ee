#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncpl/harness/config.hpp"
#include "ncpl/problem.hpp"

namespace ncpl {

struct TraceRow {
  long iter = 0;
  long oracle_calls = 0;
  std::vector<double> values;  ///< one per TraceTable::columns entry
  std::int64_t elapsed_ns = 0;
};

struct TraceTable {
  std::vector<std::string> columns;  ///< metric columns after iter and oracle_calls
  std::vector<TraceRow> rows;

  /// Index into TraceRow::values, or -1.
  int column(const std::string& name) const;
};

enum class RunStatus { kOk, kDiverged, kFailed };

struct RunResult {
  RunStatus status = RunStatus::kOk;
  std::string message;  ///< failure description when status != kOk
  long failed_at = -1;  ///< iteration at which the failure happened
  TraceTable trace;
  Point final_point;
  StepSizes steps;  ///< resolved stepsizes
};

/// Stepsizes the config resolves to on this problem (theorem constructors use
/// T = horizon and Δ = Φ(x₀) − Φ* unless given).
StepSizes resolve_stepsizes(const RunConfig& config, const MinimaxProblem& problem, const Point& start);

/// Starting point: config override, else the problem default; then optional warm start of y.
Point resolve_start(const RunConfig& config, const MinimaxProblem& problem);

/// Executes the run in memory. Divergence and numeric failures end the run
/// with a non-ok status instead of throwing; configuration errors throw.
RunResult execute(const RunConfig& config);
RunResult execute(const RunConfig& config, const MinimaxProblem& problem);

/// CSV text: '#' header block (version, canonical config, resolved constants),
/// column header, rows, and a '#' failure marker when the run did not finish.
std::string render_trace(const RunConfig& config, const MinimaxProblem& problem, const RunResult& result);

/// execute + render + write to `path` (config.output when empty).
RunResult run_to_file(const RunConfig& config, const std::string& path = "");

std::string library_version();

}  // namespace ncpl
