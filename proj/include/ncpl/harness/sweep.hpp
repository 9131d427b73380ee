#pragma once

#include <string>
#include <vector>

#include "ncpl/harness/config.hpp"
#include "ncpl/harness/run.hpp"

namespace ncpl {

struct ColumnStats {
  std::string column;
  double final_mean = 0.0, final_std = 0.0;    ///< last recorded value
  double best_mean = 0.0, best_std = 0.0;      ///< minimum over the trace
  double window_mean = 0.0, window_std = 0.0;  ///< mean over the last window_fraction of rows
};

struct SweepCell {
  std::size_t index = 0;
  json overrides = json::object();  ///< grid path → value
  std::vector<std::uint64_t> seeds;
  std::vector<RunResult> runs;      ///< one per seed
  std::vector<ColumnStats> stats;   ///< over successful runs
  /// Per seed: first iteration whose threshold column is ≤ the threshold, or -1.
  std::vector<long> first_hit;
  int failures = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

/// Run config of cell `cell`, replicate `rep`: the base with the cell's grid
/// values applied and seed = derive_seed(base seed, cell·seeds + rep).
json sweep_run_json(const SweepConfig& sweep, std::size_t cell, int rep);

std::size_t sweep_cell_count(const SweepConfig& sweep);

/// Runs every (cell, seed) pair on a worker pool. Failed runs are recorded in
/// their cell and do not stop the sweep. Results do not depend on the worker count.
SweepResult run_sweep(const SweepConfig& sweep);

/// Summary CSV: one row per cell with override values, failures, per-column
/// stats and, with a threshold, hits and the median first-hit iteration.
std::string render_summary(const SweepConfig& sweep, const SweepResult& result);

/// Median of the first-hit iterations, counting misses as +infinity.
double median_first_hit(const std::vector<long>& hits);

/// run_sweep, then writes per-run traces and summary.csv into the output directory.
SweepResult run_sweep_to_dir(const SweepConfig& sweep, const std::string& dir = "");

}  // namespace ncpl
