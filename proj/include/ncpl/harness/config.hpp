#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncpl/catalyst.hpp"
#include "ncpl/solvers.hpp"
#include "ncpl/stepsizes.hpp"

namespace ncpl {

using nlohmann::json;

struct StepSizeSpec {
  enum class Mode { kExplicit, kTheorem1, kTheorem2 };
  Mode mode = Mode::kExplicit;
  StepSizes explicit_steps;
  double T = 0.0;      ///< 0 uses the run horizon
  double Delta = 0.0;  ///< 0 uses Φ(x₀) − Φ* from closed forms
};

struct RunConfig {
  std::string name;
  std::string problem_id;
  json problem_params = json::object();
  SolverKind solver = SolverKind::kAgda;
  StepSizeSpec steps;
  AdaptiveParams adaptive;
  StoppingRule catalyst_stop;
  std::optional<StepSizes> catalyst_inner;  ///< unset uses 1/(3l), 1/(486l)
  long horizon = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> metrics{"grad-f"};
  long cadence = 1;
  double metric_tol = 1e-8;
  std::optional<std::vector<double>> start_x;
  std::optional<std::vector<double>> start_y;
  long warm_start_y = 0;  ///< exact ascent steps on y before the run; 0 = off
  bool record_time = false;
  std::string output;
};

struct Threshold {
  std::string column;
  double value = 0.0;
};

struct SweepConfig {
  json base;  ///< run config shared by every cell
  /// Dotted paths into the run config and the values each takes; the grid is
  /// their cartesian product, first axis slowest.
  std::vector<std::pair<std::string, std::vector<json>>> grid;
  int seeds = 1;
  std::optional<Threshold> threshold;
  double window_fraction = 0.1;
  int workers = 0;  ///< 0 = hardware concurrency
  std::string output_dir;
};

/// Reads a JSON file; parse errors mention line and column.
json load_json_file(const std::string& path);

/// Validates and fills defaults. Errors name the offending field path.
RunConfig parse_run_config(const json& j);
SweepConfig parse_sweep_config(const json& j);

/// Canonical form of a parsed config (all defaults explicit, keys sorted).
json to_json(const RunConfig& c);

/// Sets a dotted path ("solver.stepsizes.tau1") inside a JSON object.
void set_path(json& j, const std::string& dotted, const json& value);

}  // namespace ncpl
