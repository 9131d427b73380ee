#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ncpl/convert.hpp"
#include "ncpl/errors.hpp"
#include "ncpl/harness/config.hpp"
#include "ncpl/harness/plot.hpp"
#include "ncpl/harness/presets.hpp"
#include "ncpl/harness/run.hpp"
#include "ncpl/harness/sweep.hpp"
#include "ncpl/problems/registry.hpp"

namespace {

using namespace ncpl;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> cadence;
  std::string out;
};

json load_source(const std::string& file, const std::string& preset) {
  if (!file.empty() && !preset.empty()) throw ConfigError("give either a config file or --preset, not both");
  if (!preset.empty()) return find_preset(preset).config;
  if (file.empty()) throw ConfigError("missing config file (or --preset)");
  return load_json_file(file);
}

void apply_overrides(json& j, const Overrides& o) {
  if (o.seed) j["seed"] = *o.seed;
  if (o.cadence) j["cadence"] = *o.cadence;
}

Vec parse_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Index>(v.size())); }

void print_conversion(const ConversionResult& r) {
  json j;
  j["x"] = std::vector<double>(r.point.x.data(), r.point.x.data() + r.point.x.size());
  j["y"] = std::vector<double>(r.point.y.data(), r.point.y.data() + r.point.y.size());
  j["oracle_calls"] = r.oracle_calls;
  j["steps"] = r.steps;
  j["certified_exactly"] = r.certified_exactly;
  j["grad_fx"] = r.certificate.grad_f_x_norm;
  j["grad_fy"] = r.certificate.grad_f_y_norm;
  j["grad_phi"] = r.certificate.grad_phi_norm.value;
  j["grad_phi_exact"] = r.certificate.grad_phi_norm.exact;
  j["warnings"] = r.warnings;
  std::cout << j.dump(2) << "\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic minimax solvers for nonconvex-PL problems: runs, sweeps, plots and conversions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  Overrides ov;
  std::string config_file, preset;

  auto* run = app.add_subcommand("run", "Run one configuration and write its trace CSV");
  run->add_option("config", config_file, "JSON run config");
  run->add_option("--preset", preset, "Use a built-in preset instead of a file");
  run->add_option("--seed", ov.seed, "Override the seed");
  run->add_option("--cadence", ov.cadence, "Override the metric cadence");
  run->add_option("--out", ov.out, "Trace output path");

  int workers = -1;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of configurations and seeds");
  sweep->add_option("config", config_file, "JSON sweep config");
  sweep->add_option("--preset", preset, "Use a built-in preset instead of a file");
  sweep->add_option("--seed", ov.seed, "Override the base seed");
  sweep->add_option("--cadence", ov.cadence, "Override the metric cadence");
  sweep->add_option("--out", ov.out, "Output directory");
  sweep->add_option("--workers", workers, "Worker threads (0 = all cores)");

  std::string plot_spec;
  auto* plot = app.add_subcommand("plot", "Render trace CSVs to an SVG chart");
  plot->add_option("spec", plot_spec, "JSON plot spec")->required();
  plot->add_option("--out", ov.out, "SVG output path");

  std::string problem_id = "quadratic-saddle", problem_params = "{}";
  std::vector<double> cx, cy;
  double eps = 1e-3, eps_prime = -1.0;
  bool stochastic = false;
  long max_steps = 1000000;
  std::uint64_t conv_seed = 0;
  auto* convert = app.add_subcommand("convert", "Translate between stationarity notions");
  convert->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--problem", problem_id, "Problem id");
    c->add_option("--params", problem_params, "Problem parameters as a JSON object");
    c->add_option("--x", cx, "Point x")->required()->delimiter(',');
    c->add_option("--y", cy, "Point y")->required()->delimiter(',');
    c->add_option("--eps", eps, "Target accuracy");
    c->add_flag("--stochastic", stochastic, "Use the stochastic oracle");
    c->add_option("--max-steps", max_steps, "Iteration budget");
    c->add_option("--seed", conv_seed, "Seed of the oracle stream");
  };
  auto* to_f = convert->add_subcommand("to-f", "Phi-stationary x to an f-stationary pair");
  add_common(to_f);
  to_f->add_option("--eps-prime", eps_prime, "Claimed bound on |grad_y f| at the input (default 10 eps)");
  auto* to_phi = convert->add_subcommand("to-phi", "f-stationary pair to a Phi-stationary x");
  add_common(to_phi);

  std::string dump_dir;
  auto* list = app.add_subcommand("list-presets", "List built-in presets");
  list->add_option("--dump", dump_dir, "Also write every preset as <dir>/<name>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      json j = load_source(config_file, preset);
      if (j.contains("sweep")) throw ConfigError("this config has a 'sweep' block; use the sweep subcommand");
      apply_overrides(j, ov);
      const RunConfig cfg = parse_run_config(j);
      std::string out = ov.out.empty() ? cfg.output : ov.out;
      if (out.empty()) out = (cfg.name.empty() ? std::string("trace") : cfg.name) + ".csv";
      const RunResult r = run_to_file(cfg, out);
      if (r.status != RunStatus::kOk) {
        std::cerr << "run failed at iteration " << r.failed_at << ": " << r.message << "\n";
        return kExitNumeric;
      }
      std::cerr << "wrote " << out << " (" << r.trace.rows.size() << " rows)\n";
    } else if (*sweep) {
      json j = load_source(config_file, preset);
      apply_overrides(j, ov);
      if (workers >= 0 && j.contains("sweep")) j["sweep"]["workers"] = workers;
      const SweepConfig cfg = parse_sweep_config(j);
      const SweepResult r = run_sweep_to_dir(cfg, ov.out);
      int failed = 0;
      for (const auto& c : r.cells) failed += c.failures;
      std::cerr << "sweep: " << r.cells.size() << " cells x " << cfg.seeds << " seeds, " << failed
                << " failed runs; summary in " << (ov.out.empty() ? cfg.output_dir : ov.out) << "/summary.csv\n";
    } else if (*plot) {
      const PlotSpec spec = parse_plot_spec(load_json_file(plot_spec));
      plot_to_file(spec, ov.out);
    } else if (*convert) {
      json params;
      try {
        params = json::parse(problem_params);
      } catch (const json::parse_error&) {
        throw ConfigError("--params is not valid JSON");
      }
      const auto problem = make_problem(problem_id, params);
      RandomStream rng(conv_seed, StreamId::kAscent);
      ConversionOptions opt;
      opt.stochastic = stochastic;
      opt.max_steps = max_steps;
      const Vec x = parse_vec(cx), y = parse_vec(cy);
      check_dimensions(*problem, {x, y});
      if (*to_f) {
        print_conversion(to_f_stationary(*problem, x, y, eps, eps_prime > 0 ? eps_prime : 10.0 * eps, rng, opt));
      } else {
        print_conversion(to_phi_stationary(*problem, x, y, eps, rng, opt));
      }
    } else if (*list) {
      if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);
      for (const auto& p : presets()) {
        std::cout << p.name << (p.is_sweep ? "  [sweep]  " : "  [run]    ") << p.description << "\n";
        if (!dump_dir.empty()) {
          std::ofstream f(dump_dir + "/" + p.name + ".json", std::ios::binary);
          f << p.config.dump(2) << "\n";
        }
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedCapability& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
