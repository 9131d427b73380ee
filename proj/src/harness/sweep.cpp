#include "ncpl/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "ncpl/errors.hpp"
#include "ncpl/problems/registry.hpp"
#include "ncpl/rng.hpp"

namespace ncpl {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  if (v.empty()) {
    mean = sd = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

/// Value columns only; flag and tolerance columns are not summarized.
bool summarizable(const std::string& c) {
  auto ends = [&](const char* suf) {
    const std::string s(suf);
    return c.size() >= s.size() && c.compare(c.size() - s.size(), s.size(), s) == 0;
  };
  return !ends("_exact") && !ends("_tol");
}

void summarize(const SweepConfig& sweep, SweepCell& cell) {
  const TraceTable* shape = nullptr;
  for (const auto& r : cell.runs) {
    if (r.status == RunStatus::kOk) {
      shape = &r.trace;
      break;
    }
  }
  if (sweep.threshold) {
    for (const auto& r : cell.runs) {
      long hit = -1;
      const int c = r.trace.column(sweep.threshold->column);
      if (c < 0) throw ConfigError("sweep threshold column '" + sweep.threshold->column + "' is not in the trace");
      for (const auto& row : r.trace.rows) {
        if (row.values[c] <= sweep.threshold->value) {
          hit = row.iter;
          break;
        }
      }
      cell.first_hit.push_back(hit);
    }
  }
  if (!shape) return;
  for (std::size_t c = 0; c < shape->columns.size(); ++c) {
    if (!summarizable(shape->columns[c])) continue;
    std::vector<double> finals, bests, windows;
    for (const auto& r : cell.runs) {
      if (r.status != RunStatus::kOk || r.trace.rows.empty()) continue;
      const auto& rows = r.trace.rows;
      finals.push_back(rows.back().values[c]);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& row : rows) best = std::min(best, row.values[c]);
      bests.push_back(best);
      const auto n = rows.size();
      auto w = static_cast<std::size_t>(std::ceil(sweep.window_fraction * static_cast<double>(n)));
      w = std::clamp<std::size_t>(w, 1, n);
      double acc = 0.0;
      for (std::size_t i = n - w; i < n; ++i) acc += rows[i].values[c];
      windows.push_back(acc / static_cast<double>(w));
    }
    ColumnStats s;
    s.column = shape->columns[c];
    mean_std(finals, s.final_mean, s.final_std);
    mean_std(bests, s.best_mean, s.best_std);
    mean_std(windows, s.window_mean, s.window_std);
    cell.stats.push_back(s);
  }
}

}  // namespace

std::size_t sweep_cell_count(const SweepConfig& sweep) {
  std::size_t n = 1;
  for (const auto& [_, values] : sweep.grid) n *= values.size();
  return n;
}

json sweep_run_json(const SweepConfig& sweep, std::size_t cell, int rep) {
  json j = sweep.base;
  std::size_t rest = cell;
  // First axis varies slowest.
  for (std::size_t a = sweep.grid.size(); a-- > 0;) {
    const auto& [path, values] = sweep.grid[a];
    set_path(j, path, values[rest % values.size()]);
    rest /= values.size();
  }
  const auto base_seed = sweep.base.value("seed", std::uint64_t{0});
  j["seed"] = derive_seed(base_seed, cell * static_cast<std::size_t>(sweep.seeds) + static_cast<std::size_t>(rep));
  return j;
}

double median_first_hit(const std::vector<long>& hits) {
  if (hits.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> v;
  for (long h : hits) v.push_back(h < 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(h));
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SweepResult run_sweep(const SweepConfig& sweep) {
  const std::size_t cells = sweep_cell_count(sweep);
  const std::size_t jobs = cells * static_cast<std::size_t>(sweep.seeds);
  SweepResult result;
  result.cells.resize(cells);
  std::vector<RunConfig> configs(jobs);
  for (std::size_t c = 0; c < cells; ++c) {
    SweepCell& cell = result.cells[c];
    cell.index = c;
    cell.runs.resize(static_cast<std::size_t>(sweep.seeds));
    const json first = sweep_run_json(sweep, c, 0);
    for (const auto& [path, _] : sweep.grid) {
      const json* cur = &first;
      std::size_t pos = 0;
      while (true) {
        const std::size_t dot = path.find('.', pos);
        cur = &cur->at(path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos));
        if (dot == std::string::npos) break;
        pos = dot + 1;
      }
      cell.overrides[path] = *cur;
    }
    for (int r = 0; r < sweep.seeds; ++r) {
      configs[c * sweep.seeds + r] = parse_run_config(sweep_run_json(sweep, c, r));
      cell.seeds.push_back(configs[c * sweep.seeds + r].seed);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs;) {
      RunResult& slot = result.cells[k / sweep.seeds].runs[k % sweep.seeds];
      try {
        slot = execute(configs[k]);
      } catch (const std::exception& e) {
        slot.status = RunStatus::kFailed;
        slot.message = e.what();
      }
    }
  };
  unsigned n_workers = sweep.workers > 0 ? static_cast<unsigned>(sweep.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, std::max<std::size_t>(jobs, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (auto& cell : result.cells) {
    for (const auto& r : cell.runs) cell.failures += r.status != RunStatus::kOk;
    summarize(sweep, cell);
  }
  return result;
}

std::string render_summary(const SweepConfig& sweep, const SweepResult& result) {
  std::string out = "# ncpl " + library_version() + " sweep summary\n";
  out += "cell";
  for (const auto& [path, _] : sweep.grid) out += "," + path;
  out += ",seeds,failures";
  std::vector<std::string> cols;
  for (const auto& cell : result.cells) {
    if (!cell.stats.empty()) {
      for (const auto& s : cell.stats) cols.push_back(s.column);
      break;
    }
  }
  for (const auto& c : cols) {
    for (const char* k : {"final_mean", "final_std", "best_mean", "best_std", "window_mean", "window_std"}) {
      out += "," + c + "_" + k;
    }
  }
  if (sweep.threshold) out += ",hits,median_first_hit";
  out += "\n";
  for (const auto& cell : result.cells) {
    out += std::to_string(cell.index);
    for (const auto& [path, _] : sweep.grid) out += "," + cell.overrides.at(path).dump();
    out += "," + std::to_string(sweep.seeds) + "," + std::to_string(cell.failures);
    for (const auto& c : cols) {
      const ColumnStats* s = nullptr;
      for (const auto& st : cell.stats) {
        if (st.column == c) s = &st;
      }
      if (!s) {
        for (int k = 0; k < 6; ++k) out += ",nan";
        continue;
      }
      for (double v : {s->final_mean, s->final_std, s->best_mean, s->best_std, s->window_mean, s->window_std}) {
        out += "," + fmt(v);
      }
    }
    if (sweep.threshold) {
      long hits = 0;
      for (long h : cell.first_hit) hits += h >= 0;
      out += "," + std::to_string(hits) + "," + fmt(median_first_hit(cell.first_hit));
    }
    out += "\n";
  }
  return out;
}

SweepResult run_sweep_to_dir(const SweepConfig& sweep, const std::string& dir_override) {
  const std::string dir = dir_override.empty() ? sweep.output_dir : dir_override;
  if (dir.empty()) throw ConfigError("no sweep output directory: set 'sweep.output_dir' or pass --out");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  SweepResult result = run_sweep(sweep);
  for (const auto& cell : result.cells) {
    for (int r = 0; r < sweep.seeds; ++r) {
      const RunConfig cfg = parse_run_config(sweep_run_json(sweep, cell.index, r));
      const auto problem = make_problem(cfg.problem_id, cfg.problem_params);
      const std::string path = dir + "/cell" + std::to_string(cell.index) + "_seed" + std::to_string(r) + ".csv";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw ConfigError("cannot write '" + path + "'");
      out << render_trace(cfg, *problem, cell.runs[r]);
    }
  }
  std::ofstream summary(dir + "/summary.csv", std::ios::binary);
  if (!summary) throw ConfigError("cannot write '" + dir + "/summary.csv'");
  summary << render_summary(sweep, result);
  return result;
}

}  // namespace ncpl
