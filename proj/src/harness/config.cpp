#include "ncpl/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ncpl/errors.hpp"
#include "ncpl/metrics.hpp"

namespace ncpl {

namespace {

/// Object reader that tracks consumed keys and reports dotted field paths.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  std::string where(const std::string& key = "") const {
    std::string p = path_;
    if (!key.empty()) p += (p.empty() ? "" : ".") + key;
    return p.empty() ? "config" : "field '" + p + "'";
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <class T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    return convert<T>(key);
  }

  template <class T>
  T require(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(where(key) + ": required but missing");
    return convert<T>(key);
  }

  Node child(const std::string& key) {
    seen_.insert(key);
    return Node(j_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(where(key) + ": unknown field");
    }
  }

 private:
  template <class T>
  T convert(const std::string& key) {
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where(key) + ": wrong type (" + std::string(j_.at(key).type_name()) + ")");
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void positive(double v, const Node& n, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError(n.where(key) + ": must be positive");
}

StepSizes read_steps(Node n, bool need_tau1) {
  StepSizes s;
  s.tau1 = need_tau1 ? n.require<double>("tau1") : n.get("tau1", 0.0);
  s.tau2 = n.require<double>("tau2");
  s.p = n.get("p", 0.0);
  s.beta = n.get("beta", 1.0);
  if (need_tau1) positive(s.tau1, n, "tau1");
  positive(s.tau2, n, "tau2");
  if (s.p < 0.0) throw ConfigError(n.where("p") + ": must be nonnegative");
  if (!(s.beta > 0.0 && s.beta <= 1.0)) throw ConfigError(n.where("beta") + ": must lie in (0, 1]");
  n.finish();
  return s;
}

std::string stop_name(StopKind k) {
  switch (k) {
    case StopKind::kAuto: return "auto";
    case StopKind::kExact: return "exact";
    case StopKind::kSurrogate: return "surrogate";
  }
  return "auto";
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error");
  }
}

RunConfig parse_run_config(const json& j) {
  Node root(j, "");
  RunConfig c;
  c.name = root.get<std::string>("name", "");
  {
    Node p = root.child("problem");
    c.problem_id = p.require<std::string>("id");
    if (p.has("params")) {
      c.problem_params = p.raw("params");
      if (!c.problem_params.is_object()) throw ConfigError(p.where("params") + ": expected an object");
    }
    p.finish();
  }
  {
    if (!root.has("solver")) throw ConfigError("field 'solver': required but missing");
    Node s = root.child("solver");
    c.solver = parse_solver(s.require<std::string>("id"));
    const bool uses_steps = c.solver == SolverKind::kGda || c.solver == SolverKind::kAgda ||
                            c.solver == SolverKind::kSmoothedAgda ||
                            c.solver == SolverKind::kGradientAscent;
    if (s.has("stepsizes")) {
      Node st = s.child("stepsizes");
      if (st.has("theorem")) {
        const int which = st.get("theorem", 0);
        if (which != 1 && which != 2) throw ConfigError(st.where("theorem") + ": must be 1 or 2");
        c.steps.mode = which == 1 ? StepSizeSpec::Mode::kTheorem1 : StepSizeSpec::Mode::kTheorem2;
        c.steps.T = st.get("T", 0.0);
        c.steps.Delta = st.get("Delta", 0.0);
        if (c.steps.T < 0.0 || c.steps.Delta < 0.0) throw ConfigError(st.where() + ": T and Delta must be nonnegative");
        st.finish();
      } else {
        c.steps.explicit_steps = read_steps(st, c.solver != SolverKind::kGradientAscent);
      }
    } else if (uses_steps) {
      throw ConfigError(s.where("stepsizes") + ": required for solver " + to_string(c.solver));
    }
    if (s.has("adaptive")) {
      Node a = s.child("adaptive");
      c.adaptive.lr = a.require<double>("lr");
      positive(c.adaptive.lr, a, "lr");
      if (c.solver == SolverKind::kRmsprop) {
        c.adaptive.beta1 = a.get("momentum", 0.0);
        c.adaptive.decay = a.get("decay", 0.99);
      } else {
        c.adaptive.beta1 = a.get("beta1", 0.9);
        c.adaptive.beta2 = a.get("beta2", 0.999);
      }
      c.adaptive.eps = a.get("eps", 1e-8);
      a.finish();
    } else if (c.solver == SolverKind::kAdam || c.solver == SolverKind::kRmsprop) {
      throw ConfigError(s.where("adaptive") + ": required for solver " + to_string(c.solver));
    }
    if (s.has("catalyst")) {
      Node k = s.child("catalyst");
      c.catalyst_stop.beta = k.get("stop_beta", 0.0);
      const auto kind = k.get<std::string>("stop", "auto");
      if (kind == "auto") c.catalyst_stop.kind = StopKind::kAuto;
      else if (kind == "exact") c.catalyst_stop.kind = StopKind::kExact;
      else if (kind == "surrogate") c.catalyst_stop.kind = StopKind::kSurrogate;
      else throw ConfigError(k.where("stop") + ": expected auto, exact or surrogate");
      c.catalyst_stop.max_inner = k.get("max_inner", c.catalyst_stop.max_inner);
      if (k.has("inner")) c.catalyst_inner = read_steps(k.child("inner"), true);
      k.finish();
    }
    s.finish();
  }
  c.horizon = root.get("horizon", c.horizon);
  if (c.horizon < 0) throw ConfigError(root.where("horizon") + ": must be nonnegative");
  c.seed = root.get("seed", c.seed);
  c.metrics = root.get("metrics", c.metrics);
  const auto known = metric_ids();
  for (const auto& m : c.metrics) {
    if (m != "phi" && std::find(known.begin(), known.end(), m) == known.end()) {
      throw ConfigError(root.where("metrics") + ": unknown metric '" + m + "'");
    }
  }
  c.cadence = root.get("cadence", c.cadence);
  if (c.cadence < 1) throw ConfigError(root.where("cadence") + ": must be at least 1");
  c.metric_tol = root.get("metric_tol", c.metric_tol);
  positive(c.metric_tol, root, "metric_tol");
  if (root.has("start")) {
    Node st = root.child("start");
    if (st.has("x")) c.start_x = st.get<std::vector<double>>("x", {});
    if (st.has("y")) c.start_y = st.get<std::vector<double>>("y", {});
    st.finish();
  }
  c.warm_start_y = root.get("warm_start_y", c.warm_start_y);
  if (c.warm_start_y < 0) throw ConfigError(root.where("warm_start_y") + ": must be nonnegative");
  c.record_time = root.get("record_time", c.record_time);
  c.output = root.get<std::string>("output", "");
  root.finish();
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["name"] = c.name;
  j["problem"] = {{"id", c.problem_id}, {"params", c.problem_params}};
  json s;
  s["id"] = to_string(c.solver);
  switch (c.steps.mode) {
    case StepSizeSpec::Mode::kExplicit: {
      const StepSizes& t = c.steps.explicit_steps;
      s["stepsizes"] = {{"tau1", t.tau1}, {"tau2", t.tau2}, {"p", t.p}, {"beta", t.beta}};
      break;
    }
    case StepSizeSpec::Mode::kTheorem1:
    case StepSizeSpec::Mode::kTheorem2:
      s["stepsizes"] = {{"theorem", c.steps.mode == StepSizeSpec::Mode::kTheorem1 ? 1 : 2},
                        {"T", c.steps.T},
                        {"Delta", c.steps.Delta}};
      break;
  }
  if (c.solver == SolverKind::kAdam) {
    s["adaptive"] = {{"lr", c.adaptive.lr}, {"beta1", c.adaptive.beta1}, {"beta2", c.adaptive.beta2},
                     {"eps", c.adaptive.eps}};
  } else if (c.solver == SolverKind::kRmsprop) {
    s["adaptive"] = {{"lr", c.adaptive.lr}, {"momentum", c.adaptive.beta1}, {"decay", c.adaptive.decay},
                     {"eps", c.adaptive.eps}};
  }
  if (c.solver == SolverKind::kCatalystAgda) {
    json k = {{"stop_beta", c.catalyst_stop.beta},
              {"stop", stop_name(c.catalyst_stop.kind)},
              {"max_inner", c.catalyst_stop.max_inner}};
    if (c.catalyst_inner) k["inner"] = {{"tau1", c.catalyst_inner->tau1}, {"tau2", c.catalyst_inner->tau2}};
    s["catalyst"] = k;
  }
  j["solver"] = s;
  j["horizon"] = c.horizon;
  j["seed"] = c.seed;
  j["metrics"] = c.metrics;
  j["cadence"] = c.cadence;
  j["metric_tol"] = c.metric_tol;
  if (c.start_x || c.start_y) {
    json st = json::object();
    if (c.start_x) st["x"] = *c.start_x;
    if (c.start_y) st["y"] = *c.start_y;
    j["start"] = st;
  }
  j["warm_start_y"] = c.warm_start_y;
  j["record_time"] = c.record_time;
  j["output"] = c.output;
  return j;
}

void set_path(json& j, const std::string& dotted, const json& value) {
  json* cur = &j;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', pos);
    const std::string key = dotted.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (key.empty()) throw ConfigError("malformed grid path '" + dotted + "'");
    if (!cur->is_object()) throw ConfigError("grid path '" + dotted + "' crosses a non-object");
    if (dot == std::string::npos) {
      (*cur)[key] = value;
      return;
    }
    cur = &(*cur)[key];
    if (cur->is_null()) *cur = json::object();
    pos = dot + 1;
  }
}

SweepConfig parse_sweep_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected an object");
  SweepConfig s;
  s.base = j;
  s.base.erase("sweep");
  if (!j.contains("sweep")) throw ConfigError("field 'sweep': required but missing");
  Node n(j.at("sweep"), "sweep");
  if (n.has("grid")) {
    const json& g = n.raw("grid");
    if (!g.is_array()) throw ConfigError("field 'sweep.grid': expected an array of {path, values}");
    for (std::size_t i = 0; i < g.size(); ++i) {
      Node axis(g[i], "sweep.grid[" + std::to_string(i) + "]");
      const auto path = axis.require<std::string>("path");
      const json& values = axis.raw("values");
      if (!values.is_array() || values.empty()) {
        throw ConfigError(axis.where("values") + ": expected a non-empty array");
      }
      axis.finish();
      s.grid.emplace_back(path, std::vector<json>(values.begin(), values.end()));
    }
  }
  s.seeds = n.get("seeds", 1);
  if (s.seeds < 1) throw ConfigError(n.where("seeds") + ": must be at least 1");
  if (n.has("threshold")) {
    Node t = n.child("threshold");
    s.threshold = Threshold{t.require<std::string>("column"), t.require<double>("value")};
    t.finish();
  }
  s.window_fraction = n.get("window_fraction", s.window_fraction);
  if (!(s.window_fraction > 0.0 && s.window_fraction <= 1.0)) {
    throw ConfigError(n.where("window_fraction") + ": must lie in (0, 1]");
  }
  s.workers = n.get("workers", 0);
  s.output_dir = n.get<std::string>("output_dir", "");
  n.finish();
  // Validate the base and every grid value eagerly so errors surface before any run.
  parse_run_config(s.base);
  for (const auto& [path, values] : s.grid) {
    for (const auto& v : values) {
      json probe = s.base;
      set_path(probe, path, v);
      parse_run_config(probe);
    }
  }
  return s;
}

}  // namespace ncpl
