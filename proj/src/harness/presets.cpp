#include "ncpl/harness/presets.hpp"

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

const json kStepGrid = json::array({1e-2, 5e-2, 1e-1, 5e-1, 1.0});
const json kLrGrid = json::array({1e-4, 5e-4, 1e-3, 5e-3});
const json kMomentumGrid = json::array({0.5, 0.9});

json wgan_linear(const json& solver, const std::string& name) {
  return {{"name", name},
          {"problem", {{"id", "linear-wgan"}, {"params", {{"batch_size", 100}}}}},
          {"solver", solver},
          {"horizon", 5000},
          {"seed", 1},
          {"metrics", {"grad-f", "dist-to-opt"}},
          {"cadence", 1}};
}

json wgan_neural(const json& solver, const std::string& name) {
  return {{"name", name},
          {"problem", {{"id", "neural-wgan"}, {"params", {{"batch_size", 100}}}}},
          {"solver", solver},
          {"horizon", 2000},
          {"seed", 1},
          {"metrics", {"grad-f", "phi"}},
          {"cadence", 10}};
}

json regression(const json& solver, const std::string& name) {
  return {{"name", name},
          {"problem", {{"id", "robust-regression"}, {"params", {{"batch_size", 20}}}}},
          {"solver", solver},
          {"horizon", 2000},
          {"seed", 1},
          {"metrics", {"grad-f", "phi"}},
          {"cadence", 10}};
}

json sweep_block(const json& grid, int seeds, const std::string& out) {
  json s = {{"seeds", seeds},
            {"threshold", {{"column", "dist_to_opt"}, {"value", 1e-2}}},
            {"output_dir", out}};
  s["grid"] = grid;
  return s;
}

std::vector<Preset> build() {
  const json smoothed = {{"id", "smoothed-agda"},
                         {"stepsizes", {{"tau1", 0.5}, {"tau2", 0.5}, {"p", 10.0}, {"beta", 0.9}}}};
  const json agda = {{"id", "agda"}, {"stepsizes", {{"tau1", 0.5}, {"tau2", 1.0}}}};
  const json adam = {{"id", "adam"}, {"adaptive", {{"lr", 5e-4}, {"beta1", 0.5}}}};
  const json rmsprop = {{"id", "rmsprop"}, {"adaptive", {{"lr", 5e-4}, {"momentum", 0.5}}}};

  std::vector<Preset> out;
  out.push_back({"wgan-linear-smoothed", "Linear-generator WGAN, Smoothed-AGDA at the tuned figure settings",
                 false, wgan_linear(smoothed, "wgan-linear-smoothed")});
  out.push_back({"wgan-linear-agda", "Linear-generator WGAN, AGDA at its best grid cell", false,
                 wgan_linear(agda, "wgan-linear-agda")});
  out.push_back({"wgan-linear-adam", "Linear-generator WGAN, Adam with lr 5e-4 and momentum 0.5", false,
                 wgan_linear(adam, "wgan-linear-adam")});
  {
    json c = wgan_linear(smoothed, "wgan-linear-smoothed-seeds");
    c["sweep"] = sweep_block(json::array(), 5, "wgan-linear-smoothed-seeds");
    out.push_back({"wgan-linear-smoothed-seeds", "Smoothed-AGDA on the linear WGAN over 5 seeds", true, c});
  }
  {
    json c = wgan_linear(agda, "wgan-linear-agda-grid");
    c["sweep"] = sweep_block(json::array({{{"path", "solver.stepsizes.tau1"}, {"values", kStepGrid}},
                                          {{"path", "solver.stepsizes.tau2"}, {"values", kStepGrid}}}),
                             5, "wgan-linear-agda-grid");
    out.push_back({"wgan-linear-agda-grid", "AGDA stepsize grid (5 x 5 cells, 5 seeds) on the linear WGAN", true, c});
  }
  {
    json c = wgan_linear(adam, "wgan-linear-adam-grid");
    c["sweep"] = sweep_block(json::array({{{"path", "solver.adaptive.lr"}, {"values", kLrGrid}},
                                          {{"path", "solver.adaptive.beta1"}, {"values", kMomentumGrid}}}),
                             5, "wgan-linear-adam-grid");
    out.push_back({"wgan-linear-adam-grid", "Adam learning-rate and momentum grid on the linear WGAN", true, c});
  }
  {
    json c = wgan_linear(rmsprop, "wgan-linear-rmsprop-grid");
    c["sweep"] = sweep_block(json::array({{{"path", "solver.adaptive.lr"}, {"values", kLrGrid}},
                                          {{"path", "solver.adaptive.momentum"}, {"values", kMomentumGrid}}}),
                             5, "wgan-linear-rmsprop-grid");
    out.push_back({"wgan-linear-rmsprop-grid", "RMSprop learning-rate and momentum grid on the linear WGAN", true, c});
  }

  // Best shared AGDA/Smoothed-AGDA cell of a 3 x 3 scan over 5 seeds; smoothing
  // uses the regression figure's p = 10, beta = 0.5.
  const json neural_steps = {{"tau1", 0.05}, {"tau2", 1.0}};
  json neural_smoothed_steps = neural_steps;
  neural_smoothed_steps["p"] = 10.0;
  neural_smoothed_steps["beta"] = 0.5;
  out.push_back({"wgan-neural-agda", "ReLU-generator WGAN, AGDA (smoke test)", false,
                 wgan_neural({{"id", "agda"}, {"stepsizes", neural_steps}}, "wgan-neural-agda")});
  out.push_back({"wgan-neural-smoothed", "ReLU-generator WGAN, Smoothed-AGDA with the AGDA stepsizes (smoke test)",
                 false, wgan_neural({{"id", "smoothed-agda"}, {"stepsizes", neural_smoothed_steps}},
                                    "wgan-neural-smoothed")});
  out.push_back({"wgan-neural-adam", "ReLU-generator WGAN, Adam with lr 5e-4 and momentum 0.5 (smoke test)", false,
                 wgan_neural(adam, "wgan-neural-adam")});

  const json reg_steps = {{"tau1", 0.1}, {"tau2", 0.5}};
  json reg_smoothed_steps = reg_steps;
  reg_smoothed_steps["p"] = 10.0;
  reg_smoothed_steps["beta"] = 0.5;
  out.push_back({"robust-regression-agda", "Robust nonlinear regression, AGDA (smoke test)", false,
                 regression({{"id", "agda"}, {"stepsizes", reg_steps}}, "robust-regression-agda")});
  out.push_back({"robust-regression-smoothed",
                 "Robust nonlinear regression, Smoothed-AGDA with the AGDA stepsizes (smoke test)", false,
                 regression({{"id", "smoothed-agda"}, {"stepsizes", reg_smoothed_steps}},
                            "robust-regression-smoothed")});

  const json quad = {{"id", "quadratic-saddle"}, {"params", {{"a", 1.0}, {"b", 1.0}, {"c", 2.0}}}};
  out.push_back({"quadratic-theorem1", "Quadratic saddle, AGDA with the deterministic theorem stepsizes", false,
                 {{"name", "quadratic-theorem1"},
                  {"problem", quad},
                  {"solver", {{"id", "agda"}, {"stepsizes", {{"theorem", 1}}}}},
                  {"horizon", 1000},
                  {"seed", 1},
                  {"metrics", {"grad-f", "grad-phi", "potential-agda", "dist-to-opt"}},
                  {"cadence", 10}}});
  out.push_back({"quadratic-theorem2", "Quadratic saddle, Smoothed-AGDA with the deterministic theorem stepsizes",
                 false,
                 {{"name", "quadratic-theorem2"},
                  {"problem", quad},
                  {"solver", {{"id", "smoothed-agda"}, {"stepsizes", {{"theorem", 2}}}}},
                  {"horizon", 10000},
                  {"seed", 1},
                  {"metrics", {"grad-f", "grad-phi", "potential-smoothed", "gap"}},
                  {"cadence", 100}}});
  out.push_back({"catalyst-quadratic", "Quadratic saddle, Catalyst-AGDA with the default stop factor", false,
                 {{"name", "catalyst-quadratic"},
                  {"problem", quad},
                  {"solver", {{"id", "catalyst-agda"}}},
                  {"horizon", 20},
                  {"seed", 1},
                  {"metrics", {"grad-f", "grad-phi", "moreau", "gap"}},
                  {"cadence", 1}}});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace ncpl
