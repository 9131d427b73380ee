#include "ncpl/problems/registry.hpp"

#include <set>

#include "ncpl/errors.hpp"
#include "ncpl/problems/degenerate_quadratic.hpp"
#include "ncpl/problems/linear_wgan.hpp"
#include "ncpl/problems/neural_wgan.hpp"
#include "ncpl/problems/quadratic_saddle.hpp"
#include "ncpl/problems/robust_regression.hpp"

namespace ncpl {

namespace {

using nlohmann::json;

/// Typed reads with diagnostics; remembers which keys were consumed.
class Params {
 public:
  Params(std::string owner, const json& j) : owner_(std::move(owner)), j_(j) {
    if (!j_.is_null() && !j_.is_object()) throw ConfigError(owner_ + ": params must be an object");
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    if (j_.is_null() || !j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(owner_ + ": parameter '" + key + "' has the wrong type");
    }
  }

  TestBox box(TestBox fallback) {
    const auto v = get<std::vector<double>>("box", {fallback.x_radius, fallback.y_radius});
    if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > 0.0)) {
      throw ConfigError(owner_ + ": 'box' must be [x_radius, y_radius] with positive entries");
    }
    return {v[0], v[1]};
  }

  void finish() const {
    if (j_.is_null()) return;
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(owner_ + ": unknown parameter '" + key + "'");
    }
  }

 private:
  std::string owner_;
  const json& j_;
  std::set<std::string> seen_;
};

}  // namespace

std::vector<std::string> problem_ids() {
  return {"quadratic-saddle", "degenerate-quadratic", "linear-wgan", "neural-wgan",
          "robust-regression"};
}

std::shared_ptr<const MinimaxProblem> make_problem(const std::string& id, const json& params) {
  Params p(id, params);
  std::shared_ptr<const MinimaxProblem> out;
  if (id == "quadratic-saddle") {
    const double a = p.get("a", 1.0), b = p.get("b", 1.0), c = p.get("c", 2.0);
    const double sigma = p.get("sigma", 0.0);
    out = std::make_shared<QuadraticSaddle>(a, b, c, sigma, p.box({}));
  } else if (id == "degenerate-quadratic") {
    const auto dx = p.get<Index>("dim_x", 2), dy = p.get<Index>("dim_y", 3);
    const auto rank = p.get<Index>("rank", 2);
    const double rho = p.get("well_depth", 1.0);
    const auto seed = p.get<std::uint64_t>("seed", 7);
    const double sigma = p.get("sigma", 0.0);
    out = std::make_shared<DegenerateQuadratic>(
        DegenerateQuadratic::standard(dx, dy, rank, rho, seed, sigma, p.box({1.0, 10.0})));
  } else if (id == "linear-wgan") {
    LinearWganParams q;
    q.mu_hat = p.get("mu_hat", q.mu_hat);
    q.sigma_hat = p.get("sigma_hat", q.sigma_hat);
    q.lambda = p.get("lambda", q.lambda);
    q.batch_size = p.get("batch_size", q.batch_size);
    q.deterministic = p.get("deterministic", q.deterministic);
    q.box = p.box(q.box);
    out = std::make_shared<LinearWGAN>(q);
  } else if (id == "neural-wgan") {
    NeuralWganParams q;
    q.mu_hat = p.get("mu_hat", q.mu_hat);
    q.sigma_hat = p.get("sigma_hat", q.sigma_hat);
    q.lambda = p.get("lambda", q.lambda);
    q.hidden = p.get("hidden", q.hidden);
    q.pool_size = p.get("pool_size", q.pool_size);
    q.batch_size = p.get("batch_size", q.batch_size);
    q.deterministic = p.get("deterministic", q.deterministic);
    q.seed = p.get("seed", q.seed);
    q.box = p.box(q.box);
    out = std::make_shared<NeuralWGAN>(q);
  } else if (id == "robust-regression") {
    RobustRegressionParams q;
    q.n = p.get("n", q.n);
    q.input_dim = p.get("input_dim", q.input_dim);
    q.hidden1 = p.get("hidden1", q.hidden1);
    q.hidden2 = p.get("hidden2", q.hidden2);
    q.lambda = p.get("lambda", q.lambda);
    q.data_noise = p.get("data_noise", q.data_noise);
    q.seed = p.get("seed", q.seed);
    q.batch_size = p.get("batch_size", q.batch_size);
    const auto csv = p.get<std::string>("csv", "");
    if (!csv.empty()) q.csv_path = csv;
    q.box = p.box(q.box);
    out = std::make_shared<RobustRegression>(q);
  } else {
    std::string known;
    for (const auto& k : problem_ids()) known += (known.empty() ? "" : ", ") + k;
    throw ConfigError("unknown problem id '" + id + "' (known: " + known + ")");
  }
  p.finish();
  return out;
}

}  // namespace ncpl
