#include "ncpl/problems/robust_regression.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "ncpl/errors.hpp"
#include "ncpl/rng.hpp"

namespace ncpl {

RegressionData RegressionData::synthesize(Index n, Index input_dim, double noise,
                                          std::uint64_t seed) {
  RandomStream rng(seed, StreamId::kData);
  RegressionData d{Mat(n, input_dim), Vec(n)};
  Vec w(input_dim);
  for (Index k = 0; k < input_dim; ++k) w[k] = rng.normal() / std::sqrt(static_cast<double>(input_dim));
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < input_dim; ++k) d.inputs(i, k) = rng.normal();
  for (Index i = 0; i < n; ++i) d.targets[i] = d.inputs.row(i).dot(w) + noise * rng.normal();
  return d;
}

RegressionData RegressionData::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open regression data file '" + path + "'");
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().size() < 2) {
    throw ConfigError(path + ": need at least one data row with inputs and a target");
  }
  const auto n = static_cast<Index>(rows.size());
  const auto d = static_cast<Index>(rows.front().size()) - 1;
  RegressionData out{Mat(n, d), Vec(n)};
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < d; ++k) out.inputs(i, k) = rows[i][k];
    out.targets[i] = rows[i][d];
  }
  return out;
}

namespace {

Index param_count(const RobustRegressionParams& p) {
  return p.hidden1 * p.input_dim + p.hidden1 + p.hidden2 * p.hidden1 + p.hidden2 + p.hidden2 + 1;
}

RobustRegressionParams reconcile(RobustRegressionParams p, const RegressionData& d) {
  p.n = d.inputs.rows();
  p.input_dim = d.inputs.cols();
  return p;
}

ProblemConstants regression_constants(const RobustRegressionParams& p) {
  if (p.n < 2 || p.input_dim < 1 || p.hidden1 < 1 || p.hidden2 < 1) {
    throw ConfigError("robust-regression: sizes must be positive (n >= 2)");
  }
  const double inv_n = 1.0 / static_cast<double>(p.n);
  if (!(p.lambda > inv_n)) {
    throw ConfigError("robust-regression: lambda must exceed 1/n for strong concavity in y");
  }
  if (p.batch_size < 0) throw ConfigError("robust-regression: batch_size must be nonnegative");
  ProblemConstants k;
  // y-block curvature bound; the x-block of a ReLU network has no global constant.
  k.smoothness_l = p.lambda + inv_n;
  k.pl_mu = p.lambda - inv_n;
  k.noise_sigma = p.batch_size > 0 ? 1.0 : 0.0;
  k.box = p.box;
  k.smoothness_certified = false;
  return k;
}

using RowMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMapMut = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

struct Layout {
  Index w1, b1, w2, b2, w3, b3;
  explicit Layout(const RobustRegressionParams& p) {
    w1 = 0;
    b1 = w1 + p.hidden1 * p.input_dim;
    w2 = b1 + p.hidden1;
    b2 = w2 + p.hidden2 * p.hidden1;
    w3 = b2 + p.hidden2;
    b3 = w3 + p.hidden2;
  }
};

}  // namespace

struct RobustRegression::Forward {
  Mat a1, h1, a2, h2;
  Vec out;
};

RobustRegression::RobustRegression(RobustRegressionParams params)
    : RobustRegression(params, params.csv_path ? RegressionData::load_csv(*params.csv_path)
                                               : RegressionData::synthesize(params.n, params.input_dim,
                                                                            params.data_noise, params.seed)) {}

RobustRegression::RobustRegression(RobustRegressionParams params, RegressionData data)
    : MinimaxProblem(param_count(reconcile(params, data)), data.inputs.rows(),
                     regression_constants(reconcile(params, data)),
                     params.batch_size > 0 ? NoiseModel::kMiniBatch : NoiseModel::kNone),
      params_(reconcile(params, data)), data_(std::move(data)) {}

RobustRegression::Forward RobustRegression::forward(const Vec& x, const Mat& inputs) const {
  const auto& p = params_;
  const Layout L(p);
  const RowMap W1(x.data() + L.w1, p.hidden1, p.input_dim);
  const RowMap W2(x.data() + L.w2, p.hidden2, p.hidden1);
  Forward fw;
  fw.a1 = inputs * W1.transpose();
  fw.a1.rowwise() += x.segment(L.b1, p.hidden1).transpose();
  fw.h1 = fw.a1.cwiseMax(0.0);
  fw.a2 = fw.h1 * W2.transpose();
  fw.a2.rowwise() += x.segment(L.b2, p.hidden2).transpose();
  fw.h2 = fw.a2.cwiseMax(0.0);
  fw.out = fw.h2 * x.segment(L.w3, p.hidden2);
  fw.out.array() += x[L.b3];
  return fw;
}

void RobustRegression::backward(const Vec& x, const Mat& inputs, const Forward& fw, const Vec& dout,
                                Vec& gx) const {
  const auto& p = params_;
  const Layout L(p);
  const RowMap W2(x.data() + L.w2, p.hidden2, p.hidden1);
  gx.segment(L.w3, p.hidden2).noalias() += fw.h2.transpose() * dout;
  gx[L.b3] += dout.sum();
  Mat d2 = dout * x.segment(L.w3, p.hidden2).transpose();
  d2.array() *= (fw.a2.array() > 0.0).cast<double>();
  RowMapMut(gx.data() + L.w2, p.hidden2, p.hidden1).noalias() += d2.transpose() * fw.h1;
  gx.segment(L.b2, p.hidden2).noalias() += d2.colwise().sum().transpose();
  Mat d1 = d2 * W2;
  d1.array() *= (fw.a1.array() > 0.0).cast<double>();
  RowMapMut(gx.data() + L.w1, p.hidden1, p.input_dim).noalias() += d1.transpose() * inputs;
  gx.segment(L.b1, p.hidden1).noalias() += d1.colwise().sum().transpose();
}

Vec RobustRegression::predict(const Vec& x) const { return forward(x, data_.inputs).out; }

double RobustRegression::value(const Vec& x, const Vec& y) const {
  const Vec out = predict(x);
  return 0.5 * (out - y).squaredNorm() / static_cast<double>(params_.n) -
         0.5 * params_.lambda * (y - data_.targets).squaredNorm();
}

void RobustRegression::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  const Forward fw = forward(x, data_.inputs);
  const double inv_n = 1.0 / static_cast<double>(params_.n);
  const Vec resid = fw.out - y;
  gx = Vec::Zero(dim_x());
  backward(x, data_.inputs, fw, resid * inv_n, gx);
  gy = -inv_n * resid - params_.lambda * (y - data_.targets);
}

void RobustRegression::sample_gradient(const Vec& x, const Vec& y, RandomStream& rng, Vec& gx,
                                       Vec& gy) const {
  if (params_.batch_size == 0) {
    gradient(x, y, gx, gy);
    return;
  }
  const Index b = params_.batch_size;
  std::vector<Index> idx(static_cast<std::size_t>(b));
  for (auto& i : idx) i = static_cast<Index>(rng.index(static_cast<std::uint64_t>(params_.n)));
  Mat rows(b, params_.input_dim);
  Vec yb(b);
  for (Index k = 0; k < b; ++k) {
    rows.row(k) = data_.inputs.row(idx[k]);
    yb[k] = y[idx[k]];
  }
  const Forward fw = forward(x, rows);
  const Vec resid = fw.out - yb;
  const double inv_b = 1.0 / static_cast<double>(b);
  gx = Vec::Zero(dim_x());
  backward(x, rows, fw, resid * inv_b, gx);
  gy = -params_.lambda * (y - data_.targets);
  for (Index k = 0; k < b; ++k) gy[idx[k]] -= inv_b * resid[k];
}

bool RobustRegression::has(ClosedForm which) const {
  switch (which) {
    case ClosedForm::kYStar:
    case ClosedForm::kPhi:
    case ClosedForm::kGradPhi: return true;
    default: return false;
  }
}

Vec RobustRegression::y_star(const Vec& x) const {
  const double inv_n = 1.0 / static_cast<double>(params_.n);
  return (params_.lambda * data_.targets - inv_n * predict(x)) / (params_.lambda - inv_n);
}

double RobustRegression::phi(const Vec& x) const { return value(x, y_star(x)); }

double RobustRegression::kink_distance(const Point& p) const {
  const Forward fw = forward(p.x, data_.inputs);
  return std::min(fw.a1.cwiseAbs().minCoeff(), fw.a2.cwiseAbs().minCoeff());
}

Point RobustRegression::initial_point() const {
  const auto& p = params_;
  const Layout L(p);
  RandomStream rng(p.seed, StreamId::kInit);
  Vec x = Vec::Zero(dim_x());
  const double s1 = std::sqrt(2.0 / static_cast<double>(p.input_dim));
  const double s2 = std::sqrt(2.0 / static_cast<double>(p.hidden1));
  const double s3 = std::sqrt(1.0 / static_cast<double>(p.hidden2));
  for (Index k = 0; k < p.hidden1 * p.input_dim; ++k) x[L.w1 + k] = s1 * rng.normal();
  for (Index k = 0; k < p.hidden2 * p.hidden1; ++k) x[L.w2 + k] = s2 * rng.normal();
  for (Index k = 0; k < p.hidden2; ++k) x[L.w3 + k] = s3 * rng.normal();
  return {x, data_.targets};
}

}  // namespace ncpl
