#include "ncpl/stepsizes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncpl/errors.hpp"

namespace ncpl {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("stepsize constructor: ") + name + " must be positive and finite");
  }
}

void check_inputs(double l, double mu, double sigma, double T, double Delta) {
  require_positive(l, "l");
  require_positive(mu, "mu");
  require_positive(T, "T");
  require_positive(Delta, "Delta");
  if (mu > l) throw ConfigError("stepsize constructor: mu must not exceed l (kappa >= 1)");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("stepsize constructor: sigma must be nonnegative and finite");
  }
}

}  // namespace

StepSizes theorem1_stepsizes(double l, double mu, double sigma, double T, double Delta) {
  check_inputs(l, mu, sigma, T, Delta);
  const double kappa = l / mu;
  const double k2 = kappa * kappa;
  StepSizes s;
  s.tau1 = 1.0 / (68.0 * l * k2);
  s.tau2 = 1.0 / l;
  if (sigma > 0.0) {
    const double root = std::sqrt(Delta) / std::sqrt(T * l);
    s.tau1 = std::min(root / (4.0 * sigma * k2), s.tau1);
    s.tau2 = std::min(17.0 * root / sigma, s.tau2);
  }
  return s;
}

StepSizes theorem2_stepsizes(double l, double mu, double sigma, double T, double Delta) {
  check_inputs(l, mu, sigma, T, Delta);
  StepSizes s;
  s.tau1 = 1.0 / (3.0 * l);
  s.tau2 = 1.0 / (144.0 * l);
  if (sigma > 0.0) {
    const double root = std::sqrt(Delta) / std::sqrt(T * l);
    s.tau1 = std::min(root / (2.0 * sigma), s.tau1);
    s.tau2 = std::min(root / (96.0 * sigma), s.tau2);
  }
  s.p = 2.0 * l;
  s.beta = s.tau2 * mu / 1600.0;
  return s;
}

StepSizes catalyst_inner_stepsizes(double l) {
  require_positive(l, "l");
  return {1.0 / (3.0 * l), 1.0 / (486.0 * l), 0.0, 1.0};
}

double catalyst_stop_factor(double kappa) {
  require_positive(kappa, "kappa");
  const double k2 = kappa * kappa;
  return 1.0 / (264.0 * k2 * k2);
}

}  // namespace ncpl
