#include "tpmab/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace tpmab {

namespace {
constexpr double kPiSquaredThird = 3.2898681336964528729448303332921;  // pi^2 / 3

void check_gaps(const BoundInputs& inputs) {
  if (inputs.gaps.size() != inputs.rbar.size()) {
    fail(ErrorCode::LengthMismatch, "gaps and rbar must align");
  }
  for (double gap : inputs.gaps) {
    if (gap <= 0.0) fail(ErrorCode::NonPositiveGap, "bound inputs require Delta_i > 0");
  }
}

double log_horizon(int64_t T) {
  return T > 1 ? std::log(static_cast<double>(T)) : 0.0;
}
}  // namespace

double kl_bernoulli(double p, double q) {
  if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0) {
    fail(ErrorCode::DomainError, "kl_bernoulli arguments must lie in [0,1]");
  }
  if (q == 0.0 || q == 1.0) {
    if (p == q) return 0.0;
    fail(ErrorCode::DomainError, "kl_bernoulli(q in {0,1}) diverges unless p == q");
  }
  double total = 0.0;
  if (p > 0.0) total += p * std::log(p / q);
  if (p < 1.0) total += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return total;
}

BoundInputs make_bound_inputs(const Environment& env) {
  const SmoothnessSpec& spec = env.spec();
  const std::vector<double> mu = env.true_means();
  BoundInputs inputs;
  inputs.mu_star = *std::max_element(mu.begin(), mu.end());
  inputs.rbar_max = *std::max_element(spec.max_reward.begin(), spec.max_reward.end());
  inputs.alpha = spec.alpha;
  inputs.phi = spec.phi;
  inputs.tau_max = spec.horizon_tau;
  for (int arm = 0; arm < spec.num_arms; ++arm) {
    const double gap = inputs.mu_star - mu[arm];
    if (gap <= 0.0) continue;
    inputs.gaps.push_back(gap);
    inputs.rbar.push_back(spec.max_reward[arm]);
    inputs.mu.push_back(mu[arm]);
  }
  return inputs;
}

std::vector<double> lower_bound_curve(const BoundInputs& inputs, bool with_smoothness,
                                      std::span<const int64_t> horizon_grid) {
  check_gaps(inputs);
  double coeff = 0.0;
  for (size_t i = 0; i < inputs.gaps.size(); ++i) {
    coeff += inputs.gaps[i] /
             kl_bernoulli(inputs.mu[i] / inputs.rbar_max, inputs.mu_star / inputs.rbar_max);
  }
  std::vector<double> out;
  out.reserve(horizon_grid.size());
  for (int64_t T : horizon_grid) {
    const double plain = coeff * log_horizon(T);
    out.push_back(with_smoothness ? plain / inputs.alpha : plain);
  }
  return out;
}

double fr_upper_bound(const BoundInputs& inputs, int64_t T) {
  check_gaps(inputs);
  const double lnT = log_horizon(T);
  const double alpha = inputs.alpha;
  const double phi = static_cast<double>(inputs.phi);
  double total = 0.0;
  for (size_t i = 0; i < inputs.gaps.size(); ++i) {
    const double rbar = inputs.rbar[i];
    const double gap = inputs.gaps[i];
    if (lnT > 0.0) {
      total += 4.0 * rbar * rbar * lnT / (alpha * gap) *
               (1.0 + std::sqrt(1.0 + alpha * (alpha + 1.0) * phi * gap / (2.0 * rbar * lnT)));
    }
    total += (alpha + 1.0) * phi * rbar;
    total += (1.0 + kPiSquaredThird) * gap;
  }
  return total;
}

double ew_upper_bound(const BoundInputs& inputs, int64_t T) {
  check_gaps(inputs);
  const double lnT = log_horizon(T);
  const double alpha = inputs.alpha;
  const double phi = static_cast<double>(inputs.phi);
  double total = 0.0;
  for (size_t i = 0; i < inputs.gaps.size(); ++i) {
    total += 8.0 * inputs.rbar[i] * inputs.rbar[i] * lnT / inputs.gaps[i];
    total += alpha * (phi + kPiSquaredThird) * inputs.gaps[i];
  }
  return total;
}

BaselineBounds baseline_upper_bounds(const BoundInputs& inputs, int64_t T) {
  check_gaps(inputs);
  const double lnT = log_horizon(T);
  BaselineBounds bounds;
  for (size_t i = 0; i < inputs.gaps.size(); ++i) {
    const double dominant = 8.0 * inputs.rbar[i] * inputs.rbar[i] * lnT / inputs.gaps[i];
    bounds.ucb1 += dominant + (1.0 + kPiSquaredThird) * inputs.gaps[i];
    bounds.delayed += dominant + (1.0 + kPiSquaredThird + static_cast<double>(inputs.tau_max)) *
                                     inputs.gaps[i];
  }
  return bounds;
}

double beta_constant(const BoundInputs& inputs) {
  const double ratio = inputs.mu_star / inputs.rbar_max;
  return ratio * (1.0 - ratio);
}

std::vector<double> alpha_improvement_thresholds(const BoundInputs& inputs) {
  const double beta = beta_constant(inputs);
  std::vector<double> thresholds;
  thresholds.reserve(inputs.rbar.size());
  for (double rbar : inputs.rbar) {
    thresholds.push_back(4.0 * rbar * rbar / beta);
  }
  return thresholds;
}

}  // namespace tpmab
