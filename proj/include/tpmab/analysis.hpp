#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tpmab/environments.hpp"

namespace tpmab {

// Kullback-Leibler divergence between Bernoulli(p) and Bernoulli(q), with the
// 0 ln 0 = 0 convention. q in {0, 1} is only valid when p == q.
double kl_bernoulli(double p, double q);

// Inputs to the closed-form regret curves: suboptimal arms only.
struct BoundInputs {
  std::vector<double> gaps;  // Delta_i > 0
  std::vector<double> rbar;  // matching max rewards
  std::vector<double> mu;    // matching true means
  double mu_star = 0.0;
  double rbar_max = 0.0;  // max over all arms, optimal included
  int alpha = 1;
  int64_t phi = 1;
  int64_t tau_max = 1;
};

// Builds BoundInputs from an environment instance, dropping arms with
// Delta_i <= 0 (the bound sums run over suboptimal arms only).
BoundInputs make_bound_inputs(const Environment& env);

// Asymptotic lower-bound coefficient times ln T. with_smoothness divides by
// alpha; the smooth curve is exactly the plain curve / alpha.
std::vector<double> lower_bound_curve(const BoundInputs& inputs, bool with_smoothness,
                                      std::span<const int64_t> horizon_grid);

double fr_upper_bound(const BoundInputs& inputs, int64_t T);
double ew_upper_bound(const BoundInputs& inputs, int64_t T);

struct BaselineBounds {
  double ucb1 = 0.0;
  double delayed = 0.0;
};
BaselineBounds baseline_upper_bounds(const BoundInputs& inputs, int64_t T);

// beta = (mu*/Rbar_max)(1 - mu*/Rbar_max) and the per-arm alpha threshold
// 4 (Rbar^i)^2 / beta above which the smooth upper bound beats the plain
// lower-bound coefficient.
double beta_constant(const BoundInputs& inputs);
std::vector<double> alpha_improvement_thresholds(const BoundInputs& inputs);

}  // namespace tpmab
