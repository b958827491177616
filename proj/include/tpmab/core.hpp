#pragma once

#include <cstdint>
#include <vector>

#include "tpmab/errors.hpp"

namespace tpmab {

// Arms are indexed 0..K-1 throughout the codebase; rounds are 1-based.

// Reward structure of an environment: K arms, rewards partitioned over
// tau_max rounds, alpha equal-length buckets of phi = tau_max / alpha rounds,
// each bucket sum capped at max_reward[i] / alpha.
struct SmoothnessSpec {
  int num_arms = 0;
  int64_t horizon_tau = 0;  // tau_max
  int alpha = 0;
  int64_t phi = 0;
  std::vector<double> max_reward;  // per arm

  double bucket_cap(int arm) const { return max_reward[arm] / alpha; }
};

SmoothnessSpec validate_spec(int num_arms, int64_t tau_max, int alpha,
                             std::vector<double> max_reward);

// The tau_max per-round rewards realized by one pull.
struct RewardVector {
  int arm = 0;
  int64_t pull_round = 0;
  std::vector<double> values;
};

struct AggregatedRewardVector {
  int arm = 0;
  std::vector<double> z;  // length alpha
};

// One pull plus how much of its reward vector has been revealed so far.
// observed_prefix = clamp(now - pull_round + 1, 0, tau_max): entry j (1-based)
// is revealed at round pull_round + j - 1.
struct PullRecord {
  int arm = 0;
  int64_t pull_round = 0;
  RewardVector reward;
  int64_t observed_prefix = 0;
};

double cumulative_reward(const RewardVector& v);

AggregatedRewardVector aggregate(const RewardVector& v, const SmoothnessSpec& spec);

// Sum of the revealed prefix only; equals cumulative_reward once
// now >= pull_round + tau_max - 1.
double fictitious_cumulative(const PullRecord& p, int64_t now, int64_t tau_max);

int64_t observed_prefix_at(int64_t pull_round, int64_t now, int64_t tau_max);

// Checks entries >= 0, total <= max_reward, and (when require_smooth) every
// bucket sum <= max_reward / alpha. Tolerances: 1e-9 on the total, 1e-12 on
// bucket caps.
void check_reward_vector(const RewardVector& v, const SmoothnessSpec& spec,
                         bool require_smooth = true);

}  // namespace tpmab
