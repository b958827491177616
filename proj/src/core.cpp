#include "tpmab/core.hpp"

#include <algorithm>
#include <string>

namespace tpmab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonDivisorAlpha: return "NonDivisorAlpha";
    case ErrorCode::NonPositiveDimension: return "NonPositiveDimension";
    case ErrorCode::NegativeMaxReward: return "NegativeMaxReward";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::FuturePull: return "FuturePull";
    case ErrorCode::DuplicateDelivery: return "DuplicateDelivery";
    case ErrorCode::UnknownPull: return "UnknownPull";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::HorizonTooShort: return "HorizonTooShort";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonPositiveGap: return "NonPositiveGap";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::BadPosition: return "BadPosition";
    case ErrorCode::NoPlaylists: return "NoPlaylists";
    case ErrorCode::EmptyArm: return "EmptyArm";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::CorruptPool: return "CorruptPool";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

SmoothnessSpec validate_spec(int num_arms, int64_t tau_max, int alpha,
                             std::vector<double> max_reward) {
  if (num_arms < 1 || tau_max < 1 || alpha < 1) {
    fail(ErrorCode::NonPositiveDimension,
         "num_arms, tau_max and alpha must all be >= 1");
  }
  if (alpha > tau_max) {
    fail(ErrorCode::NonDivisorAlpha,
         "alpha=" + std::to_string(alpha) + " exceeds tau_max=" + std::to_string(tau_max));
  }
  if (tau_max % alpha != 0) {
    fail(ErrorCode::NonDivisorAlpha,
         "alpha=" + std::to_string(alpha) + " does not divide tau_max=" +
             std::to_string(tau_max));
  }
  if (static_cast<int>(max_reward.size()) != num_arms) {
    fail(ErrorCode::LengthMismatch, "max_reward must have one entry per arm");
  }
  for (double r : max_reward) {
    if (r < 0.0) fail(ErrorCode::NegativeMaxReward, "max_reward entries must be >= 0");
  }
  SmoothnessSpec spec;
  spec.num_arms = num_arms;
  spec.horizon_tau = tau_max;
  spec.alpha = alpha;
  spec.phi = tau_max / alpha;
  spec.max_reward = std::move(max_reward);
  return spec;
}

double cumulative_reward(const RewardVector& v) {
  double total = 0.0;
  for (double x : v.values) total += x;
  return total;
}

AggregatedRewardVector aggregate(const RewardVector& v, const SmoothnessSpec& spec) {
  if (static_cast<int64_t>(v.values.size()) != spec.horizon_tau) {
    fail(ErrorCode::LengthMismatch, "reward vector length != tau_max");
  }
  AggregatedRewardVector out;
  out.arm = v.arm;
  out.z.resize(spec.alpha);
  for (int k = 0; k < spec.alpha; ++k) {
    double s = 0.0;
    for (int64_t j = k * spec.phi; j < (k + 1) * spec.phi; ++j) s += v.values[j];
    out.z[k] = s;
  }
  return out;
}

int64_t observed_prefix_at(int64_t pull_round, int64_t now, int64_t tau_max) {
  return std::clamp<int64_t>(now - pull_round + 1, 0, tau_max);
}

double fictitious_cumulative(const PullRecord& p, int64_t now, int64_t tau_max) {
  if (p.pull_round > now) {
    fail(ErrorCode::FuturePull, "pull at round " + std::to_string(p.pull_round) +
                                    " observed at round " + std::to_string(now));
  }
  int64_t prefix = observed_prefix_at(p.pull_round, now, tau_max);
  prefix = std::min<int64_t>(prefix, static_cast<int64_t>(p.reward.values.size()));
  double total = 0.0;
  for (int64_t j = 0; j < prefix; ++j) total += p.reward.values[j];
  return total;
}

void check_reward_vector(const RewardVector& v, const SmoothnessSpec& spec,
                         bool require_smooth) {
  if (static_cast<int64_t>(v.values.size()) != spec.horizon_tau) {
    fail(ErrorCode::LengthMismatch, "reward vector length != tau_max");
  }
  if (v.arm < 0 || v.arm >= spec.num_arms) {
    fail(ErrorCode::LengthMismatch, "arm index out of range");
  }
  for (double x : v.values) {
    if (x < 0.0) fail(ErrorCode::NegativeMaxReward, "per-round reward < 0");
  }
  const double rbar = spec.max_reward[v.arm];
  if (cumulative_reward(v) > rbar + 1e-9) {
    fail(ErrorCode::NegativeMaxReward, "cumulative reward exceeds max_reward");
  }
  if (require_smooth) {
    const double cap = spec.bucket_cap(v.arm) + 1e-12;
    AggregatedRewardVector agg = aggregate(v, spec);
    for (double z : agg.z) {
      if (z > cap) {
        fail(ErrorCode::NegativeMaxReward, "bucket sum exceeds max_reward/alpha");
      }
    }
  }
}

}  // namespace tpmab
