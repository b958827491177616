#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tpmab/core.hpp"
#include "tpmab/rng.hpp"

namespace tpmab {

enum class SplitStrategy { RandomSimplex, Equal, Terminal };

SplitStrategy split_strategy_from_name(const std::string& name);
const char* split_strategy_name(SplitStrategy s);

// Reward generators are immutable after construction; draws depend only on
// the caller-supplied stream key, so concurrent episodes never contend and
// identical keys reproduce identical vectors.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual const SmoothnessSpec& spec() const = 0;
  virtual std::vector<double> true_means() const = 0;
  // Fills out (resized to tau_max) with the per-round rewards of one pull.
  virtual void draw(const StreamKey& key, int arm, std::vector<double>& out) const = 0;
};

// Bucket values Z_k ~ (max_reward/alpha) * Beta(a_k, b_k), spread over the
// phi rounds of the bucket by the configured split strategy. point_mass
// replaces each draw by its mean (a deterministic environment).
class SyntheticEnv : public Environment {
 public:
  SyntheticEnv(SmoothnessSpec spec, std::vector<std::vector<double>> beta_a,
               std::vector<std::vector<double>> beta_b, SplitStrategy split,
               bool point_mass = false);

  const SmoothnessSpec& spec() const override { return spec_; }
  std::vector<double> true_means() const override;
  void draw(const StreamKey& key, int arm, std::vector<double>& out) const override;

  SplitStrategy split() const { return split_; }
  double shape_a(int arm, int k) const { return beta_a_[arm][k]; }
  double shape_b(int arm, int k) const { return beta_b_[arm][k]; }

 private:
  SmoothnessSpec spec_;
  std::vector<std::vector<double>> beta_a_;  // per arm, per bucket
  std::vector<std::vector<double>> beta_b_;
  SplitStrategy split_;
  bool point_mass_;
};

// Samples stored reward vectors uniformly with replacement from per-arm pools.
class ReplayEnv : public Environment {
 public:
  ReplayEnv(SmoothnessSpec spec, std::vector<std::vector<RewardVector>> pools);

  const SmoothnessSpec& spec() const override { return spec_; }
  std::vector<double> true_means() const override { return means_; }
  void draw(const StreamKey& key, int arm, std::vector<double>& out) const override;

  size_t pool_size(int arm) const { return pools_[arm].size(); }

 private:
  SmoothnessSpec spec_;
  std::vector<std::vector<RewardVector>> pools_;
  std::vector<double> means_;  // pool empirical means of the cumulative reward
};

// Exact parameterizations of the synthetic experimental settings.
std::unique_ptr<SyntheticEnv> scenario_library(
    const std::string& name, SplitStrategy split = SplitStrategy::RandomSimplex);

std::vector<std::string> scenario_names();

}  // namespace tpmab
