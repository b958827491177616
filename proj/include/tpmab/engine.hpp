#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpmab/environments.hpp"
#include "tpmab/policies.hpp"

namespace tpmab {

// Regret is recorded on this grid: every round up to 1000, then every 100
// rounds, always including T. Keeps outputs small at long horizons.
struct CheckpointGrid {
  std::vector<int64_t> rounds;

  static CheckpointGrid standard(int64_t T);
  static CheckpointGrid every(int64_t step, int64_t T);
};

// Active pulls with their remaining per-round values. At round m the queue
// releases one value per pull with m - t + 1 in [1, tau_max]; a pull retires
// after tau_max deliveries. In clairvoyant mode the whole cumulative reward
// is released at the pull round instead.
class DeliveryQueue {
 public:
  DeliveryQueue(int64_t tau_max, bool clairvoyant);

  void push(int64_t t, int arm, const std::vector<double>& values);
  void deliver(int64_t t, std::vector<Delivery>& out);

 private:
  struct Slot {
    int64_t round = -1;
    int arm = -1;
    std::vector<double> values;
  };
  int64_t tau_max_;
  bool clairvoyant_;
  std::vector<Slot> ring_;
};

struct EpisodeConfig {
  PolicyConfig policy;
  int64_t horizon = 0;
  uint64_t base_seed = 0;
  uint64_t run_index = 0;
  uint64_t policy_salt = 0;  // 0 under shared randomness
  bool matched_log = false;
};

struct RegretTrajectory {
  std::vector<double> regret;       // cumulative pseudo-regret at each checkpoint
  std::vector<int64_t> pull_counts;  // N_i(T)
  uint64_t seed = 0;
  std::vector<int> arm_sequence;  // filled only when requested

  double final_regret() const { return regret.empty() ? 0.0 : regret.back(); }
};

RegretTrajectory run_episode(const Environment& env, const EpisodeConfig& config,
                             const CheckpointGrid& grid, bool keep_arm_sequence = false);

struct ReplicationConfig {
  std::vector<PolicyConfig> policies;
  int64_t horizon = 0;
  int runs = 0;
  uint64_t base_seed = 0;
  int workers = 0;  // 0 = hardware concurrency, 1 = serial
  bool shared_randomness = true;
  bool matched_log = false;
  int64_t checkpoint_step = 0;  // 0 = the standard grid
};

struct PolicyAggregate {
  PolicyConfig policy;
  std::string label;
  std::vector<double> mean_regret;    // per checkpoint
  std::vector<double> ci_half_width;  // 95% Student-t, per checkpoint
  double final_regret = 0.0;
  double final_ci_half_width = 0.0;
  std::optional<double> regret_percent;  // vs the Delayed-UCB1 reference
  std::vector<double> final_per_run;
};

struct AggregateResult {
  CheckpointGrid grid;
  int runs = 0;
  std::vector<PolicyAggregate> policies;
};

// OpenMP-parallel across (policy, run) episodes; the fold into means and
// confidence intervals is sequential with a fixed order, so results are
// bit-identical for any worker count.
AggregateResult replicate(const Environment& env, const ReplicationConfig& config);

// Plain-loop reference implementation used by tests and the benchmark.
AggregateResult replicate_serial(const Environment& env, const ReplicationConfig& config);

double student_t_quantile_975(int degrees_of_freedom);

}  // namespace tpmab
