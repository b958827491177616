#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tpmab/engine.hpp"
#include "tpmab/environments.hpp"

namespace tpmab {

// Inline synthetic environment description, an alternative to a scenario id.
struct InlineEnvConfig {
  int num_arms = 0;
  int64_t tau_max = 0;
  int alpha = 0;
  std::vector<double> max_rewards;
  std::vector<double> beta_a;  // length alpha, shared across arms; empty = uniform
  std::vector<double> beta_b;
  bool point_mass = false;
};

struct PolicyEntry {
  std::string name;
  std::optional<int> eta;
};

struct ExperimentConfig {
  int version = 1;
  std::string scenario;                       // exactly one of scenario /
  std::optional<InlineEnvConfig> environment;  // environment / pool
  std::string pool_path;
  std::vector<PolicyEntry> policies;
  int64_t horizon = 0;
  int runs = 1;
  uint64_t base_seed = 0;
  int workers = 0;
  bool shared_randomness = true;
  bool matched_log = false;
  std::string split = "random-simplex";
  std::string checkpoints = "standard";  // or "every:<step>"
};

// Strict parse: unknown keys anywhere are ConfigError with the field path.
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

std::unique_ptr<Environment> build_environment(const ExperimentConfig& config);
std::vector<PolicyConfig> build_policies(const ExperimentConfig& config,
                                         const SmoothnessSpec& spec);
ReplicationConfig build_replication(const ExperimentConfig& config,
                                    const SmoothnessSpec& spec);

// 64-bit FNV-1a of the canonical serialized config, as a hex string.
std::string config_hash(const std::string& canonical_text);
std::string canonical_config_text(const std::string& path);

}  // namespace tpmab
