#include "tpmab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tpmab/ingest.hpp"

namespace tpmab {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      fail(ErrorCode::ConfigError, "unknown key '" + path + key + "'");
    }
  }
}

template <typename T>
T get_or(const json& obj, const std::string& key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::ConfigError, "bad value for '" + path + key + "'");
  }
}

std::vector<double> get_double_vector(const json& obj, const std::string& key,
                                      const std::string& path) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  try {
    out = obj.at(key).get<std::vector<double>>();
  } catch (const json::exception&) {
    fail(ErrorCode::ConfigError, "'" + path + key + "' must be a number array");
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail(ErrorCode::ConfigError, "config must be a JSON object");
  require_keys(root, "",
               {"version", "scenario", "environment", "pool", "policies", "horizon",
                "runs", "base_seed", "workers", "shared_randomness", "matched_log",
                "split", "checkpoints"});

  ExperimentConfig config;
  config.version = get_or<int>(root, "version", "", 0);
  if (config.version != 1) {
    fail(ErrorCode::ConfigError, "unsupported config version (want \"version\": 1)");
  }
  config.scenario = get_or<std::string>(root, "scenario", "", "");
  config.pool_path = get_or<std::string>(root, "pool", "", "");
  config.horizon = get_or<int64_t>(root, "horizon", "", 0);
  config.runs = get_or<int>(root, "runs", "", 1);
  config.base_seed = get_or<uint64_t>(root, "base_seed", "", 0);
  config.workers = get_or<int>(root, "workers", "", 0);
  config.shared_randomness = get_or<bool>(root, "shared_randomness", "", true);
  config.matched_log = get_or<bool>(root, "matched_log", "", false);
  config.split = get_or<std::string>(root, "split", "", "random-simplex");
  config.checkpoints = get_or<std::string>(root, "checkpoints", "", "standard");

  if (root.contains("environment")) {
    const json& env = root.at("environment");
    if (!env.is_object()) fail(ErrorCode::ConfigError, "'environment' must be an object");
    require_keys(env, "environment.",
                 {"num_arms", "tau_max", "alpha", "max_rewards", "beta_a", "beta_b",
                  "point_mass"});
    InlineEnvConfig inline_env;
    inline_env.num_arms = get_or<int>(env, "num_arms", "environment.", 0);
    inline_env.tau_max = get_or<int64_t>(env, "tau_max", "environment.", 0);
    inline_env.alpha = get_or<int>(env, "alpha", "environment.", 0);
    inline_env.max_rewards = get_double_vector(env, "max_rewards", "environment.");
    inline_env.beta_a = get_double_vector(env, "beta_a", "environment.");
    inline_env.beta_b = get_double_vector(env, "beta_b", "environment.");
    inline_env.point_mass = get_or<bool>(env, "point_mass", "environment.", false);
    config.environment = std::move(inline_env);
  }

  if (!root.contains("policies") || !root.at("policies").is_array() ||
      root.at("policies").empty()) {
    fail(ErrorCode::ConfigError, "'policies' must be a non-empty array");
  }
  size_t index = 0;
  for (const json& entry : root.at("policies")) {
    const std::string path = "policies[" + std::to_string(index) + "].";
    if (!entry.is_object()) fail(ErrorCode::ConfigError, path + " must be an object");
    require_keys(entry, path, {"name", "eta"});
    PolicyEntry pe;
    pe.name = get_or<std::string>(entry, "name", path, "");
    if (entry.contains("eta")) pe.eta = get_or<int>(entry, "eta", path, 1);
    if (pe.name.empty()) fail(ErrorCode::ConfigError, path + "name is required");
    config.policies.push_back(std::move(pe));
    ++index;
  }

  const int sources = (config.scenario.empty() ? 0 : 1) + (config.environment ? 1 : 0) +
                      (config.pool_path.empty() ? 0 : 1);
  if (sources != 1) {
    fail(ErrorCode::ConfigError,
         "exactly one of 'scenario', 'environment', 'pool' must be given");
  }
  if (config.horizon < 1) fail(ErrorCode::ConfigError, "'horizon' must be >= 1");
  if (config.runs < 1) fail(ErrorCode::ConfigError, "'runs' must be >= 1");
  if (config.checkpoints != "standard" &&
      config.checkpoints.rfind("every:", 0) != 0) {
    fail(ErrorCode::ConfigError, "'checkpoints' must be 'standard' or 'every:<step>'");
  }
  split_strategy_from_name(config.split);
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  return parse_config(canonical_config_text(path));
}

std::string canonical_config_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::unique_ptr<Environment> build_environment(const ExperimentConfig& config) {
  const SplitStrategy split = split_strategy_from_name(config.split);
  if (!config.scenario.empty()) {
    return scenario_library(config.scenario, split);
  }
  if (config.environment) {
    const InlineEnvConfig& e = *config.environment;
    SmoothnessSpec spec = validate_spec(e.num_arms, e.tau_max, e.alpha, e.max_rewards);
    std::vector<double> a = e.beta_a.empty() ? std::vector<double>(e.alpha, 1.0) : e.beta_a;
    std::vector<double> b = e.beta_b.empty() ? std::vector<double>(e.alpha, 1.0) : e.beta_b;
    if (static_cast<int>(a.size()) != e.alpha || static_cast<int>(b.size()) != e.alpha) {
      fail(ErrorCode::ConfigError, "beta_a/beta_b must have length alpha");
    }
    std::vector<std::vector<double>> a_all(e.num_arms, a), b_all(e.num_arms, b);
    return std::make_unique<SyntheticEnv>(std::move(spec), std::move(a_all),
                                          std::move(b_all), split, e.point_mass);
  }
  SessionPool pool = load_pool_file(config.pool_path);
  return std::make_unique<ReplayEnv>(pool.spec, std::move(pool.vectors));
}

std::vector<PolicyConfig> build_policies(const ExperimentConfig& config,
                                         const SmoothnessSpec& spec) {
  std::vector<PolicyConfig> policies;
  for (const PolicyEntry& entry : config.policies) {
    PolicyConfig pc;
    if (entry.name == "ucb1") {
      pc.kind = PolicyKind::Ucb1;
    } else if (entry.name == "delayed-ucb1") {
      pc.kind = PolicyKind::DelayedUcb1;
    } else if (entry.name == "tp-ucb-fr") {
      pc.kind = PolicyKind::TpUcbFr;
    } else if (entry.name == "tp-ucb-ew") {
      pc.kind = PolicyKind::TpUcbEw;
    } else {
      fail(ErrorCode::ConfigError, "unknown policy '" + entry.name + "'");
    }
    if (pc.kind == PolicyKind::TpUcbFr || pc.kind == PolicyKind::TpUcbEw) {
      pc.eta = entry.eta.value_or(spec.alpha);
    } else {
      pc.eta = 1;
    }
    policies.push_back(pc);
  }
  return policies;
}

ReplicationConfig build_replication(const ExperimentConfig& config,
                                    const SmoothnessSpec& spec) {
  if (config.horizon < std::max<int64_t>(spec.num_arms, spec.horizon_tau)) {
    fail(ErrorCode::ConfigError, "horizon must be >= max(K, tau_max)");
  }
  ReplicationConfig rc;
  rc.policies = build_policies(config, spec);
  rc.horizon = config.horizon;
  rc.runs = config.runs;
  rc.base_seed = config.base_seed;
  rc.workers = config.workers;
  rc.shared_randomness = config.shared_randomness;
  rc.matched_log = config.matched_log;
  if (config.checkpoints.rfind("every:", 0) == 0) {
    try {
      rc.checkpoint_step = std::stoll(config.checkpoints.substr(6));
    } catch (...) {
      rc.checkpoint_step = 0;
    }
    if (rc.checkpoint_step < 1) {
      fail(ErrorCode::ConfigError, "'checkpoints' step must be a positive integer");
    }
  }
  return rc;
}

std::string config_hash(const std::string& canonical_text) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tpmab
