#include "tpmab/engine.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tpmab {

CheckpointGrid CheckpointGrid::standard(int64_t T) {
  CheckpointGrid grid;
  for (int64_t t = 1; t <= std::min<int64_t>(T, 1000); ++t) grid.rounds.push_back(t);
  for (int64_t t = 1100; t <= T; t += 100) grid.rounds.push_back(t);
  if (grid.rounds.empty() || grid.rounds.back() != T) grid.rounds.push_back(T);
  return grid;
}

CheckpointGrid CheckpointGrid::every(int64_t step, int64_t T) {
  CheckpointGrid grid;
  for (int64_t t = step; t <= T; t += step) grid.rounds.push_back(t);
  if (grid.rounds.empty() || grid.rounds.back() != T) grid.rounds.push_back(T);
  return grid;
}

DeliveryQueue::DeliveryQueue(int64_t tau_max, bool clairvoyant)
    : tau_max_(tau_max), clairvoyant_(clairvoyant),
      ring_(static_cast<size_t>(tau_max)) {}

void DeliveryQueue::push(int64_t t, int arm, const std::vector<double>& values) {
  Slot& slot = ring_[static_cast<size_t>(t % tau_max_)];
  slot.round = t;
  slot.arm = arm;
  slot.values = values;
}

void DeliveryQueue::deliver(int64_t t, std::vector<Delivery>& out) {
  out.clear();
  if (clairvoyant_) {
    Slot& slot = ring_[static_cast<size_t>(t % tau_max_)];
    if (slot.round != t) return;
    double total = 0.0;
    for (double v : slot.values) total += v;
    out.push_back({t, slot.arm, tau_max_, total, true});
    slot.round = -1;
    return;
  }
  const int64_t first = std::max<int64_t>(1, t - tau_max_ + 1);
  for (int64_t h = first; h <= t; ++h) {
    const Slot& slot = ring_[static_cast<size_t>(h % tau_max_)];
    if (slot.round != h) continue;
    const int64_t j = t - h + 1;
    out.push_back({h, slot.arm, j, slot.values[static_cast<size_t>(j - 1)], false});
  }
}

RegretTrajectory run_episode(const Environment& env, const EpisodeConfig& config,
                             const CheckpointGrid& grid, bool keep_arm_sequence) {
  const SmoothnessSpec& spec = env.spec();
  const int64_t T = config.horizon;
  if (T < spec.num_arms) {
    fail(ErrorCode::HorizonTooShort, "horizon shorter than the number of arms");
  }
  if (config.policy.kind == PolicyKind::DelayedUcb1 && T < spec.horizon_tau) {
    fail(ErrorCode::HorizonTooShort, "Delayed-UCB1 needs T >= tau_max");
  }

  const std::vector<double> mu = env.true_means();
  const double mu_star = *std::max_element(mu.begin(), mu.end());
  std::vector<double> gap(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) gap[i] = mu_star - mu[i];

  PolicyState state(config.policy.kind, spec, config.policy.eta, config.matched_log);
  DeliveryQueue queue(spec.horizon_tau, config.policy.kind == PolicyKind::Ucb1);

  RegretTrajectory traj;
  traj.seed = config.base_seed + config.run_index;
  traj.regret.resize(grid.rounds.size());
  traj.pull_counts.assign(spec.num_arms, 0);
  if (keep_arm_sequence) traj.arm_sequence.reserve(static_cast<size_t>(T));

  StreamKey key;
  key.seed = config.base_seed;
  key.run = config.run_index;
  key.salt = config.policy_salt;

  std::vector<double> draw_buffer;
  std::vector<Delivery> deliveries;
  double regret = 0.0;
  size_t grid_pos = 0;

  for (int64_t t = 1; t <= T; ++t) {
    const int arm = state.select(t);
    state.record_pull(arm, t);
    traj.pull_counts[arm] += 1;
    regret += gap[arm];
    if (keep_arm_sequence) traj.arm_sequence.push_back(arm);

    key.round = static_cast<uint64_t>(t);
    env.draw(key, arm, draw_buffer);
    queue.push(t, arm, draw_buffer);
    queue.deliver(t, deliveries);
    state.observe(deliveries, t);

    if (grid_pos < grid.rounds.size() && grid.rounds[grid_pos] == t) {
      traj.regret[grid_pos++] = regret;
    }
  }
  return traj;
}

double student_t_quantile_975(int degrees_of_freedom) {
  boost::math::students_t_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(dist, 0.975);
}

namespace {

AggregateResult fold(const ReplicationConfig& config, const CheckpointGrid& grid,
                     const std::vector<std::vector<RegretTrajectory>>& episodes) {
  AggregateResult result;
  result.grid = grid;
  result.runs = config.runs;
  const size_t num_checkpoints = grid.rounds.size();
  const int runs = config.runs;
  const double t_quant = runs >= 2 ? student_t_quantile_975(runs - 1) : 0.0;

  for (size_t p = 0; p < config.policies.size(); ++p) {
    PolicyAggregate agg;
    agg.policy = config.policies[p];
    agg.label = config.policies[p].label();
    agg.mean_regret.assign(num_checkpoints, 0.0);
    agg.ci_half_width.assign(num_checkpoints, 0.0);
    for (size_t c = 0; c < num_checkpoints; ++c) {
      double sum = 0.0;
      for (int r = 0; r < runs; ++r) sum += episodes[p][static_cast<size_t>(r)].regret[c];
      const double mean = sum / runs;
      agg.mean_regret[c] = mean;
      if (runs >= 2) {
        double ss = 0.0;
        for (int r = 0; r < runs; ++r) {
          const double d = episodes[p][static_cast<size_t>(r)].regret[c] - mean;
          ss += d * d;
        }
        const double sd = std::sqrt(ss / (runs - 1));
        agg.ci_half_width[c] = t_quant * sd / std::sqrt(static_cast<double>(runs));
      }
    }
    agg.final_regret = agg.mean_regret.back();
    agg.final_ci_half_width = agg.ci_half_width.back();
    agg.final_per_run.reserve(static_cast<size_t>(runs));
    for (int r = 0; r < runs; ++r) {
      agg.final_per_run.push_back(episodes[p][static_cast<size_t>(r)].final_regret());
    }
    result.policies.push_back(std::move(agg));
  }

  // Regret percentage vs the Delayed-UCB1 run from the same batch.
  std::optional<size_t> reference;
  for (size_t p = 0; p < config.policies.size(); ++p) {
    if (config.policies[p].kind == PolicyKind::DelayedUcb1) {
      reference = p;
      break;
    }
  }
  if (reference) {
    const double ref_final = result.policies[*reference].final_regret;
    if (ref_final > 0.0) {
      for (PolicyAggregate& agg : result.policies) {
        agg.regret_percent = agg.final_regret / ref_final * 100.0;
      }
    }
  }
  return result;
}

void validate_replication(const ReplicationConfig& config) {
  if (config.runs < 1) fail(ErrorCode::ConfigError, "runs must be >= 1");
  if (config.policies.empty()) fail(ErrorCode::ConfigError, "no policies configured");
}

uint64_t policy_salt_for(const ReplicationConfig& config, size_t policy_index) {
  return config.shared_randomness ? 0 : policy_index + 1;
}

}  // namespace

AggregateResult replicate_serial(const Environment& env, const ReplicationConfig& config) {
  validate_replication(config);
  const CheckpointGrid grid = config.checkpoint_step > 0
                                  ? CheckpointGrid::every(config.checkpoint_step, config.horizon)
                                  : CheckpointGrid::standard(config.horizon);
  std::vector<std::vector<RegretTrajectory>> episodes(config.policies.size());
  for (size_t p = 0; p < config.policies.size(); ++p) {
    episodes[p].resize(static_cast<size_t>(config.runs));
    for (int r = 0; r < config.runs; ++r) {
      EpisodeConfig ep;
      ep.policy = config.policies[p];
      ep.horizon = config.horizon;
      ep.base_seed = config.base_seed;
      ep.run_index = static_cast<uint64_t>(r);
      ep.policy_salt = policy_salt_for(config, p);
      ep.matched_log = config.matched_log;
      episodes[p][static_cast<size_t>(r)] = run_episode(env, ep, grid);
    }
  }
  return fold(config, grid, episodes);
}

AggregateResult replicate(const Environment& env, const ReplicationConfig& config) {
  validate_replication(config);
  const CheckpointGrid grid = config.checkpoint_step > 0
                                  ? CheckpointGrid::every(config.checkpoint_step, config.horizon)
                                  : CheckpointGrid::standard(config.horizon);
  const size_t num_policies = config.policies.size();
  const int64_t total = static_cast<int64_t>(num_policies) * config.runs;
  std::vector<std::vector<RegretTrajectory>> episodes(num_policies);
  for (auto& per_policy : episodes) per_policy.resize(static_cast<size_t>(config.runs));

#ifdef _OPENMP
  int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int64_t task = 0; task < total; ++task) {
    const size_t p = static_cast<size_t>(task) / static_cast<size_t>(config.runs);
    const int r = static_cast<int>(task % config.runs);
    EpisodeConfig ep;
    ep.policy = config.policies[p];
    ep.horizon = config.horizon;
    ep.base_seed = config.base_seed;
    ep.run_index = static_cast<uint64_t>(r);
    ep.policy_salt = policy_salt_for(config, p);
    ep.matched_log = config.matched_log;
    episodes[p][static_cast<size_t>(r)] = run_episode(env, ep, grid);
  }
  return fold(config, grid, episodes);
}

}  // namespace tpmab
