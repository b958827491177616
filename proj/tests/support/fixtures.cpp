#include "support/fixtures.hpp"

#include <algorithm>

namespace tpmab::testing {

DriveResult drive_policy(PolicyKind kind, int eta, const Environment& env, int64_t horizon,
                         uint64_t seed, bool matched_log,
                         const std::vector<int>& forced_arms) {
  const SmoothnessSpec& spec = env.spec();
  const int64_t tau = spec.horizon_tau;
  DriveResult result{PolicyState(kind, spec, eta, matched_log), {}, {}};
  result.history.reserve(static_cast<size_t>(horizon));

  StreamKey key;
  key.seed = seed;
  std::vector<double> buffer;
  std::vector<Delivery> deliveries;

  for (int64_t t = 1; t <= horizon; ++t) {
    int arm;
    if (!forced_arms.empty()) {
      arm = forced_arms[static_cast<size_t>((t - 1) % forced_arms.size())];
    } else {
      arm = result.state.select(t);
    }
    result.state.record_pull(arm, t);
    result.arms.push_back(arm);

    key.round = static_cast<uint64_t>(t);
    env.draw(key, arm, buffer);
    result.history.push_back({t, arm, buffer});

    deliveries.clear();
    if (kind == PolicyKind::Ucb1) {
      double total = 0.0;
      for (double v : buffer) total += v;
      deliveries.push_back({t, arm, tau, total, true});
    } else {
      // Per-round reveal: entry j of the pull at h appears at round h + j - 1.
      const size_t first =
          static_cast<size_t>(std::max<int64_t>(0, t - tau));  // history index of pull t-tau+1
      for (size_t idx = first; idx < result.history.size(); ++idx) {
        const HistoryEntry& e = result.history[idx];
        const int64_t j = t - e.round + 1;
        deliveries.push_back({e.round, e.arm, j, e.values[static_cast<size_t>(j - 1)], false});
      }
    }
    result.state.observe(deliveries, t);
  }
  return result;
}

std::unique_ptr<SyntheticEnv> random_env(uint64_t seed, int max_arms, SplitStrategy split) {
  KeyedStream stream(StreamKey{seed, 0, 0x5eed, 0, 0, 0});
  static const int64_t tau_choices[] = {1, 2, 4, 6, 12, 24};
  const int64_t tau = tau_choices[stream.next_below(6)];
  std::vector<int> divisors;
  for (int a = 1; a <= tau; ++a) {
    if (tau % a == 0) divisors.push_back(a);
  }
  const int alpha = divisors[static_cast<size_t>(stream.next_below(divisors.size()))];
  const int num_arms = 2 + static_cast<int>(stream.next_below(static_cast<uint64_t>(max_arms - 1)));

  std::vector<double> max_reward(static_cast<size_t>(num_arms));
  for (double& r : max_reward) r = 1.0 + 99.0 * stream.next_unit();
  std::vector<std::vector<double>> a(static_cast<size_t>(num_arms)),
      b(static_cast<size_t>(num_arms));
  for (int arm = 0; arm < num_arms; ++arm) {
    for (int k = 0; k < alpha; ++k) {
      a[static_cast<size_t>(arm)].push_back(1.0 + stream.next_below(10));
      b[static_cast<size_t>(arm)].push_back(1.0 + stream.next_below(10));
    }
  }
  SmoothnessSpec spec = validate_spec(num_arms, tau, alpha, std::move(max_reward));
  return std::make_unique<SyntheticEnv>(std::move(spec), std::move(a), std::move(b), split);
}

SessionFixture make_session_fixture(uint64_t seed, int num_playlists, int sessions_each,
                                    int songs) {
  SessionFixture fixture;
  fixture.songs = songs;
  fixture.csv = "session_id,playlist_id,position,skip_level\n";

  KeyedStream table_stream(StreamKey{seed, 0, 0xf1c5, 0, 0, 0});
  std::vector<std::vector<double>> level_probs;  // per playlist, P(level = 0..4)
  for (int p = 0; p < num_playlists; ++p) {
    std::vector<double> weights(5);
    double total = 0.0;
    for (double& w : weights) {
      w = 0.05 + table_stream.next_unit();
      total += w;
    }
    for (double& w : weights) w /= total;
    level_probs.push_back(weights);

    double mean_level = 0.0, second_moment = 0.0;
    for (int level = 0; level <= 4; ++level) {
      mean_level += level * weights[static_cast<size_t>(level)];
      second_moment += level * level * weights[static_cast<size_t>(level)];
    }
    fixture.playlists.push_back("playlist_" + std::to_string(p + 1));
    fixture.sessions_per_playlist.push_back(sessions_each);
    fixture.expected_mean.push_back(songs * mean_level);
    fixture.level_variance.push_back(second_moment - mean_level * mean_level);
  }

  int session_counter = 0;
  for (int p = 0; p < num_playlists; ++p) {
    for (int s = 0; s < sessions_each; ++s) {
      ++session_counter;
      const std::string session_id = "s" + std::to_string(session_counter);
      KeyedStream stream(StreamKey{seed, static_cast<uint64_t>(p), 0x5e55,
                                   static_cast<uint64_t>(s), 0, 0});
      for (int pos = 1; pos <= songs; ++pos) {
        const double u = stream.next_unit();
        double acc = 0.0;
        int level = 4;
        for (int candidate = 0; candidate <= 4; ++candidate) {
          acc += level_probs[static_cast<size_t>(p)][static_cast<size_t>(candidate)];
          if (u < acc) {
            level = candidate;
            break;
          }
        }
        fixture.csv += session_id + "," + fixture.playlists[static_cast<size_t>(p)] + "," +
                       std::to_string(pos) + "," + std::to_string(level) + "\n";
      }
    }
  }
  return fixture;
}

}  // namespace tpmab::testing
