#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "support/oracle.hpp"
#include "tpmab/environments.hpp"
#include "tpmab/policies.hpp"
#include "tpmab/rng.hpp"

namespace tpmab::testing {

// Drives one policy against an environment with the engine's reveal timing,
// recording the raw history so oracle evaluators can replay it. When
// forced_arms is non-empty the pull sequence is scripted instead of selected,
// which lets property tests reach arbitrary states.
struct DriveResult {
  PolicyState state;
  History history;
  std::vector<int> arms;
};

DriveResult drive_policy(PolicyKind kind, int eta, const Environment& env, int64_t horizon,
                         uint64_t seed, bool matched_log = false,
                         const std::vector<int>& forced_arms = {});

// Small random smooth environment for property tests: K arms, tau_max from a
// divisor-friendly set, random alpha | tau_max, random Beta shapes.
std::unique_ptr<SyntheticEnv> random_env(uint64_t seed, int max_arms = 5,
                                         SplitStrategy split = SplitStrategy::RandomSimplex);

// Synthetic listening-session fixture with known per-playlist level
// probabilities. expected_mean[i] is N * E[level] for playlist i.
struct SessionFixture {
  std::string csv;
  std::vector<std::string> playlists;
  std::vector<int> sessions_per_playlist;
  std::vector<double> expected_mean;   // per playlist, N * E[level]
  std::vector<double> level_variance;  // per playlist, Var(level) of one song
  int songs = 0;
};

SessionFixture make_session_fixture(uint64_t seed, int num_playlists, int sessions_each,
                                    int songs);

}  // namespace tpmab::testing
