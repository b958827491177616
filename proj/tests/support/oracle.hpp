#pragma once

// From-scratch evaluators of the four policy indices, computed directly from
// a stored pull history. Deliberately independent of the incremental
// PolicyState path that the tests check against: everything is recomputed
// from the raw reward vectors on every call.

#include <cstdint>
#include <vector>

#include "tpmab/core.hpp"
#include "tpmab/policies.hpp"

namespace tpmab::testing {

struct HistoryEntry {
  int64_t round = 0;  // pull round, 1-based, one pull per round
  int arm = 0;
  std::vector<double> values;  // full tau_max reward vector
};

using History = std::vector<HistoryEntry>;

// Index of `arm` at decision round t given everything revealed up to round
// t-1 under the reveal rule "entry j of a pull at h appears at round h+j-1".
double oracle_ucb1_index(const History& history, const SmoothnessSpec& spec, int arm,
                         int64_t t, bool matched_log);
double oracle_delayed_index(const History& history, const SmoothnessSpec& spec, int arm,
                            int64_t t);
double oracle_fr_index(const History& history, const SmoothnessSpec& spec, int eta,
                       int arm, int64_t t, bool matched_log);
double oracle_ew_index(const History& history, const SmoothnessSpec& spec, int eta,
                       int arm, int64_t t);

double oracle_index(PolicyKind kind, const History& history, const SmoothnessSpec& spec,
                    int eta, int arm, int64_t t, bool matched_log);

// True empirical mean over all pulls of the arm (full rewards, pending
// included) and the zero-filled fictitious mean at decision round t.
double oracle_true_mean(const History& history, int arm);
double oracle_fictitious_mean(const History& history, int arm, int64_t t);

}  // namespace tpmab::testing
