#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpmab/core.hpp"

namespace tpmab {

enum class PolicyKind { Ucb1, DelayedUcb1, TpUcbFr, TpUcbEw };

const char* policy_kind_name(PolicyKind kind);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Ucb1;
  int eta = 1;  // smoothness given to the policy; may differ from the environment's alpha

  std::string label() const;
};

struct IndexValue {
  int arm = 0;
  double mean_part = 0.0;
  double bonus_part = 0.0;
  double total = 0.0;

  bool infinite() const { return std::isinf(total); }
};

// One per-round observation handed to a policy. For the clairvoyant UCB1 the
// engine instead delivers the whole cumulative reward at the pull round with
// is_cumulative set.
struct Delivery {
  int64_t pull_round = 0;
  int arm = 0;
  int64_t j = 0;  // 1-based index into the reward vector
  double value = 0.0;
  bool is_cumulative = false;
};

// Confidence-term building blocks, exposed so tests can pin the formulas at
// stipulated log values.
double ucb_bonus(double rbar, int64_t n, double log_term);
double fr_bonus(double rbar, int eta, int64_t phi_eta, int64_t n, double log_term,
                bool include_bias_pad);
double ew_bucket_bonus(double rbar, int eta, int64_t n_k, double log_term);

// Incremental sufficient statistics of one policy. The same select/observe
// interface drives all four kinds; index_value() reproduces the closed-form
// index definitions from the running sums alone.
//
// matched_log is a test mode: UCB1's log argument becomes ln(t-1) like the
// other three policies, and TP-UCB-FR drops its delay-bias padding term, so
// that in the degenerate tau_max = 1 setting all four indices coincide.
class PolicyState {
 public:
  PolicyState(PolicyKind kind, const SmoothnessSpec& spec, int eta,
              bool matched_log = false);

  PolicyKind kind() const { return kind_; }
  int eta() const { return eta_; }
  const SmoothnessSpec& spec() const { return spec_; }

  // Arm to pull at round t. Init phase is schedule-driven; loop phase is the
  // argmax of index_value with ties broken toward the lowest arm index.
  int select(int64_t t) const;

  IndexValue index_value(int arm, int64_t t) const;

  void record_pull(int arm, int64_t t);

  // Feed the engine's due observations for round t. Completed pulls move out
  // of the pending ring.
  void observe(std::span<const Delivery> deliveries, int64_t t);

  int64_t pull_count(int arm) const { return pulls_[arm]; }
  int64_t complete_count(int arm) const { return complete_count_[arm]; }
  double complete_sum(int arm) const { return complete_sum_[arm]; }
  double fictitious_sum(int arm) const { return fict_sum_[arm]; }
  int64_t bucket_count(int arm, int k) const { return bucket_count_[arm * eta_ + k]; }
  double bucket_sum(int arm, int k) const { return bucket_sum_[arm * eta_ + k]; }
  int64_t pending_count() const;

 private:
  struct Pending {
    int64_t round = -1;
    int arm = -1;
    int64_t seen = 0;
    double running = 0.0;
    double bucket_partial = 0.0;
  };

  double loop_log(int64_t t) const;
  void apply_bucket(int arm, int k, double z);

  PolicyKind kind_;
  SmoothnessSpec spec_;
  int eta_;
  int64_t psi_;  // bucket width tau_max / eta as seen by the policy
  bool matched_log_;

  std::vector<int64_t> pulls_;
  std::vector<double> fict_sum_;        // FR numerator: everything revealed so far
  std::vector<int64_t> complete_count_;  // s^i
  std::vector<double> complete_sum_;

  // TP-UCB-EW per-(arm, bucket) counts and sums; the index is recomputed
  // from these tables on every call.
  std::vector<int64_t> bucket_count_;
  std::vector<double> bucket_sum_;
  std::vector<int> ew_zero_buckets_;

  std::vector<Pending> pending_;
};

}  // namespace tpmab
