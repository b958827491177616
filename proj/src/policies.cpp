#include "tpmab/policies.hpp"

#include <cmath>
#include <limits>

namespace tpmab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Ucb1: return "ucb1";
    case PolicyKind::DelayedUcb1: return "delayed-ucb1";
    case PolicyKind::TpUcbFr: return "tp-ucb-fr";
    case PolicyKind::TpUcbEw: return "tp-ucb-ew";
  }
  return "unknown";
}

std::string PolicyConfig::label() const {
  std::string name = policy_kind_name(kind);
  if (kind == PolicyKind::TpUcbFr || kind == PolicyKind::TpUcbEw) {
    name += "(" + std::to_string(eta) + ")";
  }
  return name;
}

double ucb_bonus(double rbar, int64_t n, double log_term) {
  if (n <= 0) return kInf;
  return rbar * std::sqrt(2.0 * log_term / static_cast<double>(n));
}

double fr_bonus(double rbar, int eta, int64_t phi_eta, int64_t n, double log_term,
                bool include_bias_pad) {
  if (n <= 0) return kInf;
  double bonus = rbar * std::sqrt(2.0 * log_term / (static_cast<double>(eta) * n));
  if (include_bias_pad) {
    bonus += static_cast<double>(phi_eta) * (eta + 1) * rbar / (2.0 * n);
  }
  return bonus;
}

double ew_bucket_bonus(double rbar, int eta, int64_t n_k, double log_term) {
  if (n_k <= 0) return kInf;
  return rbar / eta * std::sqrt(2.0 * log_term / static_cast<double>(n_k));
}

PolicyState::PolicyState(PolicyKind kind, const SmoothnessSpec& spec, int eta,
                         bool matched_log)
    : kind_(kind), spec_(spec), eta_(eta), matched_log_(matched_log) {
  if (eta_ < 1 || eta_ > spec_.horizon_tau || spec_.horizon_tau % eta_ != 0) {
    fail(ErrorCode::NonDivisorAlpha,
         "policy eta=" + std::to_string(eta_) + " must divide tau_max=" +
             std::to_string(spec_.horizon_tau));
  }
  psi_ = spec_.horizon_tau / eta_;
  const int k = spec_.num_arms;
  pulls_.assign(k, 0);
  fict_sum_.assign(k, 0.0);
  complete_count_.assign(k, 0);
  complete_sum_.assign(k, 0.0);
  bucket_count_.assign(static_cast<size_t>(k) * eta_, 0);
  bucket_sum_.assign(static_cast<size_t>(k) * eta_, 0.0);
  ew_zero_buckets_.assign(k, eta_);
  pending_.assign(static_cast<size_t>(spec_.horizon_tau), Pending{});
}

double PolicyState::loop_log(int64_t t) const {
  // UCB1 as printed uses ln t; the other three use ln(t-1).
  if (kind_ == PolicyKind::Ucb1 && !matched_log_) {
    return std::log(static_cast<double>(t));
  }
  return std::log(static_cast<double>(t - 1));
}

IndexValue PolicyState::index_value(int arm, int64_t t) const {
  IndexValue out;
  out.arm = arm;
  const double rbar = spec_.max_reward[arm];
  const double log_term = loop_log(t);
  switch (kind_) {
    case PolicyKind::Ucb1: {
      int64_t n = pulls_[arm];
      if (n == 0) {
        out.mean_part = 0.0;
        out.bonus_part = kInf;
        out.total = kInf;
        return out;
      }
      out.mean_part = complete_sum_[arm] / static_cast<double>(n);
      out.bonus_part = ucb_bonus(rbar, n, log_term);
      break;
    }
    case PolicyKind::DelayedUcb1: {
      int64_t s = complete_count_[arm];
      if (s == 0) {
        out.mean_part = 0.0;
        out.bonus_part = kInf;
        out.total = kInf;
        return out;
      }
      out.mean_part = complete_sum_[arm] / static_cast<double>(s);
      out.bonus_part = ucb_bonus(rbar, s, log_term);
      break;
    }
    case PolicyKind::TpUcbFr: {
      int64_t n = pulls_[arm];
      if (n == 0) {
        out.mean_part = 0.0;
        out.bonus_part = kInf;
        out.total = kInf;
        return out;
      }
      out.mean_part = fict_sum_[arm] / static_cast<double>(n);
      out.bonus_part = fr_bonus(rbar, eta_, psi_, n, log_term, !matched_log_);
      break;
    }
    case PolicyKind::TpUcbEw: {
      if (ew_zero_buckets_[arm] > 0) {
        out.mean_part = 0.0;
        out.bonus_part = kInf;
        out.total = kInf;
        return out;
      }
      double mean_total = 0.0;
      double bonus_total = 0.0;
      const size_t base = static_cast<size_t>(arm) * eta_;
      for (int k = 0; k < eta_; ++k) {
        mean_total += bucket_sum_[base + k] / static_cast<double>(bucket_count_[base + k]);
        bonus_total += ew_bucket_bonus(rbar, eta_, bucket_count_[base + k], log_term);
      }
      out.mean_part = mean_total;
      out.bonus_part = bonus_total;
      break;
    }
  }
  out.total = out.mean_part + out.bonus_part;
  return out;
}

int PolicyState::select(int64_t t) const {
  const int k = spec_.num_arms;
  if (kind_ == PolicyKind::DelayedUcb1) {
    // Round-robin until the first complete reward can exist.
    if (t <= spec_.horizon_tau) return static_cast<int>((t - 1) % k);
  } else {
    if (t <= k) return static_cast<int>(t - 1);
  }
  int best = 0;
  double best_total = index_value(0, t).total;
  for (int arm = 1; arm < k; ++arm) {
    double total = index_value(arm, t).total;
    // Several arms can be unexplored (+inf) at once; their only usable
    // ordering is the known reward cap, so optimism prefers the largest
    // max_reward among them. Exact ties keep the lowest arm index.
    bool better;
    if (std::isinf(total) && std::isinf(best_total)) {
      better = spec_.max_reward[arm] > spec_.max_reward[best];
    } else {
      better = total > best_total;
    }
    if (better) {
      best_total = total;
      best = arm;
    }
  }
  return best;
}

void PolicyState::record_pull(int arm, int64_t t) {
  pulls_[arm] += 1;
  if (kind_ == PolicyKind::Ucb1) return;  // clairvoyant: no pending tracking
  Pending& slot = pending_[static_cast<size_t>(t % spec_.horizon_tau)];
  slot.round = t;
  slot.arm = arm;
  slot.seen = 0;
  slot.running = 0.0;
  slot.bucket_partial = 0.0;
}

void PolicyState::apply_bucket(int arm, int k, double z) {
  const size_t idx = static_cast<size_t>(arm) * eta_ + k;
  if (bucket_count_[idx] == 0) ew_zero_buckets_[arm] -= 1;
  bucket_count_[idx] += 1;
  bucket_sum_[idx] += z;
}

void PolicyState::observe(std::span<const Delivery> deliveries, int64_t) {
  for (const Delivery& d : deliveries) {
    if (d.is_cumulative) {
      complete_count_[d.arm] += 1;
      complete_sum_[d.arm] += d.value;
      fict_sum_[d.arm] += d.value;
      continue;
    }
    Pending& slot = pending_[static_cast<size_t>(d.pull_round % spec_.horizon_tau)];
    if (slot.round != d.pull_round || slot.arm != d.arm) {
      fail(ErrorCode::UnknownPull,
           "no pending pull at round " + std::to_string(d.pull_round));
    }
    if (d.j <= slot.seen) {
      fail(ErrorCode::DuplicateDelivery,
           "per-round value " + std::to_string(d.j) + " already delivered");
    }
    if (d.j != slot.seen + 1) {
      fail(ErrorCode::UnknownPull,
           "out-of-order delivery j=" + std::to_string(d.j));
    }
    slot.seen += 1;
    slot.running += d.value;
    fict_sum_[d.arm] += d.value;
    if (kind_ == PolicyKind::TpUcbEw) {
      slot.bucket_partial += d.value;
      if (slot.seen % psi_ == 0) {
        apply_bucket(d.arm, static_cast<int>(slot.seen / psi_) - 1, slot.bucket_partial);
        slot.bucket_partial = 0.0;
      }
    }
    if (slot.seen == spec_.horizon_tau) {
      complete_count_[d.arm] += 1;
      complete_sum_[d.arm] += slot.running;
      slot.round = -1;  // retired
    }
  }
}

int64_t PolicyState::pending_count() const {
  int64_t n = 0;
  for (const Pending& p : pending_) {
    if (p.round >= 0) ++n;
  }
  return n;
}

}  // namespace tpmab
