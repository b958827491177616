#include "tpmab/environments.hpp"

#include <algorithm>
#include <cmath>

namespace tpmab {

SplitStrategy split_strategy_from_name(const std::string& name) {
  if (name == "random-simplex") return SplitStrategy::RandomSimplex;
  if (name == "equal") return SplitStrategy::Equal;
  if (name == "terminal") return SplitStrategy::Terminal;
  fail(ErrorCode::ConfigError, "unknown split strategy '" + name + "'");
}

const char* split_strategy_name(SplitStrategy s) {
  switch (s) {
    case SplitStrategy::RandomSimplex: return "random-simplex";
    case SplitStrategy::Equal: return "equal";
    case SplitStrategy::Terminal: return "terminal";
  }
  return "unknown";
}

SyntheticEnv::SyntheticEnv(SmoothnessSpec spec, std::vector<std::vector<double>> beta_a,
                           std::vector<std::vector<double>> beta_b, SplitStrategy split,
                           bool point_mass)
    : spec_(std::move(spec)),
      beta_a_(std::move(beta_a)),
      beta_b_(std::move(beta_b)),
      split_(split),
      point_mass_(point_mass) {
  if (static_cast<int>(beta_a_.size()) != spec_.num_arms ||
      static_cast<int>(beta_b_.size()) != spec_.num_arms) {
    fail(ErrorCode::LengthMismatch, "one shape vector per arm required");
  }
  for (int arm = 0; arm < spec_.num_arms; ++arm) {
    if (static_cast<int>(beta_a_[arm].size()) != spec_.alpha ||
        static_cast<int>(beta_b_[arm].size()) != spec_.alpha) {
      fail(ErrorCode::LengthMismatch, "shape vectors must have length alpha");
    }
    for (int k = 0; k < spec_.alpha; ++k) {
      if (beta_a_[arm][k] <= 0.0 || beta_b_[arm][k] <= 0.0) {
        fail(ErrorCode::NonPositiveDimension, "Beta shape parameters must be > 0");
      }
    }
  }
}

std::vector<double> SyntheticEnv::true_means() const {
  std::vector<double> mu(spec_.num_arms, 0.0);
  for (int arm = 0; arm < spec_.num_arms; ++arm) {
    const double cap = spec_.bucket_cap(arm);
    double total = 0.0;
    for (int k = 0; k < spec_.alpha; ++k) {
      total += cap * beta_a_[arm][k] / (beta_a_[arm][k] + beta_b_[arm][k]);
    }
    mu[arm] = total;
  }
  return mu;
}

void SyntheticEnv::draw(const StreamKey& key, int arm, std::vector<double>& out) const {
  out.assign(static_cast<size_t>(spec_.horizon_tau), 0.0);
  const double cap = spec_.bucket_cap(arm);
  const int64_t phi = spec_.phi;
  StreamKey bucket_key = key;
  bucket_key.arm = static_cast<uint64_t>(arm);
  for (int k = 0; k < spec_.alpha; ++k) {
    bucket_key.lane = static_cast<uint64_t>(k);
    KeyedStream stream(bucket_key);
    double z;
    if (point_mass_) {
      z = cap * beta_a_[arm][k] / (beta_a_[arm][k] + beta_b_[arm][k]);
    } else {
      z = cap * stream.next_beta(beta_a_[arm][k], beta_b_[arm][k]);
    }
    double* seg = out.data() + static_cast<size_t>(k) * phi;
    switch (split_) {
      case SplitStrategy::Equal: {
        const double part = z / static_cast<double>(phi);
        for (int64_t j = 0; j < phi; ++j) seg[j] = part;
        break;
      }
      case SplitStrategy::Terminal: {
        seg[phi - 1] = z;
        break;
      }
      case SplitStrategy::RandomSimplex: {
        double total = 0.0;
        for (int64_t j = 0; j < phi; ++j) {
          seg[j] = stream.next_exponential();
          total += seg[j];
        }
        if (total <= 0.0) {
          const double part = z / static_cast<double>(phi);
          for (int64_t j = 0; j < phi; ++j) seg[j] = part;
        } else {
          for (int64_t j = 0; j < phi; ++j) seg[j] = z * (seg[j] / total);
        }
        break;
      }
    }
  }
}

ReplayEnv::ReplayEnv(SmoothnessSpec spec, std::vector<std::vector<RewardVector>> pools)
    : spec_(std::move(spec)), pools_(std::move(pools)) {
  if (static_cast<int>(pools_.size()) != spec_.num_arms) {
    fail(ErrorCode::LengthMismatch, "one pool per arm required");
  }
  means_.assign(spec_.num_arms, 0.0);
  for (int arm = 0; arm < spec_.num_arms; ++arm) {
    if (pools_[arm].empty()) {
      fail(ErrorCode::EmptyPool, "arm " + std::to_string(arm) + " has no replay vectors");
    }
    double total = 0.0;
    for (const RewardVector& v : pools_[arm]) total += cumulative_reward(v);
    means_[arm] = total / static_cast<double>(pools_[arm].size());
  }
}

void ReplayEnv::draw(const StreamKey& key, int arm, std::vector<double>& out) const {
  StreamKey draw_key = key;
  draw_key.arm = static_cast<uint64_t>(arm);
  draw_key.lane = 0;
  KeyedStream stream(draw_key);
  const auto& pool = pools_[arm];
  const size_t idx = static_cast<size_t>(stream.next_below(pool.size()));
  out = pool[idx].values;
}

namespace {

std::vector<std::vector<double>> broadcast(std::vector<double> shape, int num_arms) {
  return std::vector<std::vector<double>>(static_cast<size_t>(num_arms), std::move(shape));
}

std::vector<double> ones(int alpha) { return std::vector<double>(alpha, 1.0); }

// Setting #2.1 ramp: a_k = min(2k, alpha); #2.2 uses the reverse.
std::vector<double> ramp_up(int alpha) {
  std::vector<double> a(alpha);
  for (int k = 0; k < alpha; ++k) a[k] = std::min(2.0 * (k + 1), static_cast<double>(alpha));
  return a;
}

std::vector<double> ramp_down(int alpha) {
  std::vector<double> a = ramp_up(alpha);
  std::reverse(a.begin(), a.end());
  return a;
}

std::vector<double> linear_max_rewards(int num_arms, double scale) {
  std::vector<double> r(num_arms);
  for (int i = 0; i < num_arms; ++i) r[i] = scale * (i + 1);
  return r;
}

struct Setting23 {
  int tau;
  int alpha;
  std::vector<double> a;
  std::vector<double> b;
};

const std::vector<Setting23>& setting23_table() {
  static const std::vector<Setting23> table = {
      {100, 10, {7, 7, 1, 5, 9, 8, 7, 5, 8, 6}, {10, 4, 9, 3, 5, 3, 2, 10, 5, 9}},
      {200,
       20,
       {10, 3, 5, 2, 2, 6, 8, 9, 2, 6, 7, 6, 10, 4, 9, 8, 8, 9, 5, 1},
       {9, 1, 2, 7, 1, 10, 8, 6, 4, 6, 2, 4, 10, 4, 4, 3, 9, 8, 2, 2}},
      {100,
       50,
       {6, 9, 8, 2, 5, 9, 5, 2, 9, 6, 9, 4, 10, 9, 10, 5, 8, 2, 10, 7, 6, 10, 4, 5, 3,
        4, 3, 1, 10, 5, 8, 2, 2, 3, 3, 1, 2, 9, 7, 9, 5, 9, 4, 4, 10, 7, 10, 5, 8, 8},
       {6, 2, 6, 10, 2, 8, 10, 6, 4, 4, 1, 5, 2, 4, 6, 3, 6, 7, 1, 2, 3, 4, 1, 10, 9,
        10, 2, 1, 2, 4, 10, 10, 2, 7, 2, 6, 2, 1, 10, 1, 4, 3, 2, 8, 4, 1, 1, 9, 7, 10}},
      {200,
       100,
       {2,  5, 2, 4, 2, 5,  6, 7, 3, 1, 9,  8, 1, 10, 2, 7,  4, 5, 6,  8, 10, 3, 4, 1, 3,
        3,  6, 9, 5, 2, 10, 8, 3, 1, 8, 7,  10, 9, 5, 6, 7,  5, 3, 9,  1, 8,  2, 6, 1, 9,
        5,  3, 4, 8, 6, 10, 5, 6, 10, 10, 3, 5, 7, 7, 2, 1,  10, 4, 6, 3, 4,  4, 8, 7, 10,
        7,  1, 7, 10, 7, 1, 3, 8, 2, 5, 3,  8, 9, 8, 9, 10,  1, 1, 8,  6, 5,  8, 1, 7, 4},
       {9,  2, 3, 1, 7, 7,  6, 1, 4, 1, 1,  9, 10, 2, 4, 2,  10, 4, 5, 5, 3,  2, 8, 7, 2,
        1,  5, 8, 2, 5, 3,  9, 6, 2, 3, 5,  1, 1, 1, 4, 5,   9, 6, 6, 10, 1,  10, 8, 8, 7,
        6,  9, 3, 4, 7, 10, 5, 1, 3, 3, 5,  6, 6, 6, 2, 6,   10, 1, 1, 5, 3,  3, 10, 5, 6,
        7,  9, 3, 5, 2, 8,  4, 1, 5, 3, 9,  2, 5, 7, 6, 5,   7, 2, 2, 9, 8,   8, 6, 6, 2}},
  };
  return table;
}

struct Setting4Row {
  std::vector<double> a;
  std::vector<double> b;
};

const std::vector<Setting4Row>& setting4_table() {
  static const std::vector<Setting4Row> table = {
      {{8, 2, 8, 7, 1, 5, 6, 3, 3, 10}, {7, 2, 2, 2, 4, 4, 1, 7, 1, 2}},
      {{7, 9, 9, 5, 8, 8, 10, 4, 7, 2}, {6, 4, 5, 10, 3, 7, 4, 6, 2, 2}},
      {{1, 9, 8, 4, 2, 8, 7, 5, 4, 1}, {4, 10, 3, 2, 4, 8, 7, 6, 9, 3}},
      {{2, 10, 8, 3, 10, 7, 7, 9, 8, 6}, {8, 8, 4, 9, 10, 4, 1, 6, 6, 6}},
      {{1, 9, 3, 5, 10, 3, 7, 10, 5, 8}, {2, 2, 9, 1, 2, 4, 3, 1, 5, 1}},
      {{8, 6, 3, 3, 8, 6, 9, 7, 9, 9}, {1, 10, 2, 9, 10, 2, 7, 4, 5, 9}},
      {{10, 7, 8, 7, 10, 10, 4, 1, 1, 3}, {5, 9, 10, 5, 6, 2, 8, 5, 5, 7}},
      {{7, 7, 1, 3, 3, 4, 5, 6, 1, 1}, {8, 7, 3, 8, 10, 2, 3, 6, 7, 1}},
      {{10, 8, 7, 8, 1, 2, 8, 3, 1, 1}, {10, 10, 3, 6, 2, 9, 6, 4, 7, 8}},
      {{2, 1, 10, 8, 10, 6, 2, 10, 5, 3}, {7, 5, 2, 9, 4, 1, 7, 8, 6, 4}},
  };
  return table;
}

std::unique_ptr<SyntheticEnv> make_env(int num_arms, int tau, int alpha, double scale,
                                       std::vector<double> a, std::vector<double> b,
                                       SplitStrategy split) {
  SmoothnessSpec spec =
      validate_spec(num_arms, tau, alpha, linear_max_rewards(num_arms, scale));
  return std::make_unique<SyntheticEnv>(std::move(spec), broadcast(std::move(a), num_arms),
                                        broadcast(std::move(b), num_arms), split);
}

const std::vector<std::pair<int, int>> kSetting2Grid = {
    {100, 10}, {200, 20}, {100, 50}, {200, 100}};

}  // namespace

std::unique_ptr<SyntheticEnv> scenario_library(const std::string& name,
                                               SplitStrategy split) {
  // Setting #1 and #5 share one configuration; #5 only lengthens the horizon.
  if (name == "setting1" || name == "setting5") {
    return make_env(10, 100, 20, 100.0, ones(20), ones(20), split);
  }
  for (auto [tau, alpha] : kSetting2Grid) {
    const std::string suffix =
        "-" + std::to_string(tau) + "-" + std::to_string(alpha);
    if (name == "setting2" + suffix) {
      return make_env(10, tau, alpha, tau, ones(alpha), ones(alpha), split);
    }
    if (name == "setting2.1" + suffix) {
      return make_env(10, tau, alpha, tau, ramp_up(alpha), ramp_down(alpha), split);
    }
    if (name == "setting2.2" + suffix) {
      return make_env(10, tau, alpha, tau, ramp_down(alpha), ramp_up(alpha), split);
    }
    if (name == "setting2.3" + suffix) {
      for (const Setting23& s : setting23_table()) {
        if (s.tau == tau && s.alpha == alpha) {
          return make_env(10, tau, alpha, tau, s.a, s.b, split);
        }
      }
    }
  }
  for (int i = 0; i < 10; ++i) {
    if (name == "setting4-scenario" + std::to_string(i + 1)) {
      const Setting4Row& row = setting4_table()[i];
      return make_env(10, 100, 10, 100.0, row.a, row.b, split);
    }
  }
  fail(ErrorCode::UnknownScenario, "no scenario named '" + name + "'");
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names = {"setting1"};
  for (auto [tau, alpha] : kSetting2Grid) {
    const std::string suffix = "-" + std::to_string(tau) + "-" + std::to_string(alpha);
    names.push_back("setting2" + suffix);
    names.push_back("setting2.1" + suffix);
    names.push_back("setting2.2" + suffix);
    names.push_back("setting2.3" + suffix);
  }
  for (int i = 1; i <= 10; ++i) names.push_back("setting4-scenario" + std::to_string(i));
  names.push_back("setting5");
  return names;
}

}  // namespace tpmab
