#include "tpmab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace tpmab {

namespace {

constexpr int kLevels = 4;
constexpr const char* kHeader = "session_id,playlist_id,position,skip_level";

bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  size_t pos = 0;
  try {
    out = std::stoi(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string trim(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r");
  size_t end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ParseResult parse_sessions(std::istream& in) {
  ParseResult result;
  std::string line;
  if (!std::getline(in, line) || trim(line) != kHeader) {
    fail(ErrorCode::BadHeader,
         "expected header '" + std::string(kHeader) + "', got '" + trim(line) + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 4) {
      result.issues.push_back({line_no, ErrorCode::BadPosition,
                               "expected 4 fields, got " + std::to_string(fields.size())});
      continue;
    }
    SessionRecord rec;
    rec.session_id = trim(fields[0]);
    rec.playlist_id = trim(fields[1]);
    if (!parse_int(trim(fields[2]), rec.position) || rec.position < 1) {
      result.issues.push_back({line_no, ErrorCode::BadPosition,
                               "position '" + trim(fields[2]) + "' is not a positive integer"});
      continue;
    }
    if (!parse_int(trim(fields[3]), rec.skip_level) || rec.skip_level < 0 ||
        rec.skip_level > kLevels) {
      result.issues.push_back({line_no, ErrorCode::BadLevel,
                               "skip_level '" + trim(fields[3]) + "' outside [0,4]"});
      continue;
    }
    if (rec.session_id.empty() || rec.playlist_id.empty()) {
      result.issues.push_back({line_no, ErrorCode::BadPosition, "empty id field"});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::vector<SessionRecord> parse_sessions_strict(std::istream& in) {
  ParseResult result = parse_sessions(in);
  if (!result.issues.empty()) {
    const ParseIssue& issue = result.issues.front();
    fail(issue.code, "line " + std::to_string(issue.line) + ": " + issue.detail);
  }
  return std::move(result.records);
}

namespace {

RewardVector encode_session(const std::vector<int>& levels, int arm, int songs) {
  RewardVector v;
  v.arm = arm;
  v.pull_round = 0;
  v.values.assign(static_cast<size_t>(songs) * kLevels, 0.0);
  for (int k = 0; k < songs; ++k) {
    for (int j = 0; j < levels[static_cast<size_t>(k)]; ++j) {
      v.values[static_cast<size_t>(k) * kLevels + j] = 1.0;
    }
  }
  return v;
}

}  // namespace

BuildReport build_pool(std::span<const SessionRecord> records, int songs, int top_k) {
  if (songs < 1 || top_k < 1) {
    fail(ErrorCode::NonPositiveDimension, "songs and top_k must be >= 1");
  }
  struct Session {
    std::string playlist;
    bool switched = false;
    std::map<int, int> level_by_position;
  };
  std::map<std::string, Session> sessions;
  for (const SessionRecord& rec : records) {
    Session& s = sessions[rec.session_id];
    if (s.playlist.empty()) {
      s.playlist = rec.playlist_id;
    } else if (s.playlist != rec.playlist_id) {
      s.switched = true;
    }
    s.level_by_position.emplace(rec.position, rec.skip_level);
  }

  BuildReport report;
  report.sessions_seen = static_cast<int64_t>(sessions.size());

  // playlist -> complete sessions, ordered by session id for determinism
  std::map<std::string, std::vector<std::vector<int>>> by_playlist;
  for (const auto& [session_id, s] : sessions) {
    if (s.switched) {
      ++report.dropped_switch;
      continue;
    }
    std::vector<int> levels(static_cast<size_t>(songs), -1);
    bool complete = true;
    for (int pos = 1; pos <= songs; ++pos) {
      auto it = s.level_by_position.find(pos);
      if (it == s.level_by_position.end()) {
        complete = false;
        break;
      }
      levels[static_cast<size_t>(pos - 1)] = it->second;
    }
    if (!complete) {
      ++report.dropped_incomplete;
      continue;
    }
    by_playlist[s.playlist].push_back(std::move(levels));
  }

  if (by_playlist.empty()) {
    fail(ErrorCode::NoPlaylists, "no complete sessions in the input");
  }

  std::vector<std::pair<std::string, size_t>> ranked;
  for (const auto& [playlist, list] : by_playlist) ranked.emplace_back(playlist, list.size());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const int num_arms = std::min<int>(top_k, static_cast<int>(ranked.size()));

  SessionPool pool;
  pool.songs = songs;
  const int64_t tau_max = static_cast<int64_t>(songs) * kLevels;
  pool.spec = validate_spec(num_arms, tau_max, songs,
                            std::vector<double>(static_cast<size_t>(num_arms),
                                                static_cast<double>(tau_max)));
  for (int arm = 0; arm < num_arms; ++arm) {
    pool.playlist_ids.push_back(ranked[static_cast<size_t>(arm)].first);
    std::vector<RewardVector> vectors;
    for (const std::vector<int>& levels : by_playlist[ranked[static_cast<size_t>(arm)].first]) {
      vectors.push_back(encode_session(levels, arm, songs));
    }
    pool.vectors.push_back(std::move(vectors));
  }
  report.pool = std::move(pool);
  return report;
}

std::vector<ArmStats> pool_stats(const SessionPool& pool) {
  std::vector<ArmStats> stats;
  for (int arm = 0; arm < pool.spec.num_arms; ++arm) {
    const auto& vectors = pool.vectors[static_cast<size_t>(arm)];
    if (vectors.empty()) {
      fail(ErrorCode::EmptyArm, "arm " + std::to_string(arm) + " has no sessions");
    }
    if (vectors.size() < 2) {
      fail(ErrorCode::InsufficientSamples,
           "arm " + std::to_string(arm) + " needs >= 2 sessions for a deviation");
    }
    ArmStats s;
    s.count = static_cast<int64_t>(vectors.size());
    double total = 0.0;
    for (const RewardVector& v : vectors) total += cumulative_reward(v);
    s.mean = total / static_cast<double>(s.count);
    double ss = 0.0;
    for (const RewardVector& v : vectors) {
      const double d = cumulative_reward(v) - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
    stats.push_back(s);
  }
  return stats;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void save_pool(const SessionPool& pool, std::ostream& out) {
  out << "tpmab-pool v1\n";
  out << "K=" << pool.spec.num_arms << " N=" << pool.songs
      << " tau_max=" << pool.spec.horizon_tau << " alpha=" << pool.spec.alpha
      << " phi=" << pool.spec.phi << " arms=";
  for (size_t i = 0; i < pool.playlist_ids.size(); ++i) {
    if (i) out << ",";
    out << pool.playlist_ids[i];
  }
  out << "\n";
  for (int arm = 0; arm < pool.spec.num_arms; ++arm) {
    for (const RewardVector& v : pool.vectors[static_cast<size_t>(arm)]) {
      out << arm;
      for (double x : v.values) out << " " << format_value(x);
      out << "\n";
    }
  }
}

SessionPool load_pool(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "tpmab-pool v1") {
    fail(ErrorCode::CorruptPool, "missing 'tpmab-pool v1' header");
  }
  if (!std::getline(in, line)) fail(ErrorCode::CorruptPool, "missing spec line");
  int num_arms = 0, songs = 0, alpha = 0;
  long long tau_max_ll = 0, phi_ll = 0;
  char arms_buf[4096] = {0};
  if (std::sscanf(line.c_str(), "K=%d N=%d tau_max=%lld alpha=%d phi=%lld arms=%4095s",
                  &num_arms, &songs, &tau_max_ll, &alpha, &phi_ll, arms_buf) != 6) {
    fail(ErrorCode::CorruptPool, "unparseable spec line '" + line + "'");
  }
  const int64_t tau_max = tau_max_ll;
  const int64_t phi = phi_ll;
  if (tau_max != static_cast<int64_t>(songs) * kLevels || alpha != songs ||
      phi != kLevels) {
    fail(ErrorCode::CorruptPool, "spec line inconsistent with the 4-level encoding");
  }

  SessionPool pool;
  pool.songs = songs;
  pool.spec = validate_spec(num_arms, tau_max, alpha,
                            std::vector<double>(static_cast<size_t>(num_arms),
                                                static_cast<double>(tau_max)));
  {
    std::stringstream ss(arms_buf);
    std::string id;
    while (std::getline(ss, id, ',')) pool.playlist_ids.push_back(id);
  }
  if (static_cast<int>(pool.playlist_ids.size()) != num_arms) {
    fail(ErrorCode::CorruptPool, "arm id count != K");
  }
  pool.vectors.assign(static_cast<size_t>(num_arms), {});

  int line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    RewardVector v;
    if (!(ss >> v.arm) || v.arm < 0 || v.arm >= num_arms) {
      fail(ErrorCode::CorruptPool, "line " + std::to_string(line_no) + ": bad arm index");
    }
    v.values.reserve(static_cast<size_t>(tau_max));
    double x;
    while (ss >> x) v.values.push_back(x);
    if (static_cast<int64_t>(v.values.size()) != tau_max) {
      fail(ErrorCode::CorruptPool,
           "line " + std::to_string(line_no) + ": expected " + std::to_string(tau_max) +
               " values");
    }
    // Monotone-encoding validation: 0/1 entries, non-increasing within each
    // 4-value song block.
    for (int k = 0; k < songs; ++k) {
      double prev = 1.0;
      for (int j = 0; j < kLevels; ++j) {
        const double value = v.values[static_cast<size_t>(k) * kLevels + j];
        if (value != 0.0 && value != 1.0) {
          fail(ErrorCode::CorruptPool,
               "line " + std::to_string(line_no) + ": non-binary entry");
        }
        if (value > prev) {
          fail(ErrorCode::CorruptPool,
               "line " + std::to_string(line_no) + ": song " + std::to_string(k + 1) +
                   " violates the monotone level encoding");
        }
        prev = value;
      }
    }
    pool.vectors[static_cast<size_t>(v.arm)].push_back(std::move(v));
  }
  return pool;
}

void save_pool_file(const SessionPool& pool, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  save_pool(pool, out);
  if (!out) fail(ErrorCode::IoError, "failed writing '" + path + "'");
}

SessionPool load_pool_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  return load_pool(in);
}

}  // namespace tpmab
