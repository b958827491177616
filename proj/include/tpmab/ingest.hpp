#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tpmab/core.hpp"

namespace tpmab {

// One track playback row. skip_level counts listening levels reached, 0..4.
struct SessionRecord {
  std::string session_id;
  std::string playlist_id;
  int position = 0;  // 1-based track position within the session
  int skip_level = 0;
};

struct ParseIssue {
  int line = 0;  // 1-based, header is line 1
  ErrorCode code = ErrorCode::BadPosition;
  std::string detail;
};

struct ParseResult {
  std::vector<SessionRecord> records;
  std::vector<ParseIssue> issues;
};

// CSV with header `session_id,playlist_id,position,skip_level`. Throws
// BadHeader on a wrong header; malformed rows are reported in issues with
// their line numbers.
ParseResult parse_sessions(std::istream& in);

// Same, but any malformed row throws immediately.
std::vector<SessionRecord> parse_sessions_strict(std::istream& in);

// Per-arm pools of replayable reward vectors. Each session becomes a vector
// of length 4N where song k occupies entries 4(k-1)+1..4k, a non-increasing
// block of 0/1 values (reaching level j implies all earlier levels).
struct SessionPool {
  SmoothnessSpec spec;  // tau_max = 4N, alpha = N, phi = 4, max_reward = 4N
  int songs = 0;        // N
  std::vector<std::string> playlist_ids;        // arm -> source playlist
  std::vector<std::vector<RewardVector>> vectors;  // arm -> sessions
};

struct BuildReport {
  SessionPool pool;
  int64_t sessions_seen = 0;
  int64_t dropped_incomplete = 0;  // short sessions or position gaps/duplicates
  int64_t dropped_switch = 0;      // playlist changed mid-session
};

// Keeps the top_k playlists with most complete sessions (ties broken by
// playlist id); sessions longer than N songs are truncated to the first N.
BuildReport build_pool(std::span<const SessionRecord> records, int songs, int top_k);

struct ArmStats {
  double mean = 0.0;
  double stddev = 0.0;  // unbiased
  int64_t count = 0;
};

std::vector<ArmStats> pool_stats(const SessionPool& pool);

// Line-oriented portable pool format, versioned header `tpmab-pool v1`.
void save_pool(const SessionPool& pool, std::ostream& out);
SessionPool load_pool(std::istream& in);

void save_pool_file(const SessionPool& pool, const std::string& path);
SessionPool load_pool_file(const std::string& path);

}  // namespace tpmab
