#pragma once

#include <optional>
#include <string>

namespace tpmab {

struct RunOverrides {
  std::optional<uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> workers;
};

// Runs the configured experiment and writes per-policy trajectory tables, a
// summary record and a reproducibility manifest into out_dir. Returns the
// process exit status.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            const RunOverrides& overrides);

// Evaluates the theoretical curves for the configured instance on the
// checkpoint grid and writes bounds.csv into out_dir.
int cmd_bounds(const std::string& config_path, const std::string& out_dir);

// Parses a session CSV, builds the replay pool and writes the pool file plus
// a per-arm stats report.
int cmd_ingest(const std::string& csv_path, const std::string& out_pool_path,
               int songs, int top_k);

int cmd_scenarios();

}  // namespace tpmab
