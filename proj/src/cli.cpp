#include "tpmab/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tpmab/analysis.hpp"
#include "tpmab/config.hpp"
#include "tpmab/engine.hpp"
#include "tpmab/ingest.hpp"

namespace tpmab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string policy_slug(const PolicyConfig& pc) {
  std::string slug = policy_kind_name(pc.kind);
  if (pc.kind == PolicyKind::TpUcbFr || pc.kind == PolicyKind::TpUcbEw) {
    slug += "_eta" + std::to_string(pc.eta);
  }
  return slug;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

int report_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return e.code() == ErrorCode::ConfigError ? 2 : 1;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const RunOverrides& overrides) {
  try {
    const std::string canonical = canonical_config_text(config_path);
    ExperimentConfig config = parse_config(canonical);
    if (overrides.seed) config.base_seed = *overrides.seed;
    if (overrides.runs) config.runs = *overrides.runs;
    if (overrides.workers) config.workers = *overrides.workers;

    std::unique_ptr<Environment> env = build_environment(config);
    ReplicationConfig rc = build_replication(config, env->spec());
    AggregateResult result = replicate(*env, rc);

    fs::create_directories(out_dir);
    std::vector<std::string> outputs;

    for (const PolicyAggregate& agg : result.policies) {
      const std::string filename = "trajectory_" + policy_slug(agg.policy) + ".csv";
      std::string table = "checkpoint_round,mean_regret,ci_half_width,runs\n";
      for (size_t c = 0; c < result.grid.rounds.size(); ++c) {
        table += std::to_string(result.grid.rounds[c]) + "," + fmt17(agg.mean_regret[c]) +
                 "," + fmt17(agg.ci_half_width[c]) + "," + std::to_string(result.runs) +
                 "\n";
      }
      write_text_file(fs::path(out_dir) / filename, table);
      outputs.push_back(filename);
    }

    json summary;
    summary["version"] = 1;
    summary["config_hash"] = config_hash(canonical);
    summary["horizon"] = rc.horizon;
    summary["runs"] = result.runs;
    summary["policies"] = json::array();
    for (const PolicyAggregate& agg : result.policies) {
      json entry;
      entry["policy"] = agg.label;
      entry["final_regret_mean"] = agg.final_regret;
      entry["final_regret_ci95_half_width"] = agg.final_ci_half_width;
      if (agg.regret_percent) {
        entry["regret_percent_vs_delayed_ucb1"] = *agg.regret_percent;
      }
      summary["policies"].push_back(entry);
    }
    write_text_file(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
    outputs.push_back("summary.json");

    json manifest;
    manifest["version"] = 1;
    manifest["config_hash"] = config_hash(canonical);
    manifest["base_seed"] = rc.base_seed;
    json seeds = json::array();
    for (int r = 0; r < rc.runs; ++r) seeds.push_back(rc.base_seed + static_cast<uint64_t>(r));
    manifest["run_seeds"] = seeds;
    manifest["shared_randomness"] = rc.shared_randomness;
    manifest["outputs"] = outputs;
    write_text_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "wrote " << outputs.size() + 1 << " files to " << out_dir << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_bounds(const std::string& config_path, const std::string& out_dir) {
  try {
    ExperimentConfig config = load_config_file(config_path);
    std::unique_ptr<Environment> env = build_environment(config);
    const std::vector<double> mu = env->true_means();
    const double mu_star = *std::max_element(mu.begin(), mu.end());
    for (size_t arm = 0; arm < mu.size(); ++arm) {
      if (mu_star - mu[arm] <= 0.0) {
        std::cerr << "note: arm " << arm
                  << " has zero gap and is excluded from the bound sums\n";
      }
    }
    BoundInputs inputs = make_bound_inputs(*env);

    const CheckpointGrid grid = CheckpointGrid::standard(config.horizon);
    const std::vector<double> lower_plain = lower_bound_curve(inputs, false, grid.rounds);
    const std::vector<double> lower_smooth = lower_bound_curve(inputs, true, grid.rounds);

    std::string table = "T,lower_plain,lower_smooth,ub_fr,ub_ew,ub_ucb1,ub_delayed\n";
    for (size_t c = 0; c < grid.rounds.size(); ++c) {
      const int64_t T = grid.rounds[c];
      const BaselineBounds baselines = baseline_upper_bounds(inputs, T);
      table += std::to_string(T) + "," + fmt17(lower_plain[c]) + "," +
               fmt17(lower_smooth[c]) + "," + fmt17(fr_upper_bound(inputs, T)) + "," +
               fmt17(ew_upper_bound(inputs, T)) + "," + fmt17(baselines.ucb1) + "," +
               fmt17(baselines.delayed) + "\n";
    }
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "bounds.csv", table);

    const std::vector<double> thresholds = alpha_improvement_thresholds(inputs);
    std::cout << "beta = " << fmt17(beta_constant(inputs)) << "\n";
    for (size_t i = 0; i < thresholds.size(); ++i) {
      std::cout << "arm with rbar=" << fmt17(inputs.rbar[i])
                << ": smoothness pays off for alpha > " << fmt17(thresholds[i]) << "\n";
    }
    std::cout << "wrote bounds.csv to " << out_dir << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_ingest(const std::string& csv_path, const std::string& out_pool_path,
               int songs, int top_k) {
  try {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + csv_path + "'");
    ParseResult parsed = parse_sessions(in);
    if (!parsed.issues.empty()) {
      for (const ParseIssue& issue : parsed.issues) {
        std::cerr << csv_path << ":" << issue.line << ": "
                  << error_code_name(issue.code) << ": " << issue.detail << "\n";
      }
      return 1;
    }
    BuildReport report = build_pool(parsed.records, songs, top_k);
    save_pool_file(report.pool, out_pool_path);

    const SmoothnessSpec& spec = report.pool.spec;
    std::cout << "pool: K=" << spec.num_arms << " N=" << songs
              << " tau_max=" << spec.horizon_tau << " alpha=" << spec.alpha << "\n";
    std::cout << "sessions: " << report.sessions_seen << " seen, "
              << report.dropped_incomplete << " dropped incomplete, "
              << report.dropped_switch << " dropped for playlist switches\n";
    const std::vector<ArmStats> stats = pool_stats(report.pool);
    for (int arm = 0; arm < spec.num_arms; ++arm) {
      const ArmStats& s = stats[static_cast<size_t>(arm)];
      std::cout << "arm " << arm << " (" << report.pool.playlist_ids[static_cast<size_t>(arm)]
                << "): sessions=" << s.count << " mean=" << fmt17(s.mean)
                << " stddev=" << fmt17(s.stddev) << "\n";
    }
    std::cout << "wrote " << out_pool_path << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_scenarios() {
  for (const std::string& name : scenario_names()) std::cout << name << "\n";
  return 0;
}

}  // namespace tpmab
