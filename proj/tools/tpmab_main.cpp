#include <CLI11.hpp>

#include "tpmab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Temporally-partitioned-rewards bandit experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "results";
  std::optional<uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> workers;

  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override base seed");
  run->add_option("--runs", runs, "override number of runs");
  run->add_option("--workers", workers, "override worker count (0 = all cores)");

  CLI::App* bounds = app.add_subcommand("bounds", "emit theoretical bound curves");
  bounds->add_option("--config", config_path, "experiment config file")->required();
  bounds->add_option("--out", out_dir, "output directory");

  std::string csv_path;
  std::string pool_path = "sessions.pool";
  int songs = 20;
  int top_k = 6;
  CLI::App* ingest = app.add_subcommand("ingest", "build a replay pool from session logs");
  ingest->add_option("--csv", csv_path, "session log CSV")->required();
  ingest->add_option("--out", pool_path, "pool file to write");
  ingest->add_option("--songs", songs, "tracks per session (N)");
  ingest->add_option("--top", top_k, "number of playlists to keep");

  app.add_subcommand("scenarios", "list built-in scenario ids");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("run")) {
    return tpmab::cmd_run(config_path, out_dir, {seed, runs, workers});
  }
  if (app.got_subcommand("bounds")) {
    return tpmab::cmd_bounds(config_path, out_dir);
  }
  if (app.got_subcommand("ingest")) {
    return tpmab::cmd_ingest(csv_path, pool_path, songs, top_k);
  }
  return tpmab::cmd_scenarios();
}
