// Times the OpenMP replication kernel against the serial reference on a
// reduced Setting-#1 workload and checks that both produce the same numbers.

#include <chrono>
#include <cstdio>

#include "tpmab/engine.hpp"
#include "tpmab/environments.hpp"

using namespace tpmab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  int64_t horizon = 20000;
  int runs = 16;
  if (argc > 1) horizon = std::atoll(argv[1]);
  if (argc > 2) runs = std::atoi(argv[2]);

  auto env = scenario_library("setting1");
  ReplicationConfig config;
  config.policies = {{PolicyKind::TpUcbFr, 20},
                     {PolicyKind::TpUcbEw, 20},
                     {PolicyKind::DelayedUcb1, 1}};
  config.horizon = horizon;
  config.runs = runs;
  config.base_seed = 7;

  std::printf("horizon=%lld runs=%d policies=%zu\n",
              static_cast<long long>(horizon), runs, config.policies.size());

  auto start = std::chrono::steady_clock::now();
  config.workers = 1;
  AggregateResult serial = replicate_serial(*env, config);
  const double serial_time = seconds_since(start);
  std::printf("serial reference: %.2fs\n", serial_time);

  start = std::chrono::steady_clock::now();
  config.workers = 0;
  AggregateResult parallel = replicate(*env, config);
  const double parallel_time = seconds_since(start);
  std::printf("openmp kernel:    %.2fs  (speedup %.2fx)\n", parallel_time,
              serial_time / parallel_time);

  bool identical = true;
  for (size_t p = 0; p < serial.policies.size(); ++p) {
    if (serial.policies[p].mean_regret != parallel.policies[p].mean_regret ||
        serial.policies[p].ci_half_width != parallel.policies[p].ci_half_width) {
      identical = false;
    }
    std::printf("%-16s final regret %.2f +- %.2f\n", serial.policies[p].label.c_str(),
                serial.policies[p].final_regret, serial.policies[p].final_ci_half_width);
  }
  std::printf("serial and parallel results %s\n",
              identical ? "are bit-identical" : "DIFFER");
  return identical ? 0 : 1;
}
