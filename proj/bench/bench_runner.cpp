// Times the serial reference against the OpenMP runner on a mid-size
// experiment and checks they emit identical bytes.
//
// Usage: fgb_bench [T] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fgb/config.hpp"
#include "fgb/csv.hpp"
#include "fgb/runner.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  long long horizon = argc > 1 ? std::atoll(argv[1]) : 8000;
  int reps = argc > 2 ? std::atoi(argv[2]) : 32;

  fgb::RunConfig cfg;
  cfg.learner = "strong";
  cfg.protocol = "uninformed";
  cfg.horizon = horizon;
  cfg.reps = reps;
  cfg.master_seed = 1234;
  cfg.delta = 0.05;
  cfg.graph.family = "union_of_cliques";
  cfg.graph.clique_sizes = {2, 2, 2, 2, 2};
  cfg.loss.model = "bernoulli";
  cfg.loss.means = {0.3, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};

  std::printf("strong learner, K=10, T=%lld, reps=%d\n", horizon, reps);

  const auto t0 = std::chrono::steady_clock::now();
  const fgb::RunResult serial = fgb::run_experiment_serial(cfg);
  const double serial_s = seconds_since(t0);
  const std::string serial_csv = fgb::traces_to_csv(serial.traces);
  std::printf("serial reference : %8.3f s\n", serial_s);

  for (int workers : {1, 2, 4, 8}) {
    cfg.workers = workers;
    const auto t1 = std::chrono::steady_clock::now();
    const fgb::RunResult parallel = fgb::run_experiment_parallel(cfg);
    const double par_s = seconds_since(t1);
    const bool same = fgb::traces_to_csv(parallel.traces) == serial_csv;
    std::printf("openmp %d workers : %8.3f s  speedup %5.2fx  output %s\n",
                workers, par_s, serial_s / par_s,
                same ? "identical" : "DIFFERS");
    if (!same) return 1;
  }
  return 0;
}
