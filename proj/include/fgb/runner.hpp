#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fgb/config.hpp"
#include "fgb/environments.hpp"
#include "fgb/learners.hpp"
#include "fgb/trace.hpp"

namespace fgb {

struct RunMetadata {
  int num_actions = 0;
  long long horizon = 0;
  int reps = 0;
  std::uint64_t master_seed = 0;
  double delta = 0.0;
  std::string learner;
  std::string protocol;
  std::string stats_source;  // where the declared graph numbers came from
  DeclaredBounds bounds;
  std::map<std::string, double> resolved_params;
  int total_clamps = 0;
};

struct RunResult {
  RunMetadata meta;
  std::vector<RegretTrace> traces;  // indexed by repetition
};

std::shared_ptr<GraphSource> make_graph_source(const GraphConfig& cfg);
std::unique_ptr<LossModel> make_loss_model(const LossConfig& cfg, int k);
std::unique_ptr<Learner> make_learner(const RunConfig& cfg, int k,
                                      const HorizonStats& stats,
                                      std::map<std::string, double>* resolved);

// Drives `horizon` rounds of the interaction protocol between one learner
// and one environment. Informed learners receive the graph before acting;
// uninformed learners receive it with the feedback. Sequential by nature:
// each round's outcome feeds the next.
RegretTrace run_protocol(Learner& learner, Environment& env, long long horizon,
                         rng::Stream sampling, bool keep_losses);

// One repetition. Streams derive from (master_seed, rep), so repetitions
// are independent of each other and of scheduling.
RegretTrace run_single_rep(const RunConfig& cfg,
                           std::shared_ptr<const GraphSource> graphs, int rep);

// Serial reference: plain loop over repetitions.
RunResult run_experiment_serial(const RunConfig& cfg);
// OpenMP over repetitions; falls back to the serial path when built without
// OpenMP. Output is identical to the serial reference for any worker count.
RunResult run_experiment_parallel(const RunConfig& cfg);
// Dispatches on cfg.workers.
RunResult run_experiment(const RunConfig& cfg);

}  // namespace fgb
