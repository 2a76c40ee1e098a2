#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fgb/estimation.hpp"
#include "fgb/graph.hpp"
#include "fgb/rng.hpp"

namespace fgb {

// Per-round graph parameters a family declares by construction: the graph's
// independence number, weak domination number, and the independence number
// of the subgraph induced by its self-loop nodes.
struct GraphStats {
  double alpha = 0.0;
  double weak_domination = 0.0;
  double alpha_tilde = 0.0;
};

struct HorizonStats {
  double sum_alpha = 0.0;
  double max_alpha = 0.0;
  double sum_d = 0.0;
  double sum_alpha_tilde = 0.0;
  double max_alpha_tilde = 0.0;
};

// Deterministic per-round graph source. Every family fixes its graphs at
// construction (random families carry their own seed), so a run's graph
// sequence and the schedule sums are known for any horizon and identical
// across repetitions. Immutable; share one instance across workers.
class GraphSource {
 public:
  virtual ~GraphSource() = default;
  virtual int num_nodes() const = 0;
  virtual const FeedbackGraph& graph_at(long long t) const = 0;
  virtual GraphStats stats_at(long long t) const = 0;
  // "family" when the numbers come from the construction, "exact" when they
  // were brute-forced.
  virtual std::string stats_source() const = 0;

  HorizonStats horizon(long long horizon_rounds) const;
};

std::shared_ptr<GraphSource> make_self_loops_only(int k);
// Self-aware union of cliques; sizes must sum to K.
std::shared_ptr<GraphSource> make_union_of_cliques(std::vector<int> sizes);
std::shared_ptr<GraphSource> make_loopless_complete(int k);
// Node 0 has a self-loop and out-edges to every node; nodes 1..K-1 have no
// other in-edges.
std::shared_ptr<GraphSource> make_revealing_action(int k);
// `hubs` self-aware hub nodes; the remaining nodes are loopless leaves
// assigned round-robin, each observed only by its hub.
std::shared_ptr<GraphSource> make_star_weak(int k, int hubs);
// One fixed random self-aware graph: every ordered off-diagonal edge kept
// with probability `density`. Declared stats are brute-forced (K <= 24).
std::shared_ptr<GraphSource> make_erdos_renyi_self_aware(int k, double density,
                                                         std::uint64_t seed);
// Graphs from a sequence file, cycled when the horizon is longer. All
// graphs must share K and be small enough for exact stats.
std::shared_ptr<GraphSource> make_sequence_source(const std::string& path);

// Per-round hidden loss vectors in [0,1]^K. `history` holds the actions of
// rounds strictly before t: an adaptive adversary may read it, but losses
// for round t can never depend on the round-t action.
class LossModel {
 public:
  virtual ~LossModel() = default;
  virtual std::vector<double> losses(long long t, std::span<const int> history,
                                     rng::Stream& rng) = 0;
};

// Independent Bernoulli(means[i]) losses each round.
std::unique_ptr<LossModel> make_stochastic_losses(std::vector<double> means);
// Arm 0 has loss 0 through switch_round (1-indexed, inclusive) and loss 1
// afterwards; every other arm has constant loss 1/2. Oblivious.
std::unique_ptr<LossModel> make_late_switch(int k, long long switch_round);
// Loss 1 on the arm played most often in the trailing window (ties to the
// lowest index), 0 on the safe arm, 1/2 elsewhere. Deterministic in the
// history.
std::unique_ptr<LossModel> make_adaptive_targeting(int k, int window,
                                                   int safe_arm);

// One run's view of the interaction protocol. begin_round fixes (G_t, l_t)
// from the history; observe builds feedback without mutating the round;
// end_round appends the action. The harness controls when the graph becomes
// learner-visible.
class Environment {
 public:
  Environment(std::shared_ptr<const GraphSource> graphs,
              std::unique_ptr<LossModel> losses, rng::Stream rng);

  int num_actions() const { return graphs_->num_nodes(); }
  void begin_round();
  const FeedbackGraph& current_graph() const;
  const std::vector<double>& current_losses() const;
  GraphStats current_stats() const;
  RoundFeedback observe(int action) const;
  void end_round(int action);
  long long round() const { return t_; }

 private:
  std::shared_ptr<const GraphSource> graphs_;
  std::unique_ptr<LossModel> losses_;
  rng::Stream rng_;
  std::vector<int> history_;
  std::vector<double> current_losses_;
  long long t_ = 0;
  bool round_open_ = false;
};

}  // namespace fgb
