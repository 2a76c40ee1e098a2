#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fgb/simplex.hpp"

namespace fgb {

enum class Observability {
  kStronglyObservable,
  kWeaklyObservable,
  kUnobservable,
};

std::string to_string(Observability o);

// Directed feedback graph on K nodes, stored as in-neighborhood sets:
// in_neighbors(i) is the set of nodes j with an edge (j, i), i.e. the nodes
// whose play reveals the loss of i. Immutable after construction; validated
// once so downstream code can assume well-formedness. Safe to share across
// threads.
class FeedbackGraph {
 public:
  // Throws std::invalid_argument on out-of-range indices or K <= 0.
  // Duplicate entries in an in-neighbor list are collapsed.
  FeedbackGraph(int num_nodes, std::vector<std::vector<int>> in_neighbors);

  int num_nodes() const { return num_nodes_; }
  std::span<const int> in_neighbors(int i) const { return in_[i]; }
  // Nodes whose loss is revealed when i is played.
  std::span<const int> out_neighbors(int i) const { return out_[i]; }

  bool has_self_loop(int i) const { return self_loop_[i] != 0; }
  bool has_edge(int from, int to) const;

  // S: nodes with a self-loop (sorted ascending).
  const std::vector<int>& self_loop_set() const { return self_loops_; }
  const std::vector<int>& loopless_set() const { return loopless_; }

  Observability observability() const { return observability_; }

 private:
  int num_nodes_;
  std::vector<std::vector<int>> in_;   // sorted ascending
  std::vector<std::vector<int>> out_;  // sorted ascending
  std::vector<char> self_loop_;
  std::vector<int> self_loops_;
  std::vector<int> loopless_;
  Observability observability_;
};

Observability classify(const FeedbackGraph& g);

std::vector<int> self_loop_set(const FeedbackGraph& g);

// Probability that the loss of node i is observed when actions are drawn
// from dist: sum of dist over the in-neighborhood of i.
double observation_probability(const FeedbackGraph& g,
                               const ProbabilityVector& dist, int i);

// Sum over self-loop nodes i of dist_i / (W_i + gamma), the stability
// quantity of implicit-exploration estimators. Zero-mass nodes contribute
// nothing, which also keeps gamma = 0 well defined.
double ix_quantity(const FeedbackGraph& g, const ProbabilityVector& dist,
                   double gamma);

// Variant with separate numerator weights and observation distribution
// (the learner's sampling distribution carries an exploration mix that the
// mirror-descent iterate does not).
double ix_quantity(const FeedbackGraph& g, const ProbabilityVector& weights,
                   const ProbabilityVector& sampling, double gamma);

// Brute-force search caps. Exact routines exist as test oracles and for
// small-K parameter schedules only.
inline constexpr int kMaxExactIndependenceNodes = 24;
inline constexpr int kMaxExactDominationNodes = 20;

// Exact independence number by branch and bound. A pair (i, j), i != j, is
// connected if the graph has an edge in either direction; self-loops never
// disqualify a pair. Throws std::invalid_argument when K > max_nodes.
int independence_number_exact(const FeedbackGraph& g,
                              int max_nodes = kMaxExactIndependenceNodes);

// Greedy set cover over the loopless nodes: repeatedly pick the node
// covering the most still-uncovered loopless nodes, tie-break by smallest
// index. Result size is within (1 + ln K) of optimal. Throws ProtocolError
// if some loopless node cannot be covered (unobservable graph).
std::vector<int> greedy_weak_dominating_set(const FeedbackGraph& g);

bool is_weak_dominating_set(const FeedbackGraph& g,
                            std::span<const int> candidate);

// Exact weak domination number by exhaustive set-cover search (test oracle
// for the greedy bound). Throws on K > max_nodes or unobservable graphs.
int weak_domination_number_exact(const FeedbackGraph& g,
                                 int max_nodes = kMaxExactDominationNodes);

// Subgraph induced by `nodes` (indices are remapped to 0..|nodes|-1 in the
// given order). Used for the independence number restricted to self-loop
// nodes.
FeedbackGraph induced_subgraph(const FeedbackGraph& g,
                               std::span<const int> nodes);

// Text form: "K=3; 0:0,1; 1:1; 2:0,2". Whitespace-insensitive on parse;
// every node must be listed exactly once, empty lists written "i:".
FeedbackGraph parse_graph(const std::string& text);
std::string format_graph(const FeedbackGraph& g);

// One graph per non-empty line; lines starting with '#' are skipped.
std::vector<FeedbackGraph> read_graph_sequence(std::istream& in);
std::vector<FeedbackGraph> read_graph_sequence_file(const std::string& path);

}  // namespace fgb
