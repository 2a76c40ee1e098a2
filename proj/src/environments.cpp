#include "fgb/environments.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fgb/errors.hpp"

namespace fgb {

HorizonStats GraphSource::horizon(long long horizon_rounds) const {
  HorizonStats h;
  for (long long t = 0; t < horizon_rounds; ++t) {
    const GraphStats s = stats_at(t);
    h.sum_alpha += s.alpha;
    h.max_alpha = std::max(h.max_alpha, s.alpha);
    h.sum_d += s.weak_domination;
    h.sum_alpha_tilde += s.alpha_tilde;
    h.max_alpha_tilde = std::max(h.max_alpha_tilde, s.alpha_tilde);
  }
  return h;
}

namespace {

class StaticGraphSource : public GraphSource {
 public:
  StaticGraphSource(FeedbackGraph g, GraphStats stats, std::string source)
      : graph_(std::move(g)), stats_(stats), source_(std::move(source)) {}

  int num_nodes() const override { return graph_.num_nodes(); }
  const FeedbackGraph& graph_at(long long) const override { return graph_; }
  GraphStats stats_at(long long) const override { return stats_; }
  std::string stats_source() const override { return source_; }

 private:
  FeedbackGraph graph_;
  GraphStats stats_;
  std::string source_;
};

class SequenceGraphSource : public GraphSource {
 public:
  SequenceGraphSource(std::vector<FeedbackGraph> graphs,
                      std::vector<GraphStats> stats)
      : graphs_(std::move(graphs)), stats_(std::move(stats)) {}

  int num_nodes() const override { return graphs_.front().num_nodes(); }
  const FeedbackGraph& graph_at(long long t) const override {
    return graphs_[t % graphs_.size()];
  }
  GraphStats stats_at(long long t) const override {
    return stats_[t % stats_.size()];
  }
  std::string stats_source() const override { return "exact"; }

 private:
  std::vector<FeedbackGraph> graphs_;
  std::vector<GraphStats> stats_;
};

GraphStats exact_stats(const FeedbackGraph& g) {
  GraphStats s;
  s.alpha = independence_number_exact(g);
  s.weak_domination = g.loopless_set().empty()
                          ? 0.0
                          : weak_domination_number_exact(g);
  s.alpha_tilde =
      g.self_loop_set().empty()
          ? 0.0
          : independence_number_exact(induced_subgraph(g, g.self_loop_set()));
  return s;
}

}  // namespace

std::shared_ptr<GraphSource> make_self_loops_only(int k) {
  if (k < 1) throw ConfigError("self_loops_only needs K >= 1");
  std::vector<std::vector<int>> in(k);
  for (int i = 0; i < k; ++i) in[i] = {i};
  const double kk = k;
  return std::make_shared<StaticGraphSource>(FeedbackGraph(k, std::move(in)),
                                             GraphStats{kk, 0.0, kk}, "family");
}

std::shared_ptr<GraphSource> make_union_of_cliques(std::vector<int> sizes) {
  const int k = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (sizes.empty() || k < 1 ||
      std::any_of(sizes.begin(), sizes.end(), [](int s) { return s < 1; })) {
    throw ConfigError("union_of_cliques needs positive clique sizes");
  }
  std::vector<std::vector<int>> in(k);
  int base = 0;
  for (int size : sizes) {
    for (int i = base; i < base + size; ++i) {
      for (int j = base; j < base + size; ++j) in[i].push_back(j);
    }
    base += size;
  }
  const double m = static_cast<double>(sizes.size());
  return std::make_shared<StaticGraphSource>(FeedbackGraph(k, std::move(in)),
                                             GraphStats{m, 0.0, m}, "family");
}

std::shared_ptr<GraphSource> make_loopless_complete(int k) {
  if (k < 2) throw ConfigError("loopless_complete needs K >= 2");
  std::vector<std::vector<int>> in(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j != i) in[i].push_back(j);
    }
  }
  // Every pair is connected and every node is loopless: the smallest cover
  // needs one node for the rest plus one node to cover it.
  return std::make_shared<StaticGraphSource>(FeedbackGraph(k, std::move(in)),
                                             GraphStats{1.0, 2.0, 0.0},
                                             "family");
}

std::shared_ptr<GraphSource> make_revealing_action(int k) {
  if (k < 2) throw ConfigError("revealing_action needs K >= 2");
  std::vector<std::vector<int>> in(k);
  for (int i = 0; i < k; ++i) in[i] = {0};
  return std::make_shared<StaticGraphSource>(
      FeedbackGraph(k, std::move(in)),
      GraphStats{static_cast<double>(k - 1), 1.0, 1.0}, "family");
}

std::shared_ptr<GraphSource> make_star_weak(int k, int hubs) {
  if (hubs < 1 || hubs > k) throw ConfigError("star_weak needs 1 <= hubs <= K");
  std::vector<std::vector<int>> in(k);
  for (int h = 0; h < hubs; ++h) in[h] = {h};
  const int leaves = k - hubs;
  for (int leaf = 0; leaf < leaves; ++leaf) {
    in[hubs + leaf] = {leaf % hubs};
  }
  // Leaves are pairwise unconnected; a hub without leaves conflicts with
  // nothing either.
  const double alpha = leaves + std::max(0, hubs - leaves);
  const double d = std::min(hubs, leaves);
  return std::make_shared<StaticGraphSource>(
      FeedbackGraph(k, std::move(in)),
      GraphStats{alpha, d, static_cast<double>(hubs)}, "family");
}

std::shared_ptr<GraphSource> make_erdos_renyi_self_aware(int k, double density,
                                                         std::uint64_t seed) {
  if (k < 1 || k > kMaxExactIndependenceNodes) {
    throw ConfigError("erdos_renyi needs 1 <= K <= 24 (stats are brute-forced)");
  }
  if (!(density >= 0.0 && density <= 1.0)) {
    throw ConfigError("erdos_renyi density must lie in [0, 1]");
  }
  rng::Stream rng = rng::Stream(rng::mix64(seed)).substream("er-graph");
  std::vector<std::vector<int>> in(k);
  for (int i = 0; i < k; ++i) {
    in[i].push_back(i);
    for (int j = 0; j < k; ++j) {
      if (j != i && rng.bernoulli(density)) in[i].push_back(j);
    }
  }
  FeedbackGraph g(k, std::move(in));
  GraphStats stats = exact_stats(g);
  return std::make_shared<StaticGraphSource>(std::move(g), stats, "exact");
}

std::shared_ptr<GraphSource> make_sequence_source(const std::string& path) {
  auto graphs = read_graph_sequence_file(path);
  const int k = graphs.front().num_nodes();
  std::vector<GraphStats> stats;
  stats.reserve(graphs.size());
  for (const auto& g : graphs) {
    if (g.num_nodes() != k) {
      throw ConfigError("graph sequence mixes different K");
    }
    if (k > kMaxExactDominationNodes) {
      throw ConfigError(
          "graph sequence K exceeds the exact-stats cap; supply bounds via a "
          "generator family instead");
    }
    stats.push_back(exact_stats(g));
  }
  return std::make_shared<SequenceGraphSource>(std::move(graphs),
                                               std::move(stats));
}

// ---------------------------------------------------------------------------
// Loss models

namespace {

class StochasticLosses : public LossModel {
 public:
  explicit StochasticLosses(std::vector<double> means)
      : means_(std::move(means)) {
    for (double m : means_) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw ConfigError("bernoulli means must lie in [0, 1]");
      }
    }
  }

  std::vector<double> losses(long long, std::span<const int>,
                             rng::Stream& rng) override {
    std::vector<double> l(means_.size());
    for (std::size_t i = 0; i < means_.size(); ++i) {
      l[i] = rng.bernoulli(means_[i]) ? 1.0 : 0.0;
    }
    return l;
  }

 private:
  std::vector<double> means_;
};

class LateSwitch : public LossModel {
 public:
  LateSwitch(int k, long long switch_round)
      : k_(k), switch_round_(switch_round) {
    if (switch_round < 1) throw ConfigError("switch_round must be >= 1");
  }

  std::vector<double> losses(long long t, std::span<const int>,
                             rng::Stream&) override {
    std::vector<double> l(k_, 0.5);
    l[0] = (t + 1) <= switch_round_ ? 0.0 : 1.0;  // t is 0-indexed here
    return l;
  }

 private:
  int k_;
  long long switch_round_;
};

class AdaptiveTargeting : public LossModel {
 public:
  AdaptiveTargeting(int k, int window, int safe_arm)
      : k_(k), window_(window), safe_arm_(safe_arm) {
    if (window < 1) throw ConfigError("adaptive window must be >= 1");
    if (safe_arm < 0 || safe_arm >= k) throw ConfigError("safe arm out of range");
  }

  std::vector<double> losses(long long, std::span<const int> history,
                             rng::Stream&) override {
    std::vector<int> counts(k_, 0);
    const std::size_t start =
        history.size() > static_cast<std::size_t>(window_)
            ? history.size() - static_cast<std::size_t>(window_)
            : 0;
    for (std::size_t s = start; s < history.size(); ++s) ++counts[history[s]];
    int target = 0;
    for (int i = 1; i < k_; ++i) {
      if (counts[i] > counts[target]) target = i;
    }
    std::vector<double> l(k_, 0.5);
    l[target] = 1.0;
    l[safe_arm_] = 0.0;  // the safe arm stays free even when targeted
    return l;
  }

 private:
  int k_;
  int window_;
  int safe_arm_;
};

}  // namespace

std::unique_ptr<LossModel> make_stochastic_losses(std::vector<double> means) {
  return std::make_unique<StochasticLosses>(std::move(means));
}

std::unique_ptr<LossModel> make_late_switch(int k, long long switch_round) {
  return std::make_unique<LateSwitch>(k, switch_round);
}

std::unique_ptr<LossModel> make_adaptive_targeting(int k, int window,
                                                   int safe_arm) {
  return std::make_unique<AdaptiveTargeting>(k, window, safe_arm);
}

// ---------------------------------------------------------------------------
// Environment

Environment::Environment(std::shared_ptr<const GraphSource> graphs,
                         std::unique_ptr<LossModel> losses, rng::Stream rng)
    : graphs_(std::move(graphs)), losses_(std::move(losses)), rng_(rng) {}

void Environment::begin_round() {
  if (round_open_) throw std::logic_error("begin_round called twice");
  // Graph first, then losses; both are fixed before the action exists.
  (void)graphs_->graph_at(t_);
  current_losses_ = losses_->losses(t_, history_, rng_);
  if (static_cast<int>(current_losses_.size()) != num_actions()) {
    throw ProtocolError("loss model emitted a vector of the wrong length");
  }
  for (double l : current_losses_) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw ProtocolError("loss outside [0, 1]");
    }
  }
  round_open_ = true;
}

const FeedbackGraph& Environment::current_graph() const {
  if (!round_open_) throw std::logic_error("no round in progress");
  return graphs_->graph_at(t_);
}

const std::vector<double>& Environment::current_losses() const {
  if (!round_open_) throw std::logic_error("no round in progress");
  return current_losses_;
}

GraphStats Environment::current_stats() const {
  if (!round_open_) throw std::logic_error("no round in progress");
  return graphs_->stats_at(t_);
}

RoundFeedback Environment::observe(int action) const {
  if (!round_open_) throw std::logic_error("no round in progress");
  if (action < 0 || action >= num_actions()) {
    throw ProtocolError("action out of range");
  }
  return make_round_feedback(current_graph(), current_losses_, action);
}

void Environment::end_round(int action) {
  if (!round_open_) throw std::logic_error("no round in progress");
  history_.push_back(action);
  ++t_;
  round_open_ = false;
}

}  // namespace fgb
