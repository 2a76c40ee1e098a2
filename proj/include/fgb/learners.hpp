#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fgb/estimation.hpp"
#include "fgb/graph.hpp"
#include "fgb/rng.hpp"
#include "fgb/simplex.hpp"

namespace fgb {

enum class Protocol { kUninformed, kInformed };

struct Decision {
  ProbabilityVector sampling;  // distribution the action was drawn from
  int action = -1;
};

// Parameters of the strongly-observable-graph algorithm. The schedule sets
// all three equal; the fields stay independent so ablations (gamma = beta
// = 0) and overrides remain expressible.
struct StrongParams {
  double eta = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

// eta = gamma = beta = min{ 1/sqrt(sum_alpha * ln(1/delta)), 1/2 }.
StrongParams strong_params(double sum_alpha, double delta);

struct WeakParams {
  double eps = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
};

// eps   = min{ 1/2, T^{1/3} * (sum_d)^{-2/3} * ln(1/delta)^{1/3} }
// gamma = sqrt( ln(1/delta) / sum_alpha_tilde )
// eta   = min{ T^{-1/3} * (sum_d)^{-1/3} * ln(1/delta)^{-1/3}, gamma }
WeakParams weak_params(long long horizon, double sum_d,
                       double sum_alpha_tilde, double delta);

// eta = gamma = min{ sqrt(ln(1/delta) / sum_alpha), 1/2 }.
std::pair<double, double> exp3ix_params(double sum_alpha, double delta);

// Round contract shared by every algorithm. Uninformed learners act through
// decide(rng) and meet the round's graph only in update; informed learners
// act through decide(graph, rng) and must not depend on anything delivered
// after the draw, so update's graph argument is ignored on that path. One
// decide must be followed by exactly one update.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual Protocol protocol() const = 0;
  virtual int num_actions() const = 0;

  virtual Decision decide(rng::Stream& rng);
  virtual Decision decide(const FeedbackGraph& graph, rng::Stream& rng);

  virtual void update(const FeedbackGraph& graph, const RoundFeedback& fb) = 0;

  // Mirror-descent iterate p_t (not the exploration-mixed sampling dist).
  virtual const ProbabilityVector& weights() const = 0;
  virtual int round() const = 0;
  virtual void reset() = 0;

  // Per-round diagnostics recorded into traces.
  virtual double last_q() const { return 0.0; }
  virtual bool last_bias_triggered() const { return false; }
  virtual int epoch() const { return 0; }
  virtual int clamp_count() const { return 0; }
};

// Multiplicative-weights update with implicit exploration, for self-aware
// graphs: samples from p_t directly, estimates with +gamma on every node,
// and takes an entropy OMD step. Rejects graphs with any loopless node.
class Exp3IXLearner : public Learner {
 public:
  Exp3IXLearner(int num_actions, double eta, double gamma);

  Protocol protocol() const override { return Protocol::kUninformed; }
  int num_actions() const override { return k_; }
  using Learner::decide;
  Decision decide(rng::Stream& rng) override;
  void update(const FeedbackGraph& graph, const RoundFeedback& fb) override;
  const ProbabilityVector& weights() const override { return p_; }
  int round() const override { return round_; }
  void reset() override;
  double last_q() const override { return last_q_; }

 private:
  int k_;
  double eta_, gamma_;
  ProbabilityVector p_;
  int round_ = 0;
  bool pending_ = false;
  double last_q_ = 0.0;
};

// Uninformed algorithm for strongly observable graphs: uniform exploration
// mix, IX estimates on self-loop nodes, unbiased estimates elsewhere, and a
// pessimistic bias on a loopless node that the mixed distribution selects
// with probability above one half.
class StrongObsLearner : public Learner {
 public:
  StrongObsLearner(int num_actions, StrongParams params);

  Protocol protocol() const override { return Protocol::kUninformed; }
  int num_actions() const override { return k_; }
  using Learner::decide;
  Decision decide(rng::Stream& rng) override;
  void update(const FeedbackGraph& graph, const RoundFeedback& fb) override;
  const ProbabilityVector& weights() const override { return p_; }
  int round() const override { return round_; }
  void reset() override;
  double last_q() const override { return last_q_; }
  bool last_bias_triggered() const override { return last_triggered_; }
  double cumulative_q() const { return cumulative_q_; }
  const StrongParams& params() const { return params_; }

 private:
  int k_;
  StrongParams params_;
  ProbabilityVector p_;
  ProbabilityVector mixed_;
  int round_ = 0;
  bool pending_ = false;
  double last_q_ = 0.0;
  double cumulative_q_ = 0.0;
  bool last_triggered_ = false;
};

// Informed algorithm for weakly observable graphs: uniform exploration over
// a greedy weak dominating set of the round's graph, then IX estimation and
// an entropy OMD step. The graph is consumed when deciding; the update-time
// argument is ignored. Per-round eps is clamped to 1/(2 |D_t|) so the mixed
// distribution always stays valid; clamped rounds are counted.
class WeakObsLearner : public Learner {
 public:
  WeakObsLearner(int num_actions, WeakParams params);

  Protocol protocol() const override { return Protocol::kInformed; }
  int num_actions() const override { return k_; }
  using Learner::decide;
  Decision decide(const FeedbackGraph& graph, rng::Stream& rng) override;
  void update(const FeedbackGraph& graph, const RoundFeedback& fb) override;
  const ProbabilityVector& weights() const override { return p_; }
  int round() const override { return round_; }
  void reset() override;
  double last_q() const override { return last_q_; }
  int clamp_count() const override { return clamp_count_; }
  const WeakParams& params() const { return params_; }

 private:
  int k_;
  WeakParams params_;
  ProbabilityVector p_;
  ProbabilityVector mixed_;
  std::unique_ptr<FeedbackGraph> round_graph_;
  int round_ = 0;
  bool pending_ = false;
  double last_q_ = 0.0;
  int clamp_count_ = 0;
};

// Parameter-free wrapper: runs the factory's learner with parameters set
// from a guess G of the cumulative stability mass, restarts with doubled G
// and fresh uniform weights whenever the in-epoch sum of Q exceeds it.
class DoublingWrapper : public Learner {
 public:
  using Factory = std::function<std::unique_ptr<Learner>(StrongParams)>;

  DoublingWrapper(Factory factory, double initial_guess, double delta);

  Protocol protocol() const override { return Protocol::kUninformed; }
  int num_actions() const override { return inner_->num_actions(); }
  using Learner::decide;
  Decision decide(rng::Stream& rng) override { return inner_->decide(rng); }
  void update(const FeedbackGraph& graph, const RoundFeedback& fb) override;
  const ProbabilityVector& weights() const override {
    return inner_->weights();
  }
  int round() const override { return round_; }
  void reset() override;
  double last_q() const override { return inner_->last_q(); }
  bool last_bias_triggered() const override {
    return inner_->last_bias_triggered();
  }
  int epoch() const override { return epoch_; }
  double current_guess() const { return guess_; }
  // Guess in force during each epoch so far.
  const std::vector<double>& epoch_guesses() const { return epoch_guesses_; }

 private:
  Factory factory_;
  double initial_guess_;
  double delta_;
  double guess_;
  double epoch_q_ = 0.0;
  int epoch_ = 0;
  int round_ = 0;
  std::vector<double> epoch_guesses_;
  std::unique_ptr<Learner> inner_;
};

}  // namespace fgb
