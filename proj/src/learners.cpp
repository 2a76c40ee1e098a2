#include "fgb/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fgb/errors.hpp"

namespace fgb {

namespace {

double checked_log_inv_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  return std::log(1.0 / delta);
}

}  // namespace

StrongParams strong_params(double sum_alpha, double delta) {
  if (!(sum_alpha > 0.0)) {
    throw std::invalid_argument("sum_alpha must be positive");
  }
  const double v =
      std::min(1.0 / std::sqrt(sum_alpha * checked_log_inv_delta(delta)), 0.5);
  return StrongParams{v, v, v};
}

WeakParams weak_params(long long horizon, double sum_d, double sum_alpha_tilde,
                       double delta) {
  if (horizon < 1 || !(sum_d > 0.0) || !(sum_alpha_tilde > 0.0)) {
    throw std::invalid_argument("weak_params arguments must be positive");
  }
  const double log_inv = checked_log_inv_delta(delta);
  const double t = static_cast<double>(horizon);
  WeakParams p;
  p.eps = std::min(0.5, std::cbrt(t) * std::pow(sum_d, -2.0 / 3.0) *
                            std::cbrt(log_inv));
  p.gamma = std::sqrt(log_inv / sum_alpha_tilde);
  p.eta = std::min(1.0 / (std::cbrt(t) * std::cbrt(sum_d) * std::cbrt(log_inv)),
                   p.gamma);
  return p;
}

std::pair<double, double> exp3ix_params(double sum_alpha, double delta) {
  if (!(sum_alpha > 0.0)) {
    throw std::invalid_argument("sum_alpha must be positive");
  }
  const double v =
      std::min(std::sqrt(checked_log_inv_delta(delta) / sum_alpha), 0.5);
  return {v, v};
}

Decision Learner::decide(rng::Stream&) {
  throw std::logic_error("this learner is informed: decide needs the graph");
}

Decision Learner::decide(const FeedbackGraph&, rng::Stream&) {
  throw std::logic_error("this learner is uninformed: decide takes no graph");
}

// ---------------------------------------------------------------------------
// Exp3-IX

Exp3IXLearner::Exp3IXLearner(int num_actions, double eta, double gamma)
    : k_(num_actions),
      eta_(eta),
      gamma_(gamma),
      p_(ProbabilityVector::uniform(num_actions)) {
  if (!(eta > 0.0) || !(gamma >= 0.0)) {
    throw std::invalid_argument("Exp3-IX needs eta > 0 and gamma >= 0");
  }
}

Decision Exp3IXLearner::decide(rng::Stream& rng) {
  if (pending_) throw std::logic_error("decide called twice without update");
  pending_ = true;
  return Decision{p_, sample(p_, rng)};
}

void Exp3IXLearner::update(const FeedbackGraph& graph, const RoundFeedback& fb) {
  if (!pending_) throw std::logic_error("update without a pending decide");
  pending_ = false;  // the round is consumed even if it aborts below
  if (graph.num_nodes() != k_) {
    throw ProtocolError("graph size does not match learner");
  }
  if (!graph.loopless_set().empty()) {
    throw ProtocolError("Exp3-IX requires a self-aware graph");
  }
  const LossEstimate est = build_ix_estimator(graph, p_, fb, gamma_);
  last_q_ = ix_quantity(graph, p_, gamma_);
  p_ = entropy_omd_step(p_, est, eta_);
  ++round_;
}

void Exp3IXLearner::reset() {
  p_ = ProbabilityVector::uniform(k_);
  round_ = 0;
  pending_ = false;
  last_q_ = 0.0;
}

// ---------------------------------------------------------------------------
// Strongly observable graphs (uninformed)

StrongObsLearner::StrongObsLearner(int num_actions, StrongParams params)
    : k_(num_actions),
      params_(params),
      p_(ProbabilityVector::uniform(num_actions)),
      mixed_(p_) {
  if (!(params.eta > 0.0 && params.eta <= 1.0) || !(params.gamma >= 0.0) ||
      !(params.beta >= 0.0)) {
    throw std::invalid_argument("invalid strong-learner parameters");
  }
}

Decision StrongObsLearner::decide(rng::Stream& rng) {
  if (pending_) throw std::logic_error("decide called twice without update");
  mixed_ = uniform_mix(p_, params_.eta);
  pending_ = true;
  return Decision{mixed_, sample(mixed_, rng)};
}

void StrongObsLearner::update(const FeedbackGraph& graph,
                              const RoundFeedback& fb) {
  if (!pending_) throw std::logic_error("update without a pending decide");
  pending_ = false;  // the round is consumed even if it aborts below
  if (graph.num_nodes() != k_) {
    throw ProtocolError("graph size does not match learner");
  }
  if (graph.observability() != Observability::kStronglyObservable) {
    throw ProtocolError(
        "strong-observability learner received a graph outside its contract");
  }
  const LossEstimate est = build_ix_estimator(graph, mixed_, fb, params_.gamma);
  const BiasRecord bias = build_bias(graph, mixed_, params_.beta);
  std::vector<double> shifted(est);
  if (bias.triggered) {
    for (int i = 0; i < k_; ++i) shifted[i] += bias.bias[i];
  }
  // Stability mass: mirror-descent weights over observation probabilities
  // of the mixed distribution.
  last_q_ = ix_quantity(graph, p_, mixed_, params_.gamma);
  cumulative_q_ += last_q_;
  last_triggered_ = bias.triggered;
  p_ = entropy_omd_step(p_, shifted, params_.eta);
  ++round_;
}

void StrongObsLearner::reset() {
  p_ = ProbabilityVector::uniform(k_);
  mixed_ = p_;
  round_ = 0;
  pending_ = false;
  last_q_ = 0.0;
  cumulative_q_ = 0.0;
  last_triggered_ = false;
}

// ---------------------------------------------------------------------------
// Weakly observable graphs (informed)

WeakObsLearner::WeakObsLearner(int num_actions, WeakParams params)
    : k_(num_actions),
      params_(params),
      p_(ProbabilityVector::uniform(num_actions)),
      mixed_(p_) {
  if (!(params.eta > 0.0) || !(params.gamma >= 0.0) ||
      !(params.eps > 0.0 && params.eps <= 0.5) || params.eta > params.gamma) {
    throw std::invalid_argument(
        "invalid weak-learner parameters (need 0 < eps <= 1/2 and eta <= gamma)");
  }
}

Decision WeakObsLearner::decide(const FeedbackGraph& graph, rng::Stream& rng) {
  if (pending_) throw std::logic_error("decide called twice without update");
  if (graph.num_nodes() != k_) {
    throw ProtocolError("graph size does not match learner");
  }
  if (graph.observability() == Observability::kUnobservable) {
    throw ProtocolError("weak-observability learner received an unobservable graph");
  }
  const std::vector<int> dom = greedy_weak_dominating_set(graph);
  double eps = params_.eps;
  if (!dom.empty()) {
    const double cap = 1.0 / (2.0 * static_cast<double>(dom.size()));
    if (eps > cap) {
      eps = cap;
      ++clamp_count_;
    }
  }
  mixed_ = dominating_mix(p_, eps, dom);
  round_graph_ = std::make_unique<FeedbackGraph>(graph);
  pending_ = true;
  return Decision{mixed_, sample(mixed_, rng)};
}

void WeakObsLearner::update(const FeedbackGraph& /*graph*/,
                            const RoundFeedback& fb) {
  // Informed protocol: everything graph-dependent was fixed at decide time.
  if (!pending_ || !round_graph_) {
    throw std::logic_error("update without a pending decide");
  }
  pending_ = false;
  const FeedbackGraph& g = *round_graph_;
  const LossEstimate est = build_ix_estimator(g, mixed_, fb, params_.gamma);
  last_q_ = ix_quantity(g, p_, mixed_, params_.gamma);
  p_ = entropy_omd_step(p_, est, params_.eta);
  ++round_;
}

void WeakObsLearner::reset() {
  p_ = ProbabilityVector::uniform(k_);
  mixed_ = p_;
  round_graph_.reset();
  round_ = 0;
  pending_ = false;
  last_q_ = 0.0;
  clamp_count_ = 0;
}

// ---------------------------------------------------------------------------
// Doubling wrapper

DoublingWrapper::DoublingWrapper(Factory factory, double initial_guess,
                                 double delta)
    : factory_(std::move(factory)),
      initial_guess_(initial_guess),
      delta_(delta),
      guess_(initial_guess) {
  if (!(initial_guess > 0.0)) {
    throw std::invalid_argument("doubling guess must be positive");
  }
  checked_log_inv_delta(delta);
  epoch_guesses_.push_back(guess_);
  inner_ = factory_(strong_params(guess_, delta_));
}

void DoublingWrapper::update(const FeedbackGraph& graph,
                             const RoundFeedback& fb) {
  inner_->update(graph, fb);
  epoch_q_ += inner_->last_q();
  ++round_;
  if (epoch_q_ > guess_) {
    guess_ *= 2.0;
    epoch_q_ = 0.0;
    ++epoch_;
    epoch_guesses_.push_back(guess_);
    inner_ = factory_(strong_params(guess_, delta_));
  }
}

void DoublingWrapper::reset() {
  guess_ = initial_guess_;
  epoch_q_ = 0.0;
  epoch_ = 0;
  round_ = 0;
  epoch_guesses_.assign(1, guess_);
  inner_ = factory_(strong_params(guess_, delta_));
}

}  // namespace fgb
