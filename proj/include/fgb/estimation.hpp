#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fgb/graph.hpp"
#include "fgb/simplex.hpp"

namespace fgb {

// One round of partial feedback: the drawn action and the losses of exactly
// the nodes it observes, sorted by node index.
struct RoundFeedback {
  int chosen = -1;
  std::vector<std::pair<int, double>> observed;
};

// Builds the feedback the environment reveals for `action`: losses of every
// node whose in-neighborhood contains the action.
RoundFeedback make_round_feedback(const FeedbackGraph& g,
                                  const std::vector<double>& losses,
                                  int action);

// Dense loss estimate; unobserved nodes hold exactly zero.
using LossEstimate = std::vector<double>;

// Positive bias injected on a loopless node selected with probability
// above one half. At most one entry is nonzero, and only when triggered.
struct BiasRecord {
  std::vector<double> bias;
  bool triggered = false;
  std::optional<int> special_node;
};

// Importance-weighted estimator with implicit exploration on self-loop
// nodes:
//   est_i = loss_i / (W_i + gamma * [i has self-loop])   if i observed,
//   est_i = 0                                            otherwise,
// where W_i = observation_probability(g, sampling_dist, i). Loopless nodes
// get the plain unbiased inverse-propensity estimate. The feedback must
// match the graph's out-neighborhood of the chosen action exactly; a
// mismatch or a zero denominator on an observed node throws ProtocolError.
LossEstimate build_ix_estimator(const FeedbackGraph& g,
                                const ProbabilityVector& sampling_dist,
                                const RoundFeedback& fb, double gamma);

// Pessimistic bias: if some loopless node j has sampling mass strictly
// above 1/2 (at most one can), bias_j = beta / W_j. Ties at exactly 1/2 do
// not trigger.
BiasRecord build_bias(const FeedbackGraph& g,
                      const ProbabilityVector& sampling_dist, double beta);

// Exact conditional expectation of build_ix_estimator under the sampling
// distribution, by enumerating all K outcomes of the draw. Test oracle for
// the under-estimation identity E[est_i] = W_i / (W_i + gamma) * loss_i on
// self-loop nodes (and plain unbiasedness elsewhere).
std::vector<double> estimator_expectation_oracle(
    const FeedbackGraph& g, const ProbabilityVector& sampling_dist,
    const std::vector<double>& true_loss, double gamma);

}  // namespace fgb
