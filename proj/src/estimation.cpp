#include "fgb/estimation.hpp"

#include <cmath>
#include <string>

#include "fgb/errors.hpp"

namespace fgb {

RoundFeedback make_round_feedback(const FeedbackGraph& g,
                                  const std::vector<double>& losses,
                                  int action) {
  RoundFeedback fb;
  fb.chosen = action;
  const auto out = g.out_neighbors(action);
  fb.observed.reserve(out.size());
  for (int j : out) fb.observed.emplace_back(j, losses[j]);
  return fb;
}

LossEstimate build_ix_estimator(const FeedbackGraph& g,
                                const ProbabilityVector& sampling_dist,
                                const RoundFeedback& fb, double gamma) {
  const int k = g.num_nodes();
  if (fb.chosen < 0 || fb.chosen >= k) {
    throw ProtocolError("feedback has no valid chosen action");
  }
  const auto out = g.out_neighbors(fb.chosen);
  if (out.size() != fb.observed.size()) {
    throw ProtocolError("feedback does not match the graph's observation set");
  }
  LossEstimate est(k, 0.0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto& [node, loss] = fb.observed[idx];
    if (node != out[idx]) {
      throw ProtocolError("feedback does not match the graph's observation set");
    }
    const double denom = observation_probability(g, sampling_dist, node) +
                         (g.has_self_loop(node) ? gamma : 0.0);
    if (!(denom > 0.0)) {
      throw ProtocolError("observed node " + std::to_string(node) +
                          " has zero observation probability");
    }
    est[node] = loss / denom;
  }
  return est;
}

BiasRecord build_bias(const FeedbackGraph& g,
                      const ProbabilityVector& sampling_dist, double beta) {
  BiasRecord rec;
  rec.bias.assign(g.num_nodes(), 0.0);
  for (int j : g.loopless_set()) {
    if (sampling_dist[j] > 0.5) {
      const double w = observation_probability(g, sampling_dist, j);
      if (!(w > 0.0)) {
        throw ProtocolError("bias target " + std::to_string(j) +
                            " has zero observation probability");
      }
      rec.bias[j] = beta / w;
      rec.triggered = true;
      rec.special_node = j;
      break;  // at most one node can exceed 1/2
    }
  }
  return rec;
}

std::vector<double> estimator_expectation_oracle(
    const FeedbackGraph& g, const ProbabilityVector& sampling_dist,
    const std::vector<double>& true_loss, double gamma) {
  const int k = g.num_nodes();
  std::vector<double> expectation(k, 0.0);
  for (int a = 0; a < k; ++a) {
    if (sampling_dist[a] <= 0.0) continue;
    const auto est = build_ix_estimator(
        g, sampling_dist, make_round_feedback(g, true_loss, a), gamma);
    for (int i = 0; i < k; ++i) expectation[i] += sampling_dist[a] * est[i];
  }
  return expectation;
}

}  // namespace fgb
