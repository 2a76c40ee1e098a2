#include "fgb/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fgb {

RegretCurves compute_regret(const std::vector<double>& learner_losses,
                            const std::vector<std::vector<double>>& arm_losses) {
  const std::size_t horizon = learner_losses.size();
  const std::size_t k = arm_losses.size();
  if (k == 0) throw std::invalid_argument("compute_regret: no arms");
  for (const auto& arm : arm_losses) {
    if (arm.size() != horizon) {
      throw std::invalid_argument("compute_regret: ragged arm losses");
    }
  }

  std::vector<double> arm_cum(k, 0.0);
  std::vector<double> learner_cum_v(horizon, 0.0);
  std::vector<double> anytime(horizon, 0.0);
  // First pass: anytime curve and final totals.
  double learner_cum = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    learner_cum += learner_losses[t];
    learner_cum_v[t] = learner_cum;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      arm_cum[i] += arm_losses[i][t];
      best = std::min(best, arm_cum[i]);
    }
    anytime[t] = learner_cum - best;
  }
  int best_arm = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (arm_cum[i] < arm_cum[best_arm]) best_arm = static_cast<int>(i);
  }
  // Second pass: curve against the fixed hindsight-best arm.
  std::vector<double> fixed(horizon, 0.0);
  double best_cum = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    best_cum += arm_losses[best_arm][t];
    fixed[t] = learner_cum_v[t] - best_cum;
  }
  return RegretCurves{std::move(fixed), std::move(anytime), best_arm};
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1)");
  }
  const std::size_t n = values.size();
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

std::vector<double> aggregate_quantiles(const std::vector<RegretTrace>& traces,
                                        double q) {
  if (traces.size() < 2) {
    throw std::invalid_argument("aggregate_quantiles needs at least 2 traces");
  }
  const std::size_t horizon = traces.front().regret.fixed_best.size();
  for (const auto& tr : traces) {
    if (tr.regret.fixed_best.size() != horizon) {
      throw std::invalid_argument("traces have unequal length");
    }
  }
  std::vector<double> out(horizon, 0.0);
  std::vector<double> column(traces.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t r = 0; r < traces.size(); ++r) {
      column[r] = traces[r].regret.fixed_best[t];
    }
    out[t] = nearest_rank_quantile(column, q);
  }
  return out;
}

double strong_bound_denominator(const DeclaredBounds& b, double delta) {
  const double log_inv = std::log(1.0 / delta);
  return std::sqrt(b.sum_alpha * log_inv) + b.max_alpha * log_inv;
}

double weak_bound_denominator(const DeclaredBounds& b, double delta) {
  const double log_inv = std::log(1.0 / delta);
  const double t = static_cast<double>(b.horizon);
  return std::cbrt(t) * std::cbrt(b.sum_d) * std::cbrt(log_inv) +
         (b.sum_d / t) * log_inv +
         std::sqrt(b.sum_alpha_tilde * log_inv) +
         b.max_alpha_tilde * log_inv;
}

double bound_ratio(const std::vector<RegretTrace>& traces,
                   const DeclaredBounds& bounds, double delta,
                   const std::string& learner_kind) {
  if (traces.empty()) throw std::invalid_argument("bound_ratio: no traces");
  std::vector<double> finals;
  finals.reserve(traces.size());
  for (const auto& tr : traces) finals.push_back(tr.final_regret());
  const double quantile = nearest_rank_quantile(std::move(finals), 1.0 - delta);
  const double denom = learner_kind == "weak"
                           ? weak_bound_denominator(bounds, delta)
                           : strong_bound_denominator(bounds, delta);
  return quantile / denom;
}

}  // namespace fgb
