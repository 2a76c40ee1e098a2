#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fgb {

struct RegretCurves {
  // Cumulative regret against the single best fixed arm over the full
  // horizon (ties to the lowest index).
  std::vector<double> fixed_best;
  // Diagnostic: cumulative regret against the per-round best cumulative arm.
  std::vector<double> anytime;
  int best_arm = -1;
};

// arm_losses[i][t] = loss of arm i at round t.
RegretCurves compute_regret(const std::vector<double>& learner_losses,
                            const std::vector<std::vector<double>>& arm_losses);

// One seeded repetition.
struct RegretTrace {
  std::vector<double> learner_losses;  // loss of the played action per round
  std::vector<std::int32_t> actions;
  std::vector<double> arm_totals;      // final cumulative true loss per arm
  RegretCurves regret;
  std::vector<double> q;               // per-round stability quantity
  std::vector<std::uint8_t> bias_triggered;
  std::vector<std::int32_t> epoch;
  std::vector<double> epoch_guesses;   // doubling guesses, one per epoch
  int clamp_count = 0;
  // Full per-arm loss matrix, kept only when the run asks for it (tests).
  std::vector<std::vector<double>> arm_losses;

  long long rounds() const {
    return static_cast<long long>(learner_losses.size());
  }
  double final_regret() const {
    return regret.fixed_best.empty() ? 0.0 : regret.fixed_best.back();
  }
};

// Per-round empirical q-quantile of cumulative regret across traces,
// nearest-rank method (rank ceil(q * n) of the sorted values).
std::vector<double> aggregate_quantiles(const std::vector<RegretTrace>& traces,
                                        double q);

double nearest_rank_quantile(std::vector<double> values, double q);

struct DeclaredBounds {
  double sum_alpha = 0.0;
  double max_alpha = 0.0;
  double sum_d = 0.0;
  double sum_alpha_tilde = 0.0;
  double max_alpha_tilde = 0.0;
  long long horizon = 0;
};

// Bound denominator matching the theoretical regret rate, with every
// log-in-K-and-T factor set to 1.
double strong_bound_denominator(const DeclaredBounds& b, double delta);
double weak_bound_denominator(const DeclaredBounds& b, double delta);

// (empirical (1-delta)-quantile of final regret) / (bound denominator).
// `learner_kind` selects the bound shape: "weak" uses the weakly observable
// form, anything else the strongly observable form.
double bound_ratio(const std::vector<RegretTrace>& traces,
                   const DeclaredBounds& bounds, double delta,
                   const std::string& learner_kind);

}  // namespace fgb
