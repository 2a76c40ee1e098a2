#pragma once

#include <span>
#include <vector>

#include "fgb/rng.hpp"

namespace fgb {

// Point on the probability simplex: nonnegative entries summing to 1.
// Construction accepts an input sum within 1e-9 of 1 and renormalizes, so
// drift never accumulates across updates. Entries below 1e-300 are flushed
// to zero to keep denormals out of long runs.
class ProbabilityVector {
 public:
  static ProbabilityVector uniform(int size);
  // Throws std::invalid_argument on negative/non-finite entries or a sum
  // outside the tolerance.
  static ProbabilityVector from_values(std::vector<double> values);
  // Point mass at `index`.
  static ProbabilityVector unit(int size, int index);

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }
  std::span<const double> values() const { return v_; }

  double min_entry() const;

 private:
  explicit ProbabilityVector(std::vector<double> v) : v_(std::move(v)) {}
  std::vector<double> v_;
};

inline constexpr double kSimplexSumTolerance = 1e-9;

// Entropy-regularized mirror-descent step: the exact solution of
//   argmin_q <q, loss> + D_psi(q, p),  psi(q) = (1/eta) sum q_i ln q_i,
// i.e. p'_i proportional to p_i * exp(-eta * loss_i). Computed in log space
// with a max shift so no exponent ever exceeds zero; losses up to ~1/eta in
// magnitude are routine inputs. Shift-invariant: adding a constant to every
// loss entry leaves the result unchanged, which is why callers never need
// an explicit shift of their own.
// Throws std::invalid_argument on non-finite losses or eta <= 0.
ProbabilityVector entropy_omd_step(const ProbabilityVector& p,
                                   std::span<const double> loss, double eta);

// (1 - eta) * p + (eta / K) * 1. Throws if eta is outside [0, 1].
ProbabilityVector uniform_mix(const ProbabilityVector& p, double eta);

// (1 - eps * |D|) * p + eps * 1_D. Throws if eps * |D| > 1 or eps < 0.
ProbabilityVector dominating_mix(const ProbabilityVector& p, double eps,
                                 std::span<const int> dom_set);

// Inverse-CDF draw from p using a single uniform variate.
int sample(const ProbabilityVector& p, rng::Stream& rng);

}  // namespace fgb
