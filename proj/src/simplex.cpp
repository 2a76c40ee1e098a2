#include "fgb/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fgb {

namespace {

constexpr double kEntryFloor = 1e-300;

// Flush sub-denormal-scale entries, then scale the rest to sum 1.
std::vector<double> normalize(std::vector<double> v) {
  double sum = 0.0;
  for (double& x : v) {
    if (x < kEntryFloor) x = 0.0;
    sum += x;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::invalid_argument("probability vector has no positive mass");
  }
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace

ProbabilityVector ProbabilityVector::uniform(int size) {
  if (size <= 0) throw std::invalid_argument("simplex dimension must be positive");
  return ProbabilityVector(std::vector<double>(size, 1.0 / size));
}

ProbabilityVector ProbabilityVector::unit(int size, int index) {
  if (size <= 0 || index < 0 || index >= size) {
    throw std::invalid_argument("unit vector index out of range");
  }
  std::vector<double> v(size, 0.0);
  v[index] = 1.0;
  return ProbabilityVector(std::move(v));
}

ProbabilityVector ProbabilityVector::from_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empty probability vector");
  double sum = 0.0;
  for (double x : values) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::invalid_argument("probability entries must be finite and >= 0");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    throw std::invalid_argument("probability vector sums to " +
                                std::to_string(sum) + ", not 1");
  }
  return ProbabilityVector(normalize(std::move(values)));
}

double ProbabilityVector::min_entry() const {
  return *std::min_element(v_.begin(), v_.end());
}

ProbabilityVector entropy_omd_step(const ProbabilityVector& p,
                                   std::span<const double> loss, double eta) {
  const int k = p.size();
  if (static_cast<int>(loss.size()) != k) {
    throw std::invalid_argument("loss dimension does not match distribution");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be positive and finite");
  }
  for (double l : loss) {
    if (!std::isfinite(l)) throw std::invalid_argument("non-finite loss entry");
  }

  // Work with a_i = ln p_i - eta * loss_i and shift by the max so every
  // exponent is <= 0; zero-mass entries stay at exactly zero.
  std::vector<double> a(k);
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    a[i] = p[i] > 0.0 ? std::log(p[i]) - eta * loss[i]
                      : -std::numeric_limits<double>::infinity();
    shift = std::max(shift, a[i]);
  }
  std::vector<double> next(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    next[i] = std::isfinite(a[i]) ? std::exp(a[i] - shift) : 0.0;
    sum += next[i];
  }
  for (double& x : next) {
    x /= sum;
    if (x < kEntryFloor) x = 0.0;
  }
  // Renormalize after the floor; the largest entry is untouched, so mass
  // stays positive.
  double sum2 = 0.0;
  for (double x : next) sum2 += x;
  for (double& x : next) x /= sum2;
  return ProbabilityVector::from_values(std::move(next));
}

ProbabilityVector uniform_mix(const ProbabilityVector& p, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("uniform_mix eta must lie in [0, 1]");
  }
  const int k = p.size();
  std::vector<double> v(k);
  for (int i = 0; i < k; ++i) v[i] = (1.0 - eta) * p[i] + eta / k;
  return ProbabilityVector::from_values(std::move(v));
}

ProbabilityVector dominating_mix(const ProbabilityVector& p, double eps,
                                 std::span<const int> dom_set) {
  if (!(eps >= 0.0)) throw std::invalid_argument("dominating_mix eps must be >= 0");
  const double total = eps * static_cast<double>(dom_set.size());
  if (total > 1.0) {
    throw std::invalid_argument("dominating_mix: eps * |D| exceeds 1");
  }
  std::vector<double> v(p.values().begin(), p.values().end());
  for (double& x : v) x *= (1.0 - total);
  for (int i : dom_set) {
    if (i < 0 || i >= p.size()) {
      throw std::invalid_argument("dominating set index out of range");
    }
    v[i] += eps;
  }
  return ProbabilityVector::from_values(std::move(v));
}

int sample(const ProbabilityVector& p, rng::Stream& rng) {
  const double u = rng.next_unit();
  double acc = 0.0;
  int last_positive = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) last_positive = i;
    acc += p[i];
    if (u < acc) return i;
  }
  // Rounding left acc marginally below 1; attribute the sliver to the last
  // positive entry.
  return last_positive;
}

}  // namespace fgb
