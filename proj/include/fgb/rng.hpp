#pragma once

#include <cstdint>
#include <string_view>

namespace fgb::rng {

// Counter-based stream built on the splitmix64 finalizer (Steele/Lea/Flood;
// mixer constants due to Stafford / Vigna). Output n of a stream with key k
// is mix64(k + (n+1)*GAMMA), so streams are pure functions of (key, counter)
// and advancing is trivially reproducible from any point.
//
// Stream derivation scheme (stable; alternate implementations must match):
//   run stream key   = mix64(mix64(master_seed) ^ mix64(rep + GAMMA))
//   purpose substream = mix64(parent_key ^ fnv1a64(tag))
inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += kGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  static Stream for_run(std::uint64_t master_seed, std::uint64_t rep) {
    return Stream(mix64(mix64(master_seed) ^ mix64(rep + kGamma)));
  }

  // Derives an independent stream for a named purpose ("sampling", ...).
  Stream substream(std::string_view tag) const {
    return Stream(mix64(key_ ^ fnv1a64(tag)));
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform integer in [0, n); n > 0. Rejection-free modulo is fine here:
  // n is tiny relative to 2^64 in every use, so the bias is negligible and
  // the output stays a pure function of (key, counter).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace fgb::rng
