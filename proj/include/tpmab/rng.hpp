#pragma once

#include <cmath>
#include <cstdint>

namespace tpmab {

// Counter-based random streams. A stream is addressed by a key tuple
// (seed, run, salt, round, arm, lane); equal keys always yield the same
// sequence, and distinct keys yield statistically independent sequences.
// Draws are therefore order-independent across episodes, which is what the
// shared-randomness (common random numbers) mode relies on.

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

inline uint64_t combine(uint64_t h, uint64_t v) {
  return mix64(h + 0x9e3779b97f4a7c15ull + v);
}

struct StreamKey {
  uint64_t seed = 0;
  uint64_t run = 0;
  uint64_t salt = 0;  // 0 in shared-randomness mode, policy-specific otherwise
  uint64_t round = 0;
  uint64_t arm = 0;
  uint64_t lane = 0;  // bucket index or other sub-stream

  uint64_t fingerprint() const {
    uint64_t h = mix64(seed);
    h = combine(h, run);
    h = combine(h, salt);
    h = combine(h, round);
    h = combine(h, arm);
    h = combine(h, lane);
    return h;
  }
};

class KeyedStream {
 public:
  explicit KeyedStream(const StreamKey& key) : state_(key.fingerprint()) {}
  explicit KeyedStream(uint64_t fingerprint) : state_(fingerprint) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform on [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_exponential() { return -std::log1p(-next_unit()); }

  // Box-Muller, consuming exactly two uniforms.
  double next_normal() {
    double u1 = 1.0 - next_unit();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double next_gamma(double shape);
  double next_beta(double a, double b);

 private:
  uint64_t state_;
};

}  // namespace tpmab
