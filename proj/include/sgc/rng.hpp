#pragma once

#include <cstdint>

namespace sgc {

/// SplitMix64 stream. Derived streams are keyed by (seed, stream index), so
/// work units scheduled on any number of threads see the same random numbers.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static Rng derive(uint64_t seed, uint64_t stream) {
    Rng base(seed);
    uint64_t root = base.next_u64();
    Rng out(root ^ mix64(stream * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL));
    out.next_u64();
    return out;
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform in [0, 1). 53-bit mantissa, identical on every platform.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

private:
  static uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace sgc
