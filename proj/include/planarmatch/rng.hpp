#pragma once
// Splittable counter-based RNG. Each stream is a Weyl sequence (state += odd
// increment) pushed through the SplitMix64 finalizer; both the start state and
// the increment are derived from (seed, stream index), so any number of
// streams can be drawn from one seed without coordination. This is what makes
// Monte Carlo runs byte-identical regardless of how trials are scheduled
// across threads: trial i always uses stream i of the run seed.
//
// Deliberately not std::mt19937 + std::uniform_int_distribution: the standard
// distributions have implementation-defined output, and we need identical
// samples across toolchains. Bounded sampling uses Lemire's unbiased
// multiply-shift rejection method.

#include <cstdint>

namespace planarmatch {

// 64-bit seed wrapper used by every sampler and experiment config.
struct Seed {
  std::uint64_t value = 0;
};

class Rng {
public:
  using result_type = std::uint64_t;

  // Algorithm identifier persisted in reports so archived results can be
  // reproduced even if the default generator ever changes.
  static constexpr const char* algorithm = "splitmix64-weyl/streams-v1";

  explicit Rng(Seed seed, std::uint64_t stream = 0) {
    const std::uint64_t s0 = mix(seed.value ^ 0x6a09e667f3bcc909ull);
    state_ = mix(s0 + stream * 0x9e3779b97f4a7c15ull);
    inc_ = mix(state_ ^ s0) | 1ull;  // increments must be odd
  }

  std::uint64_t next() {
    state_ += inc_;
    return mix(state_);
  }

  // Unbiased uniform draw from {0, 1, ..., bound-1} (Lemire 2019).
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t cutoff = (0 - bound) % bound;  // 2^64 mod bound
      while (lo < cutoff) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // UniformRandomBitGenerator interface, so standard algorithms accept it.
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ull; }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

}  // namespace planarmatch
