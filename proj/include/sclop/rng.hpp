#pragma once

#include <cstdint>

namespace sclop {

/// SplitMix64 generator (Steele, Lea, Flood: "Fast splittable pseudorandom
/// number generators", OOPSLA 2014). One 64-bit state word advanced by the
/// golden-ratio increment, output finalized by two xor-multiply rounds.
///
/// Chosen because the full algorithm fits in a dozen lines and produces the
/// same stream on every platform, which the replication machinery relies on.
/// It also serves as the seed sequencer: run seeds are successive outputs of
/// a SplitMix64 stream over the master seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased integer in [0, n), n >= 1, by rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    // Largest multiple of n that fits in 64 bits; values at or above it
    // would bias the modulo and are rejected.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace sclop
