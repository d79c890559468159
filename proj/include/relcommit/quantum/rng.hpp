#pragma once

#include <cstdint>
#include <limits>

namespace relcommit {

/**
 * Counter-based, splittable pseudo-random source.
 *
 * The i-th output of a stream with key k is mix(k + (i + 1) * G), where G is
 * the 64-bit golden-ratio increment and mix is the SplitMix64 finalizer.
 * A child stream's key is mix(k ^ mix(id * G + C)), so split(id) depends only
 * on the parent key and the id, never on how many values the parent has drawn.
 * Trial k of an experiment seeded with s therefore uses SplitRng(s).split(k)
 * and can be replayed in isolation.
 *
 * Satisfies UniformRandomBitGenerator, but the helpers below are preferred:
 * they are defined here rather than by the standard library, so sequences are
 * identical across toolchains.
 */
class SplitRng {
  __extension__ using Wide = unsigned __int128;

 public:
  using result_type = std::uint64_t;

  explicit SplitRng(std::uint64_t seed) noexcept : key_(mix(seed ^ kSeedSalt)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's nearly-divisionless rejection method.
    Wide m = static_cast<Wide>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<Wide>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  int bit() noexcept { return static_cast<int>(next_u64() >> 63); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Independent child stream identified by id.
  SplitRng split(std::uint64_t id) const noexcept {
    SplitRng child;
    child.key_ = mix(key_ ^ mix(id * kGolden + kSplitSalt));
    return child;
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  SplitRng() = default;

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x6A09E667F3BCC909ULL;
  static constexpr std::uint64_t kSplitSalt = 0xBB67AE8584CAA73BULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace relcommit
