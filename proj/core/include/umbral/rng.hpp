#pragma once

#include <cstdint>
#include <limits>

#include "umbral/rational.hpp"

namespace umbral {

/// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit state advanced by the
/// golden-ratio increment, output through a two-round xor-multiply mixer.
/// Satisfies UniformRandomBitGenerator. Streams are split by hashing a
/// (seed, index) pair into a fresh state, which keeps chunked sampling
/// independent of thread count.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// The generator for sub-stream `index` of `seed`.
  static SplitMix64 derive(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed ^ mix(index + 0x632BE59BD9B4E019ULL)));
  }

  /// Uniform on [0, bound) by Lemire's multiply-and-reject; bound > 0.
  /// Used instead of std::uniform_int_distribution, whose output differs
  /// between standard libraries.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Numerator uniform in [-9, 9], denominator uniform in {1, 2, 3, 4}.
inline Rational small_rational(SplitMix64& rng) {
  const auto num = rng.between(-9, 9);
  const auto den = rng.between(1, 4);
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

/// Same, excluding zero.
inline Rational small_nonzero_rational(SplitMix64& rng) {
  Rational r;
  do {
    r = small_rational(rng);
  } while (r == 0);
  return r;
}

}  // namespace umbral
