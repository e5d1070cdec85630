#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace erdiff {

/// Mersenne Twister sampler whose draws reproduce numpy's legacy
/// RandomState for the same integer seed: random_sample, permutation,
/// shuffle and choice without replacement. Stochastic measures seeded here
/// therefore agree draw-for-draw with the Python tooling.
class LegacyRandom {
 public:
  explicit LegacyRandom(std::uint32_t seed) : engine_(seed) {}

  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_()); }
  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double random_sample() {
    std::uint32_t a = next_u32() >> 5;
    std::uint32_t b = next_u32() >> 6;
    return (a * 67108864.0 + b) / 9007199254740992.0;
  }

  /// Uniform integer in [0, max] by masked rejection.
  std::uint64_t random_interval(std::uint64_t max);

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(random_interval(n - 1)); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i-- > 1;) {
      std::size_t j = static_cast<std::size_t>(random_interval(i));
      std::swap(v[i], v[j]);
    }
  }

  std::vector<std::size_t> permutation(std::size_t n);

  /// `count` distinct values from [0, n): the first `count` entries of a
  /// permutation, as numpy's choice(n, count, replace=False) does.
  std::vector<std::size_t> choice_without_replacement(std::size_t n, std::size_t count);

 private:
  std::mt19937 engine_;
};

}  // namespace erdiff
