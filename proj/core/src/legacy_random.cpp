#include "erdiff/legacy_random.hpp"

#include <numeric>

namespace erdiff {

std::uint64_t LegacyRandom::random_interval(std::uint64_t max) {
  if (max == 0) return 0;
  std::uint64_t mask = max;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t value;
  if (max <= 0xffffffffULL) {
    while ((value = (next_u32() & mask)) > max) {
    }
  } else {
    while ((value = (next_u64() & mask)) > max) {
    }
  }
  return value;
}

std::vector<std::size_t> LegacyRandom::permutation(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  shuffle(v);
  return v;
}

std::vector<std::size_t> LegacyRandom::choice_without_replacement(std::size_t n, std::size_t count) {
  auto p = permutation(n);
  p.resize(count);
  return p;
}

}  // namespace erdiff
