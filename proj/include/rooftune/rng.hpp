#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace rooftune {

// SplitMix64 (Steele, Lea, Flood 2014). Used for every seeded fill so
// prepared inputs are identical on any platform:
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31)
// Doubles in [0, 1) take the top 53 bits: (z >> 11) * 2^-53.
// Satisfies UniformRandomBitGenerator, so it also drives <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  constexpr double uniform() { return to_unit(operator()()); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr double to_unit(std::uint64_t z) {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  // Counter-based draw: the value at `index` of the stream for `seed`,
  // independent of how the index range is partitioned across threads.
  static constexpr double uniform_at(std::uint64_t seed, std::uint64_t index) {
    return to_unit(mix(seed + (index + 1) * 0x9e3779b97f4a7c15ULL));
  }

 private:
  std::uint64_t state_;
};

// FNV-1a, for stable seeds derived from configuration labels.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Combines seed components into one well-mixed seed.
constexpr std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  return SplitMix64::mix(SplitMix64::mix(a ^ 0x243f6a8885a308d3ULL) ^ b) ^ SplitMix64::mix(c + 1);
}

}  // namespace rooftune
