#pragma once

#include <cstdint>
#include <random>

namespace catlink {

/// Deterministic RNG with splittable streams: (seed, stream) pairs give
/// independent, reproducible sequences. Uniform doubles are produced from the
/// high 53 bits so byte-identical output does not depend on the standard
/// library's distribution internals.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(mix(seed, stream)) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace catlink
