#pragma once

#include <cstdint>

namespace oms {

/// Counter-based deterministic random source built on the splitmix64
/// finalizer. A value is a pure function of (seed, stream, counter), so
/// streams can be consumed in any order and replayed bit-identically on
/// any platform. Sub-stream conventions used by the drift generators are
/// documented in environments.hpp.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed + 0x632be59bd9b4e019ULL) ^ mix(stream + 0x9e3779b97f4a7c15ULL)) {}

  /// Uniform double in [0, 1) at the given counter position.
  double uniform(std::uint64_t counter) const {
    const std::uint64_t bits = mix(key_ + (counter + 1) * kGamma);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  double uniform_range(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
};

}  // namespace oms
