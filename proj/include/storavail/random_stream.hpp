#pragma once

#include <cstdint>
#include <random>

namespace storavail {

/// Finalizer from the splitmix64 generator; good avalanche, used for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded pseudo-random stream. Streams are never shared between workers;
/// each simulation iteration derives its own from (master_seed, index), so
/// results do not depend on how iterations are scheduled.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_iteration(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw strictly inside (0, 1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Bernoulli event with the given probability.
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace storavail
