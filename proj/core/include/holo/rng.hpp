#pragma once

#include <cstdint>
#include <random>

namespace holo {

/// Deterministic random stream with portable samplers. The distributions are
/// hand-rolled because the standard library's are implementation-defined;
/// traces must reproduce bit-for-bit from (seed, stream) alone.
///
/// A search run derives independent streams from one seed: pixel selection,
/// trial values and acceptance variates never share a stream, so two runs
/// with the same seed visit the same pixel sequence no matter how many other
/// draws each algorithm makes. That pairing is what makes the DS/HPS
/// dominance comparison meaningful.
class Rng {
 public:
  enum class Stream : std::uint64_t {
    init = 1,    // target phase randomisation
    pixel = 2,   // which pixel each iteration modifies
    trial = 3,   // trial states proposed by DS/SA
    accept = 4,  // Boltzmann acceptance variates
  };

  Rng(std::uint64_t seed, Stream stream) : engine_(derive(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), unbiased (rejection sampling). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static std::uint64_t derive(std::uint64_t seed, Stream stream) {
    // splitmix64, iterated once per stream tag.
    std::uint64_t s = seed;
    std::uint64_t z = 0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(stream); ++i) {
      s += 0x9e3779b97f4a7c15ULL;
      z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
    }
    return z;
  }

  std::mt19937_64 engine_;
};

}  // namespace holo
