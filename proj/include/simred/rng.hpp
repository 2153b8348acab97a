#pragma once

#include <cstdint>

namespace simred {

// Deterministic generator with identical output on every platform; the
// standard distributions are implementation-defined, which would break
// byte-identical reports.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace simred
