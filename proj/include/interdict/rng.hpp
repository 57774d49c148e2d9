#pragma once

#include <cstdint>
#include <random>

namespace interdict {

// interdict-rng-v1: mt19937_64 plus 53-bit mantissa uniforms. The engine's
// output sequence is specified bit-exactly by the C++ standard, so seeded
// datasets reproduce across platforms. Documented in docs/FORMATS.md; bump
// the version there before changing any draw below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64 in all
    // call sites (permutation shuffles), bias < 2^-50.
    return eng_() % n;
  }

 private:
  std::mt19937_64 eng_;
};

/// splitmix64 finalizer; used for instance-id based dataset splits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace interdict
