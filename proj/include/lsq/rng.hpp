#pragma once

#include <cstdint>

namespace lsq {

/// Deterministic 64-bit random stream (splitmix64).
///
/// The generator is a counter scrambled by a fixed finalizer, so its output is
/// a pure function of (seed, call index) and is identical on every platform:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// These semantics are frozen: seeded regression values depend on them.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t bits() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1): the top 53 bits of the stream scaled by 2^-53.
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo,hi): lo + (hi-lo)*uniform().
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0,n), n >= 1, via rejection sampling (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t rej = (0ull - n) % n;  // 2^64 mod n
    if (rej == 0) return bits() % n;
    const std::uint64_t limit = 0ull - rej;  // largest multiple of n representable
    std::uint64_t x = bits();
    while (x >= limit) x = bits();
    return x % n;
  }

 private:
  std::uint64_t state_;
};

/// splitmix64 finalizer; bijective scramble of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Child-seed derivation: mix64(mix64(mix64(master) + a) + b).
/// Used to give every (spec, repeat) benchmark cell and every solver stream an
/// independent seed whose value does not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(master) + a) + b);
}

}  // namespace lsq
