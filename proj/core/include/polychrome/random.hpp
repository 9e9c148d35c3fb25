#pragma once

#include <cstdint>
#include <random>

#include "polychrome/rational.hpp"

namespace polychrome {

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, so they are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// p/q with |p| <= num_bound and 1 <= q <= den_bound.
  Rational rational(std::int64_t num_bound, std::int64_t den_bound) {
    return {between(-num_bound, num_bound), between(1, den_bound)};
  }

  Rational nonzero_rational(std::int64_t num_bound, std::int64_t den_bound) {
    std::int64_t p = between(1, num_bound);
    if (coin()) p = -p;
    return {p, between(1, den_bound)};
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace polychrome
