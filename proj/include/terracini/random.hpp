#pragma once

#include <cstdint>
#include <random>

#include "terracini/rational.hpp"

namespace terracini {

// Sampling windows for "general" points. Every probe draws from these, so a
// (curve, seed) pair always reproduces the same points.
inline constexpr long kParamSampleRadius = 1000;      // t in [-1000, 1000]
inline constexpr long kHyperSampleRadius = 200;       // x = p/q, |p| <= 200
inline constexpr long kHyperSampleMaxDenominator = 7; //         1 <= q <= 7
inline constexpr long kRationalSearchHeight = 12;     // bounded rational point searches

/// mt19937_64 with a portable bounded draw, so reports are byte-identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
  }

  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(long radius, long max_den) {
    const long den = uniform(1, max_den);
    return make_rational(uniform(-radius, radius), den);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace terracini
