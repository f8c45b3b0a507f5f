#pragma once

// Seeded, platform-independent random source.  std::mt19937_64 output is fully
// specified by the standard; the distributions in <random> are not, so the
// integer draws below are done by hand.

#include "crk/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace crk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Bounds for random rationals: numerator in [-num_bound, num_bound],
/// denominator in [1, den_bound].
struct RationalPolicy {
  std::int64_t num_bound = 20;
  std::int64_t den_bound = 10;
};

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL));
  }

  /// Uniform integer in [lo, hi], rejection sampled.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(eng_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }

  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(const RationalPolicy& p = {}) {
    auto num = uniform(-p.num_bound, p.num_bound);
    auto den = uniform(1, p.den_bound);
    return Rational(num, den);
  }

  Rational nonzero_rational(const RationalPolicy& p = {}) {
    for (;;) {
      auto r = rational(p);
      if (!r.is_zero()) return r;
    }
  }

  std::vector<Rational> rationals(std::size_t n, const RationalPolicy& p = {}) {
    std::vector<Rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(rational(p));
    return out;
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace crk
