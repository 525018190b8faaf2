#pragma once

#include <cstdint>

namespace augkit {

// Deterministic counter-based generator. The k-th draw is a pure function of
// (seed, k) and derive(i) is a pure function of (seed, i), so any draw or
// child stream can be reproduced on any platform from the seed alone.
//
// Exact construction (all arithmetic mod 2^64):
//   mix(z)      = splitmix64 finalizer:
//                   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                   return z ^ (z >> 31)
//   draw k      = mix(seed + k * 0x9E3779B97F4A7C15), k = 1, 2, ...
//   derive(i)   = Rng(mix((seed ^ 0x5851F42D4C957F2D)
//                         + (i + 1) * 0x9E3779B97F4A7C15))
//
// uniform() maps the top 53 bits of a draw onto [0, 1). gaussian() is
// Box-Muller and always consumes exactly two draws. uniform_int() uses the
// multiply-shift range reduction on one draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix(seed_ + counter_ * kGolden);
  }

  // [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next_u64());
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * range;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

  std::size_t choice(std::size_t n) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
  }

  bool coin(double p) { return uniform() < p; }

  double gaussian(double mean, double stddev);

  // Independent child stream; pure function of (seed, child_index).
  Rng derive(std::uint64_t child_index) const {
    return Rng(mix((seed_ ^ kDomain) + (child_index + 1) * kGolden));
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kDomain = 0x5851F42D4C957F2DULL;

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace augkit
