#pragma once
#include <cstdint>

#include "dnls/grid.hpp"

namespace dnls {

// xorshift64* generator; fully deterministic across platforms.
// Seed 0 is remapped to a fixed nonzero default so the stream is never stuck.
struct Xorshift64s {
  std::uint64_t state;

  explicit Xorshift64s(std::uint64_t seed)
      : state(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    std::uint64_t x = state;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state = x;
    return x * 0x2545F4914F6CDD1Dull;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }                        // [-1,1)
};

// Band-limited random field: complex coefficients on modes |j| <= kmodes with
// a Gaussian envelope in j; draw order is fixed so results depend only on the
// generator state.
Field random_smooth_field(const GridSpec& g, Xorshift64s& rng, std::size_t kmodes);

Field gaussian_bump(const GridSpec& g, double center, double width);

}  // namespace dnls
