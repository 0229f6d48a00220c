#pragma once

#include <cstdint>
#include <vector>

#include "cheegerlab/geometry.hpp"

namespace cheegerlab {

// Counter-mode 64-bit generator (SplitMix64). Per-item streams are derived
// by spacing the seed with the golden-ratio increment, so batch items can be
// produced independently and in parallel without changing the output.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 derived_stream(std::uint64_t seed, std::uint64_t item) {
  return SplitMix64{seed + item * 0x9E3779B97F4A7C15ull};
}

struct SamplerConfig {
  int n_sides;
  std::uint64_t seed;
  int count;
};

// Random convex polygon with n vertices inside the unit square, distributed
// per Valtr's construction: independent uniform x- and y-increments are
// paired at random and chained in angular order. Collinear-degenerate draws
// (probability zero, fp aside) are redrawn.
ConvexPolygon valtr_polygon(int n, SplitMix64& rng);

// Item i of the batch: the unit-area polygon drawn from derived_stream(seed,
// i). Items are mutually independent, so any evaluation order reproduces the
// serial batch.
ConvexPolygon sample_item(const SamplerConfig& cfg, int item);

// `count` unit-area polygons; item i uses derived_stream(seed, i).
std::vector<ConvexPolygon> sample_batch(const SamplerConfig& cfg);

}  // namespace cheegerlab
