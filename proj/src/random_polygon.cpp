#include "cheegerlab/random_polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

namespace {

// Signed increments along one coordinate: sort the draws, route each interior
// value to one of two monotone chains at random, then walk the chains in
// opposite directions. The increments sum to zero by construction.
std::vector<double> coordinate_increments(int n, SplitMix64& rng) {
  std::vector<double> vals(n);
  for (double& v : vals) v = rng.uniform01();
  std::sort(vals.begin(), vals.end());

  std::vector<double> inc;
  inc.reserve(n);
  double up = vals.front(), down = vals.front();
  for (int k = 1; k + 1 < n; ++k) {
    if (rng.next() & 1) {
      inc.push_back(vals[k] - up);
      up = vals[k];
    } else {
      inc.push_back(down - vals[k]);
      down = vals[k];
    }
  }
  inc.push_back(vals.back() - up);
  inc.push_back(down - vals.back());
  return inc;
}

}  // namespace

ConvexPolygon valtr_polygon(int n, SplitMix64& rng) {
  if (n < 3) throw DegenerateInput("valtr_polygon: need n >= 3");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> dx = coordinate_increments(n, rng);
    std::vector<double> dy = coordinate_increments(n, rng);

    // random pairing of x- and y-increments (Fisher-Yates on dy)
    for (int k = n - 1; k > 0; --k) {
      const int j = int(rng.next() % std::uint64_t(k + 1));
      std::swap(dy[k], dy[j]);
    }

    std::vector<Point2> edges(n);
    for (int k = 0; k < n; ++k) edges[k] = {dx[k], dy[k]};
    std::sort(edges.begin(), edges.end(), [](Point2 a, Point2 b) {
      return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });

    std::vector<Point2> verts(n);
    Point2 cur{0.0, 0.0};
    Point2 lo{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      verts[k] = cur;
      cur = cur + edges[k];
      lo.x = std::min(lo.x, verts[k].x);
      lo.y = std::min(lo.y, verts[k].y);
    }
    for (Point2& v : verts) v = v - lo;

    try {
      return make_polygon(verts);
    } catch (const DegenerateInput&) {
      // fp-collinear draw; take a fresh one
    }
  }
  throw DegenerateInput("valtr_polygon: repeated degenerate draws");
}

ConvexPolygon sample_item(const SamplerConfig& cfg, int item) {
  SplitMix64 rng = derived_stream(cfg.seed, std::uint64_t(item));
  ConvexPolygon p = valtr_polygon(cfg.n_sides, rng);
  return scale(p, 1.0 / std::sqrt(area(p)));
}

std::vector<ConvexPolygon> sample_batch(const SamplerConfig& cfg) {
  if (cfg.count <= 0) throw DegenerateInput("sample_batch: count must be > 0");
  std::vector<ConvexPolygon> out;
  out.reserve(std::size_t(cfg.count));
  for (int i = 0; i < cfg.count; ++i) {
    out.push_back(sample_item(cfg, i));
  }
  return out;
}

}  // namespace cheegerlab
