#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/optimizer.hpp"
#include "cheegerlab/random_polygon.hpp"
#include "doctest.h"

using namespace cheegerlab;

namespace {

std::vector<double> to_coords(const ConvexPolygon& p) {
  const std::size_t n = p.size();
  std::vector<double> c(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = p[k].x;
    c[n + k] = p[k].y;
  }
  return c;
}

ConvexPolygon from_coords(const std::vector<double>& c) {
  const std::size_t n = c.size() / 2;
  std::vector<Point2> verts(n);
  for (std::size_t k = 0; k < n; ++k) verts[k] = {c[k], c[n + k]};
  return make_polygon(verts);
}

// index of the stored vertex closest to q (make_polygon rotates the order)
std::size_t locate(const ConvexPolygon& p, Point2 q) {
  std::size_t best = 0;
  double best_d = distance(p[0], q);
  for (std::size_t k = 1; k < p.size(); ++k) {
    const double d = distance(p[k], q);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  REQUIRE(best_d < 1e-12);
  return best;
}

}  // namespace

TEST_CASE("convexity constraints flag reflex chains") {
  // counterclockwise unit square: every C_k is exactly -1
  const std::vector<double> square{0, 1, 1, 0, 0, 0, 1, 1};
  for (double c : convexity_constraints(square)) {
    CHECK(c == doctest::Approx(-1.0).epsilon(1e-15));
  }

  // vertex 2 pushed inside: its constraint turns positive
  const std::vector<double> dented{0, 2, 0.9, 0, 0, 0, 0.9, 2};
  const std::vector<double> cons = convexity_constraints(dented);
  CHECK(cons[2] > 0.0);

  CHECK_THROWS_AS(convexity_constraints(std::vector<double>{0, 1, 0, 1}),
                  DegenerateInput);
}

TEST_CASE("area, perimeter and constraint gradients match finite differences") {
  SplitMix64 rng = derived_stream(17, 0);
  for (int trial = 0; trial < 4; ++trial) {
    const ConvexPolygon p = valtr_polygon(5, rng);
    const std::vector<double> c = to_coords(p);
    const std::vector<double> da = area_gradient(c);
    const std::vector<double> dp = perimeter_gradient(c);
    const std::vector<std::vector<double>> dc = convexity_gradients(c);

    const double step = 1e-6;
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<double> hi = c, lo = c;
      hi[i] += step;
      lo[i] -= step;
      const double fd_a =
          (area(from_coords(hi)) - area(from_coords(lo))) / (2 * step);
      const double fd_p =
          (perimeter(from_coords(hi)) - perimeter(from_coords(lo))) /
          (2 * step);
      CHECK(std::abs(da[i] - fd_a) <= 1e-6 * (1.0 + std::abs(fd_a)));
      CHECK(std::abs(dp[i] - fd_p) <= 1e-6 * (1.0 + std::abs(fd_p)));

      const std::vector<double> ch = convexity_constraints(hi);
      const std::vector<double> cl = convexity_constraints(lo);
      for (std::size_t k = 0; k < ch.size(); ++k) {
        const double fd_c = (ch[k] - cl[k]) / (2 * step);
        CHECK(std::abs(dc[k][i] - fd_c) <= 1e-6 * (1.0 + std::abs(fd_c)));
      }
    }

    // translation invariance: coordinate sums vanish
    double sx = 0.0, sp = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      sx += da[k];
      sp += dp[k];
    }
    CHECK(std::abs(sx) <= 1e-12);
    CHECK(std::abs(sp) <= 1e-12);
  }
}

TEST_CASE("Cheeger shape derivative against a frozen pentagon") {
  const std::vector<Point2> input{
      {0, 0}, {3, 0}, {4, 1.5}, {2, 3}, {-0.5, 1.2}};
  // (dh/dx_k, dh/dy_k) per input vertex, cross-checked by central
  // differences to 5e-10
  const double oracle[10] = {
      0.01325966748,  0.1602573799,   //
      -0.04986244906, 0.1988103564,   //
      -0.08707009869, -0.04620355776,  //
      0.02769965557,  -0.2001548975,  //
      0.09597322348,  -0.1127092821};

  const ConvexPolygon pent = make_polygon(input);
  const std::vector<double> g = cheeger_gradient(pent);
  REQUIRE(g.size() == 10);
  for (std::size_t k = 0; k < input.size(); ++k) {
    const std::size_t j = locate(pent, input[k]);
    CHECK(g[j] == doctest::Approx(oracle[2 * k]).epsilon(1e-8));
    CHECK(g[pent.size() + j] ==
          doctest::Approx(oracle[2 * k + 1]).epsilon(1e-8));
  }

  // dilation by s scales the gradient by 1/s^2
  const std::vector<double> g2 = cheeger_gradient(scale(pent, 2.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g2[i] == doctest::Approx(g[i] / 4.0).epsilon(1e-9));
  }

  // translation invariance
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < pent.size(); ++k) {
    sx += g[k];
    sy += g[pent.size() + k];
  }
  CHECK(std::abs(sx) <= 1e-12);
  CHECK(std::abs(sy) <= 1e-12);
}

TEST_CASE("square gradient has the dihedral symmetry pattern") {
  const ConvexPolygon sq = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const std::vector<double> g = cheeger_gradient(sq);
  REQUIRE(g.size() == 8);
  // inward motion of any vertex raises h, so signs follow the geometry
  CHECK(g[0] > 0.0);  // (0,0) moving right
  CHECK(g[1] < 0.0);  // (1,0) moving right
  CHECK(g[2] < 0.0);
  CHECK(g[3] > 0.0);
  CHECK(g[4] > 0.0);  // (0,0) moving up
  CHECK(g[5] > 0.0);  // (1,0) moving up
  CHECK(g[6] < 0.0);
  CHECK(g[7] < 0.0);
  const double mag = std::abs(g[0]);
  for (double v : g) {
    CHECK(std::abs(v) == doctest::Approx(mag).epsilon(1e-12));
  }
}

TEST_CASE("shape derivative matches finite differences on random pentagons") {
  SplitMix64 rng = derived_stream(23, 0);
  int tested = 0;
  while (tested < 5) {
    const ConvexPolygon p = valtr_polygon(5, rng);
    if (!cheeger(p).is_cheeger_regular) continue;
    ++tested;
    const std::vector<double> g = cheeger_gradient(p);
    const std::vector<double> c = to_coords(p);
    const double step = 1e-6;
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<double> hi = c, lo = c;
      hi[i] += step;
      lo[i] -= step;
      const double fd =
          (cheeger(from_coords(hi)).h - cheeger(from_coords(lo)).h) /
          (2 * step);
      CHECK(std::abs(g[i] - fd) <= 1e-4 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("maximize_h recovers the square at the corner abscissa") {
  const OptimizeResult res = maximize_h(4, 4.0);
  CHECK(res.h == doctest::Approx(2.0 + std::sqrt(std::numbers::pi))
                     .epsilon(1e-6));
  CHECK(std::abs(res.area_residual) <= 1e-8);
  CHECK(std::abs(res.perimeter_residual) <= 1e-8);
  CHECK(res.max_convexity <= 1e-12);
  CHECK(res.effective_sides == 4);
}

TEST_CASE("maximize_h attains the quadrilateral ceiling off the corner") {
  for (double p0 : {4.2, 4.6}) {
    const OptimizeResult res = maximize_h(4, p0);
    const double target = upper_bound_ngon(p0, 1.0, 4);
    CHECK(std::abs(res.h - target) <= 1e-4 * target);
    CHECK(res.converged);
    CHECK(std::abs(res.area_residual) <= 1e-8);
    CHECK(std::abs(res.perimeter_residual) <= 1e-8);
    CHECK(res.cheeger_regular);
  }
  CHECK_THROWS_AS(maximize_h(4, 3.9), InfeasibleTarget);
  CHECK_THROWS_AS(maximize_h(2, 4.0), DegenerateInput);
}

TEST_CASE("boundary trace is increasing and tagged") {
  const std::vector<double> grid{4.05, 4.15, 4.25};
  const std::vector<DiagramPoint> pts = trace_upper_boundary(4, grid);
  REQUIRE(pts.size() == grid.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].x == doctest::Approx(grid[i]).epsilon(1e-6));
    CHECK(std::abs(pts[i].y - upper_bound_ngon(pts[i].x, 1.0, 4)) <= 1e-6);
    CHECK(pts[i].y > prev);
    prev = pts[i].y;
    CHECK(pts[i].source.rfind("optimize:n=4,p0=", 0) == 0);
  }
}
