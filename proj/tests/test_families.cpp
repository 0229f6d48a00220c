#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/diagram.hpp"
#include "cheegerlab/families.hpp"
#include "cheegerlab/geometry.hpp"
#include "doctest.h"

using namespace cheegerlab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoSqrtPi = 2.0 * std::sqrt(kPi);

// All circumscribed generators build around the origin, so tangency is
// "every side line at the same distance from the origin".
double max_tangency_residual(const ConvexPolygon& p) {
  const AngleData ad = angle_data(p);
  double r = std::numeric_limits<double>::infinity();
  std::vector<double> dist(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    dist[k] = dot(ad.outward_normals[k], p[k]);
    r = std::min(r, dist[k]);
  }
  double worst = 0.0;
  for (double d : dist) worst = std::max(worst, std::abs(d - r));
  return worst;
}

ConvexPolygon rectangle(double w, double h) {
  return make_polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
}

// Equiangular pentagon from a closure-feasible edge-length vector
// l_k = 1 + a cos(2 theta_k) + b sin(2 theta_k), theta_k = 2 pi k / 5.
// The second-harmonic weights sum to zero against the edge directions, so
// the chain closes for every (a, b); positivity of l_k is the only limit.
ConvexPolygon equiangular_pentagon(double a, double b) {
  std::vector<Point2> verts;
  Point2 cur{0.0, 0.0};
  for (int k = 0; k < 5; ++k) {
    const double th = 2.0 * kPi * k / 5.0;
    const double len = 1.0 + a * std::cos(2.0 * th) + b * std::sin(2.0 * th);
    REQUIRE(len > 0.0);
    verts.push_back(cur);
    cur = cur + Point2{len * std::cos(th), len * std::sin(th)};
  }
  return make_polygon(verts);
}

}  // namespace

TEST_CASE("stadium diagram coordinates") {
  const SmoothFamilyPoint disk = stadium(0.0);
  CHECK(disk.x == doctest::Approx(kTwoSqrtPi).epsilon(1e-14));
  CHECK(disk.y == doctest::Approx(kTwoSqrtPi).epsilon(1e-14));
  CHECK(disk.descriptor.kind == SmoothShapeDescriptor::Kind::Stadium);
  CHECK(disk.descriptor.parameter == 0.0);
  CHECK(disk.descriptor.normalized);

  // x = y = 2(pi + t)/sqrt(pi + 2t)
  const SmoothFamilyPoint q1 = stadium(1.0);
  CHECK(q1.x == doctest::Approx(3.65299051102735).epsilon(1e-13));
  CHECK(q1.y == q1.x);
  CHECK(q1.x ==
        doctest::Approx(2.0 * (kPi + 1.0) / std::sqrt(kPi + 2.0)).epsilon(1e-14));

  // strictly increasing in t
  double prev = disk.x;
  for (double t : {0.25, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double x = stadium(t).x;
    CHECK(x > prev);
    prev = x;
  }

  CHECK_THROWS_AS(stadium(-0.1), DegenerateInput);
}

TEST_CASE("cup body diagram coordinates sit on the convex lower bound") {
  const SmoothFamilyPoint disk = cup_body(2.0);
  CHECK(disk.x == doctest::Approx(kTwoSqrtPi).epsilon(1e-14));
  CHECK(disk.y == doctest::Approx(kTwoSqrtPi).epsilon(1e-14));

  const SmoothFamilyPoint c4 = cup_body(4.0);
  CHECK(c4.x == doctest::Approx(4.247963825803771).epsilon(1e-13));
  CHECK(c4.y == doctest::Approx(3.896435763807401).epsilon(1e-13));
  // P = 2 sqrt(sqrt(d^2-4) + 2 asin(2/d)) at d = 4
  const double p_raw = std::sqrt(12.0) + 2.0 * std::asin(0.5);
  CHECK(c4.x == doctest::Approx(2.0 * std::sqrt(p_raw)).epsilon(1e-14));

  for (double d : {2.0, 2.5, 3.0, 4.0, 8.0, 30.0}) {
    const SmoothFamilyPoint c = cup_body(d);
    CHECK(c.y == doctest::Approx(0.5 * c.x + std::sqrt(kPi)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(cup_body(1.99), DeltaTooSmall);
}

TEST_CASE("perimeter inversions round-trip to 1e-10") {
  for (double p : {3.6, 4.0, 5.0, 8.0, 25.0}) {
    const double t = stadium_parameter_for_perimeter(p);
    CHECK(stadium(t).x == doctest::Approx(p).epsilon(1e-11));
    const double d = cup_parameter_for_perimeter(p);
    CHECK(cup_body(d).x == doctest::Approx(p).epsilon(1e-11));
  }
  CHECK(stadium_parameter_for_perimeter(kTwoSqrtPi) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK_THROWS_AS(stadium_parameter_for_perimeter(3.5), InfeasibleTarget);
  CHECK_THROWS_AS(cup_parameter_for_perimeter(2.0), InfeasibleTarget);
}

TEST_CASE("regular polygons") {
  const ConvexPolygon sq = regular_polygon(4);
  CHECK(area(sq) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(perimeter(sq) == doctest::Approx(4.0).epsilon(1e-14));
  // one vertex sits on the positive x axis at the circumradius
  bool on_axis = false;
  for (const Point2& v : sq.vertices()) {
    if (std::abs(v.x - std::sqrt(0.5)) < 1e-12 && std::abs(v.y) < 1e-12) {
      on_axis = true;
    }
  }
  CHECK(on_axis);

  CHECK(perimeter(regular_polygon(3)) ==
        doctest::Approx(6.0 / std::pow(3.0, 0.25)).epsilon(1e-14));

  const AngleData hex = angle_data(regular_polygon(6));
  for (double a : hex.interior_angles) {
    CHECK(a == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  }

  for (int n : {3, 5, 12}) {
    CHECK(perimeter(regular_polygon(n)) ==
          doctest::Approx(regular_ngon_perimeter(n)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(regular_polygon(2), DegenerateInput);
}

TEST_CASE("stretched even polygons stay on the n-gon upper curve") {
  // delta at the lower limit reproduces the regular polygon
  for (int n : {4, 6, 8}) {
    const ConvexPolygon base = regular_polygon(n);
    const ConvexPolygon same = stretched_regular(n, diameter(base));
    CHECK(same.size() == std::size_t(n));
    CHECK(perimeter(same) == doctest::Approx(perimeter(base)).epsilon(1e-12));
    CHECK(cheeger(same).h == doctest::Approx(cheeger(base).h).epsilon(1e-12));
  }

  // the normalized 1 x 2 rectangle
  const ConvexPolygon r2 = stretched_regular(4, std::sqrt(5.0));
  const DiagramPoint pt2 = diagram_point(r2);
  CHECK(pt2.x == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(pt2.y == doctest::Approx(4.029616089399321).epsilon(1e-12));
  CHECK(std::abs(pt2.y - upper_bound_ngon(pt2.x, 1.0, 4)) <= 1e-10);

  // 1 x d rectangles, generated both directly and through the stretch
  for (double d : {1.0, 2.0, 5.0, 10.0, 50.0}) {
    const DiagramPoint direct = diagram_point(rectangle(d, 1.0));
    CHECK(std::abs(direct.y - upper_bound_ngon(direct.x, 1.0, 4)) <= 1e-8);
    const DiagramPoint stretched =
        diagram_point(stretched_regular(4, std::sqrt(d * d + 1.0)));
    CHECK(stretched.x == doctest::Approx(direct.x).epsilon(1e-11));
    CHECK(stretched.y == doctest::Approx(direct.y).epsilon(1e-11));
  }

  // hexagons as well
  const double d6 = diameter(regular_polygon(6));
  for (double delta : {d6, 1.3, 2.0, 4.0}) {
    const DiagramPoint pt = diagram_point(stretched_regular(6, delta));
    CHECK(std::abs(pt.y - upper_bound_ngon(pt.x, 1.0, 6)) <= 1e-8);
    CHECK(*pt.cheeger_regular);
  }

  // thin rectangles approach y = x
  const DiagramPoint thin = diagram_point(rectangle(1000.0, 1.0));
  CHECK(std::abs(thin.y / thin.x - 1.0) < 0.01);

  CHECK_THROWS_AS(stretched_regular(5, 3.0), OddN);
  CHECK_THROWS_AS(stretched_regular(4, 1.0), DeltaTooSmall);
}

TEST_CASE("circumscribed extensions stay tangent to the incircle") {
  const ConvexPolygon oct = regular_polygon(8);
  const double d0 = diameter(oct);

  const ConvexPolygon same = circumscribed_extension(8, d0);
  CHECK(perimeter(same) == doctest::Approx(perimeter(oct)).epsilon(1e-12));
  CHECK(area(same) == doctest::Approx(1.0).epsilon(1e-12));

  for (double delta : {1.05 * d0, 1.5, 2.0, 3.0}) {
    const ConvexPolygon v = circumscribed_extension(8, delta);
    CHECK(v.size() <= 8);
    CHECK(max_tangency_residual(v) <= 1e-10);
    const DiagramPoint pt = diagram_point(v);
    CHECK(std::abs(pt.y - (0.5 * pt.x + std::sqrt(kPi))) <= 1e-9);
  }

  // the apex ends up at distance delta from the far side: delta is the
  // diameter of the output
  const ConvexPolygon v2 = circumscribed_extension(8, 2.0);
  CHECK(diameter(v2) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(circumscribed_extension(7, 3.0), OddN);
  CHECK_THROWS_AS(circumscribed_extension(8, 0.9 * d0), DeltaTooSmall);
}

TEST_CASE("side-merging family from the regular pentagon to a square") {
  const ConvexPolygon r5 = regular_polygon(5);
  const double r_in = inradius(r5);

  const ConvexPolygon w0 = merge_sides_family(5, 0.0);
  CHECK(w0.size() == 5);
  CHECK(perimeter(w0) == doctest::Approx(perimeter(r5)).epsilon(1e-12));

  const ConvexPolygon w1 = merge_sides_family(5, 1.0);
  CHECK(w1.size() == 4);

  double prev_x = 0.0;
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const ConvexPolygon w = merge_sides_family(5, s);
    CHECK(max_tangency_residual(w) <= 1e-10);
    CHECK(inradius(w) == doctest::Approx(r_in).epsilon(1e-12));
    const DiagramPoint pt = diagram_point(w);
    CHECK(std::abs(pt.y - (0.5 * pt.x + std::sqrt(kPi))) <= 1e-9);
    CHECK(pt.x > prev_x - 1e-12);
    prev_x = pt.x;
  }
  // the sweep reaches at least the regular-square abscissa
  CHECK(prev_x >= regular_ngon_perimeter(4) - 1e-9);

  CHECK_THROWS_AS(merge_sides_family(6, 0.5), EvenN);
  CHECK_THROWS_AS(merge_sides_family(4, 0.5), DegenerateInput);
  CHECK_THROWS_AS(merge_sides_family(5, 1.2), DegenerateInput);
  CHECK_THROWS_AS(merge_sides_family(5, -0.1), DegenerateInput);
}

TEST_CASE("minkowski path between the stadium and the cup body") {
  const double p = 4.0;
  const DiagramPoint top = minkowski_path(p, 1.0, 256);
  CHECK(top.x == doctest::Approx(p).epsilon(5e-4));
  CHECK(top.y == doctest::Approx(p).epsilon(5e-4));

  const DiagramPoint bottom = minkowski_path(p, 0.0, 256);
  CHECK(bottom.x == doctest::Approx(p).epsilon(5e-4));
  CHECK(bottom.y ==
        doctest::Approx(0.5 * p + std::sqrt(kPi)).epsilon(5e-4));

  // discretization error shrinks under refinement
  const double coarse = std::abs(minkowski_path(p, 1.0, 128).x - p);
  const double fine = std::abs(minkowski_path(p, 1.0, 512).x - p);
  CHECK(fine < coarse);

  const BandSpec convex = band(ShapeClass::Convex);
  for (int k = 0; k <= 8; ++k) {
    const DiagramPoint pt = minkowski_path(4.5, k / 8.0, 128);
    CHECK(classify(pt, convex, 1e-4).kind != Membership::Outside);
    CHECK(pt.x >= 4.5 / 2.0 - 1e-6);
  }

  CHECK_THROWS_AS(minkowski_path(4.0, 0.5, 8), ResolutionTooLow);
  CHECK_THROWS_AS(minkowski_path(4.0, 1.5, 64), DegenerateInput);
}

TEST_CASE("smooth-shape discretizations converge to the closed forms") {
  // stadiums are Cheeger sets of themselves: y = x
  for (double p : {4.0, 5.5}) {
    const ConvexPolygon s256 = stadium_polygon(p, 256);
    const DiagramPoint pt256 = diagram_point(s256);
    CHECK(std::abs(pt256.y - pt256.x) <= 2e-3);
    CHECK(std::abs(pt256.x - p) <= 2e-3);

    const DiagramPoint pt512 = diagram_point(stadium_polygon(p, 512));
    CHECK(std::abs(pt512.y - pt512.x) <= std::abs(pt256.y - pt256.x) + 1e-12);
    CHECK(std::abs(pt512.x - p) < std::abs(pt256.x - p));
  }

  // cup bodies realize the convex lower bound
  for (double p : {4.5, 6.0}) {
    const DiagramPoint c256 = diagram_point(cup_polygon(p, 256));
    const DiagramPoint c512 = diagram_point(cup_polygon(p, 512));
    const double gap256 = std::abs(c256.y - (0.5 * c256.x + std::sqrt(kPi)));
    const double gap512 = std::abs(c512.y - (0.5 * c512.x + std::sqrt(kPi)));
    CHECK(gap256 <= 1e-4);
    CHECK(gap512 <= gap256 + 1e-12);
  }
}

TEST_CASE("parallel displacement follows the exact polynomial expansion") {
  const ConvexPolygon sq = rectangle(1.0, 1.0);

  // identity at eps = 0
  const ConvexPolygon same = parallel_displacement(sq, 0, 0.0);
  REQUIRE(same.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(distance(same[k], sq[k]) <= 1e-15);
  }

  // right angles: cot = 0, 1/sin = 1, so dP = 2 eps and dA = l eps
  const ConvexPolygon grown = parallel_displacement(sq, 0, 0.1);
  CHECK(area(grown) == doctest::Approx(1.1).epsilon(1e-13));
  CHECK(perimeter(grown) == doctest::Approx(4.2).epsilon(1e-13));

  // general polygon: the expansion is exact, not asymptotic
  const ConvexPolygon pent =
      make_polygon({{0, 0}, {3, 0}, {4, 1.5}, {2, 3}, {-0.5, 1.2}});
  const AngleData ad = angle_data(pent);
  const double a0 = area(pent), p0 = perimeter(pent), t0 = t_functional(pent);
  for (std::size_t side = 0; side < pent.size(); ++side) {
    const double aa = ad.interior_angles[side];
    const double bb = ad.interior_angles[(side + 1) % pent.size()];
    const double len = ad.side_lengths[side];
    for (double eps : {0.05, -0.04}) {
      const ConvexPolygon moved = parallel_displacement(pent, side, eps);
      const double dp = (1.0 / std::tan(aa) + 1.0 / std::tan(bb) +
                         1.0 / std::sin(aa) + 1.0 / std::sin(bb)) *
                        eps;
      const double da = len * eps +
                        0.5 * (1.0 / std::tan(aa) + 1.0 / std::tan(bb)) *
                            eps * eps;
      CHECK(perimeter(moved) == doctest::Approx(p0 + dp).epsilon(1e-12));
      CHECK(area(moved) == doctest::Approx(a0 + da).epsilon(1e-12));
      CHECK(t_functional(moved) == doctest::Approx(t0).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(parallel_displacement(sq, 0, 0.5), EpsTooLarge);
  CHECK_THROWS_AS(parallel_displacement(sq, 0, -0.5), EpsTooLarge);
  CHECK_NOTHROW(parallel_displacement(sq, 0, 0.49));
  CHECK_THROWS_AS(parallel_displacement(sq, 7, 0.1), DegenerateInput);
}

TEST_CASE("psi coefficients measure departure from circumscription") {
  const ConvexPolygon sq = rectangle(1.0, 1.0);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(psi_coefficient(sq, k) == doctest::Approx(0.0).epsilon(1e-12));
  }

  const ConvexPolygon rect = rectangle(2.0, 1.0);
  const AngleData rad = angle_data(rect);
  double psi_sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double psi = psi_coefficient(rect, k);
    psi_sum += psi;
    if (rad.side_lengths[k] > 1.5) {
      CHECK(psi == doctest::Approx(-2.0).epsilon(1e-13));
    } else {
      CHECK(psi == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  // sum identity: sum psi = 4T - P^2/A
  CHECK(psi_sum == doctest::Approx(-2.0).epsilon(1e-12));

  const ConvexPolygon pent =
      make_polygon({{0, 0}, {3, 0}, {4, 1.5}, {2, 3}, {-0.5, 1.2}});
  double sum = 0.0;
  for (std::size_t k = 0; k < pent.size(); ++k) {
    sum += psi_coefficient(pent, k);
  }
  const double identity = 4.0 * t_functional(pent) -
                          perimeter(pent) * perimeter(pent) / area(pent);
  CHECK(sum == doctest::Approx(identity).epsilon(1e-11));

  // finite differences on the displacement: d(P^2/A)/deps = (P/A) psi
  for (std::size_t side = 0; side < pent.size(); ++side) {
    const double h = 1e-6;
    const auto ratio = [&](double eps) {
      const ConvexPolygon m = parallel_displacement(pent, side, eps);
      return perimeter(m) * perimeter(m) / area(m);
    };
    const double fd = (ratio(h) - ratio(-h)) / (2.0 * h);
    const double analytic = perimeter(pent) / area(pent) *
                            psi_coefficient(pent, side);
    CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
  }

  // circumscribed polygons have vanishing psi sum
  const ConvexPolygon w = merge_sides_family(5, 0.3);
  double wsum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) wsum += psi_coefficient(w, k);
  CHECK(wsum == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("equiangular perimeter ceiling for odd n") {
  CHECK(c_n_upper_bound(5) ==
        doctest::Approx(10.0 * std::sqrt(std::tan(0.3 * kPi))).epsilon(1e-14));
  CHECK(c_n_upper_bound(5) == doctest::Approx(11.73).epsilon(1e-3));
  CHECK(c_n_upper_bound(7) ==
        doctest::Approx(14.0 * std::sqrt(std::tan(5.0 * kPi / 14.0)))
            .epsilon(1e-14));
  CHECK_THROWS_AS(c_n_upper_bound(6), EvenN);
  CHECK_THROWS_AS(c_n_upper_bound(3), EvenN);

  // every unit-area equiangular pentagon stays below the ceiling
  const double c5 = c_n_upper_bound(5);
  for (double a : {-0.8, -0.4, 0.0, 0.4, 0.8, 0.99}) {
    for (double b : {-0.55, 0.0, 0.55}) {
      if (1.0 - std::hypot(a, b) <= 0.01) continue;
      const ConvexPolygon q = equiangular_pentagon(a, b);
      const AngleData ad = angle_data(q);
      for (double ang : ad.interior_angles) {
        CHECK(ang == doctest::Approx(0.6 * kPi).epsilon(1e-9));
      }
      const double p_unit = perimeter(q) / std::sqrt(area(q));
      CHECK(p_unit <= c5 + 1e-9);
    }
  }
}
