#include "cheegerlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/errors.hpp"

namespace cheegerlab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

// Monotone-increasing inversion by plain bisection.
template <typename F>
double bisect_increasing(F f, double lo, double hi, double target) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double stadium_perimeter(double t) {
  return 2.0 * (kPi + t) / std::sqrt(kPi + 2.0 * t);
}

// Raw cup body: unit disk plus two apexes at distance d. Its raw perimeter
// is exactly twice its raw area, so the normalized perimeter is 2 sqrt(A).
double cup_raw_area(double d) {
  return std::sqrt(d * d - 4.0) + 2.0 * std::asin(2.0 / d);
}

double cup_perimeter(double d) { return 2.0 * std::sqrt(cup_raw_area(d)); }

// Polygon circumscribed about the circle of radius r at the origin, one side
// per tangency direction. Consecutive tangent lines meet on the bisector at
// distance r / cos(half gap).
ConvexPolygon circumscribed_from_tangency_angles(std::vector<double> phis,
                                                 double r) {
  std::sort(phis.begin(), phis.end());
  phis.erase(std::unique(phis.begin(), phis.end(),
                         [](double a, double b) { return b - a < 1e-12; }),
             phis.end());
  if (phis.size() >= 2 &&
      phis.front() + 2.0 * kPi - phis.back() < 1e-12) {
    phis.pop_back();
  }
  const std::size_t m = phis.size();
  std::vector<Point2> verts(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double a = phis[k];
    const double b = (k + 1 < m) ? phis[k + 1] : phis[0] + 2.0 * kPi;
    const double mid = 0.5 * (a + b);
    const double rho = r / std::cos(0.5 * (b - a));
    verts[k] = {rho * std::cos(mid), rho * std::sin(mid)};
  }
  return make_polygon(verts);
}

// Elongate the unit-area regular n-gon (two sides horizontal) by pulling the
// halves apart by s. All vertices have nonzero x in this orientation.
std::vector<Point2> elongated_regular(int n, double s) {
  const double area_circum = 0.5 * n * std::sin(2.0 * kPi / n);
  const double radius = std::sqrt(1.0 / area_circum);
  std::vector<Point2> verts(n);
  for (int k = 0; k < n; ++k) {
    const double th = kPi / 2 - kPi / n + 2.0 * kPi * k / n;
    const double x = radius * std::cos(th);
    verts[k] = {x + (x > 0 ? 0.5 * s : -0.5 * s), radius * std::sin(th)};
  }
  return verts;
}

}  // namespace

SmoothFamilyPoint stadium(double t) {
  if (t < 0 || !std::isfinite(t)) {
    throw DegenerateInput("stadium: half-distance must be >= 0");
  }
  const double x = stadium_perimeter(t);
  return {{SmoothShapeDescriptor::Kind::Stadium, t, true}, x, x};
}

SmoothFamilyPoint cup_body(double d) {
  if (d < 2.0 || !std::isfinite(d)) {
    throw DeltaTooSmall("cup_body: diameter must be >= 2");
  }
  const double x = cup_perimeter(d);
  return {{SmoothShapeDescriptor::Kind::CupBody, d, true}, x,
          0.5 * x + kSqrtPi};
}

double stadium_parameter_for_perimeter(double p) {
  if (p < 2.0 * kSqrtPi - 1e-12) {
    throw InfeasibleTarget("stadium: perimeter below the disk value");
  }
  const double hi = std::max(1.0, p * p);
  return bisect_increasing(stadium_perimeter, 0.0, hi, p);
}

double cup_parameter_for_perimeter(double p) {
  if (p < 2.0 * kSqrtPi - 1e-12) {
    throw InfeasibleTarget("cup_body: perimeter below the disk value");
  }
  const double hi = std::max(3.0, p * p);
  return bisect_increasing(cup_perimeter, 2.0, hi, p);
}

ConvexPolygon regular_polygon(int n) {
  if (n < 3) throw DegenerateInput("regular_polygon: need n >= 3");
  const double area_circum = 0.5 * n * std::sin(2.0 * kPi / n);
  const double radius = std::sqrt(1.0 / area_circum);
  std::vector<Point2> verts(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    verts[k] = {radius * std::cos(th), radius * std::sin(th)};
  }
  return make_polygon(verts);
}

ConvexPolygon stretched_regular(int n, double delta) {
  if (n < 3) throw DegenerateInput("stretched_regular: need n >= 4");
  if (n % 2 != 0) throw OddN("stretched_regular: n must be even");
  const ConvexPolygon base = make_polygon(elongated_regular(n, 0.0));
  const double d0 = diameter(base);
  if (delta < d0 * (1.0 - 1e-9)) {
    throw DeltaTooSmall("stretched_regular: delta below the regular diameter");
  }
  const double s = bisect_increasing(
      [n](double v) {
        return diameter(ConvexPolygon::unchecked(elongated_regular(n, v)));
      },
      0.0, std::max(1.0, delta), std::max(delta, d0));
  ConvexPolygon out = make_polygon(elongated_regular(n, s));
  return scale(out, 1.0 / std::sqrt(area(out)));
}

ConvexPolygon circumscribed_extension(int n, double delta) {
  if (n < 3) throw DegenerateInput("circumscribed_extension: need n >= 4");
  if (n % 2 != 0) throw OddN("circumscribed_extension: n must be even");
  const double tan_n = std::tan(kPi / n);
  const double r = std::sqrt(1.0 / (n * tan_n));  // unit-area apothem
  const double big_r = r / std::cos(kPi / n);     // circumradius
  if (delta < 2.0 * big_r * (1.0 - 1e-9)) {
    throw DeltaTooSmall(
        "circumscribed_extension: delta below the regular diameter");
  }
  // apex on the +x axis; the opposite vertex sits at distance big_r
  const double apex = std::max(delta - big_r, big_r);
  const double psi = std::acos(r / apex);  // tangency half-angle from apex

  std::vector<double> phis = {psi, -psi};
  for (int k = 0; k < n; ++k) {
    double phi = (2.0 * k + 1.0) * kPi / n;
    if (phi > kPi) phi -= 2.0 * kPi;
    if (std::abs(phi) >= psi - 1e-9) phis.push_back(phi);
  }
  return circumscribed_from_tangency_angles(std::move(phis), r);
}

ConvexPolygon merge_sides_family(int n, double s) {
  if (n < 5) throw DegenerateInput("merge_sides_family: need odd n >= 5");
  if (n % 2 == 0) throw EvenN("merge_sides_family: n must be odd");
  if (s < 0.0 || s > 1.0 || !std::isfinite(s)) {
    throw DegenerateInput("merge_sides_family: s must lie in [0, 1]");
  }
  const double r = std::sqrt(1.0 / (n * std::tan(kPi / n)));
  std::vector<double> phis(n);
  for (int k = 0; k < n; ++k) phis[k] = (2.0 * k + 1.0) * kPi / n;
  // rotate the first two tangency directions toward their common bisector
  phis[0] = (1.0 + s) * kPi / n;
  phis[1] = (3.0 - s) * kPi / n;
  return circumscribed_from_tangency_angles(std::move(phis), r);
}

// Inscribed polygonal models of the two smooth extremal shapes, unit area up
// to O(1/resolution^2), diameters on the x axis.
ConvexPolygon stadium_polygon(double p, int resolution) {
  const double t = stadium_parameter_for_perimeter(p);
  const double inv = 1.0 / std::sqrt(kPi + 2.0 * t);
  const int arc = std::max(resolution / 2, 4);
  std::vector<Point2> verts;
  for (int k = 0; k <= arc; ++k) {
    const double th = -kPi / 2 + kPi * k / arc;
    verts.push_back({(0.5 * t + std::cos(th)) * inv, std::sin(th) * inv});
  }
  for (int k = 0; k <= arc; ++k) {
    const double th = kPi / 2 + kPi * k / arc;
    verts.push_back({(-0.5 * t + std::cos(th)) * inv, std::sin(th) * inv});
  }
  return make_polygon(verts);
}

ConvexPolygon cup_polygon(double p, int resolution) {
  const double d = cup_parameter_for_perimeter(p);
  const double inv = 1.0 / std::sqrt(cup_raw_area(d));
  const double psi = std::acos(2.0 / d);  // tangency angle at the right apex
  const int arc = std::max(resolution / 2, 4);
  std::vector<Point2> verts = {{0.5 * d * inv, 0.0}, {-0.5 * d * inv, 0.0}};
  for (int k = 0; k <= arc; ++k) {
    const double th = psi + (kPi - 2.0 * psi) * k / arc;
    verts.push_back({std::cos(th) * inv, std::sin(th) * inv});
    verts.push_back({std::cos(th) * inv, -std::sin(th) * inv});
  }
  return make_polygon(verts);
}

DiagramPoint minkowski_path(double p, double t, int resolution) {
  if (resolution < 16) {
    throw ResolutionTooLow("minkowski_path: need at least 16 boundary points");
  }
  if (t < 0.0 || t > 1.0 || !std::isfinite(t)) {
    throw DegenerateInput("minkowski_path: t must lie in [0, 1]");
  }
  char tag[64];
  std::snprintf(tag, sizeof tag, "path:p=%.6g,t=%.6g", p, t);
  if (t >= 1.0) return diagram_point(stadium_polygon(p, resolution), tag);
  if (t <= 0.0) return diagram_point(cup_polygon(p, resolution), tag);
  const ConvexPolygon mix =
      minkowski_sum(scale(stadium_polygon(p, resolution), t),
                    scale(cup_polygon(p, resolution), 1.0 - t));
  return diagram_point(mix, tag);
}

ConvexPolygon parallel_displacement(const ConvexPolygon& p, std::size_t side,
                                    double eps) {
  const std::size_t n = p.size();
  if (side >= n) throw DegenerateInput("parallel_displacement: no such side");
  const AngleData ad = angle_data(p);

  double r0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = 1.0 / std::tan(0.5 * ad.interior_angles[i]) +
                        1.0 / std::tan(0.5 * ad.interior_angles[(i + 1) % n]);
    r0 = std::min(r0, ad.side_lengths[i] / rate);
  }
  if (!(std::abs(eps) < r0)) {
    throw EpsTooLarge("parallel_displacement: |eps| must stay below " +
                      std::to_string(r0));
  }

  const std::size_t prev = (side + n - 1) % n;
  const std::size_t next = (side + 1) % n;
  // shifted side line: x . n = c + eps, intersected with the neighbours
  const auto line_point = [&](std::size_t i) { return p[i]; };
  const auto line_dir = [&](std::size_t i) {
    return p[(i + 1) % n] - p[i];
  };
  const Point2 nrm = ad.outward_normals[side];
  const double c = dot(nrm, p[side]) + eps;

  const auto hit = [&](std::size_t neighbour) {
    const Point2 q = line_point(neighbour);
    const Point2 u = line_dir(neighbour);
    const double s = (c - dot(nrm, q)) / dot(nrm, u);
    return q + s * u;
  };

  std::vector<Point2> verts(p.vertices());
  verts[side] = hit(prev);
  verts[next] = hit(next);
  return make_polygon(verts);
}

double psi_coefficient(const ConvexPolygon& p, std::size_t side) {
  const std::size_t n = p.size();
  if (side >= n) throw DegenerateInput("psi_coefficient: no such side");
  const AngleData ad = angle_data(p);
  const double a = ad.interior_angles[side];
  const double b = ad.interior_angles[(side + 1) % n];
  const double geom = 2.0 * (1.0 / std::tan(a) + 1.0 / std::tan(b) +
                             1.0 / std::sin(a) + 1.0 / std::sin(b));
  return geom - perimeter(p) / area(p) * ad.side_lengths[side];
}

double c_n_upper_bound(int n) {
  if (n < 5 || n % 2 == 0) {
    throw EvenN("c_n_upper_bound: defined for odd n >= 5");
  }
  return 2.0 * n * std::sqrt(std::tan((n - 2) * kPi / (2.0 * n)));
}

}  // namespace cheegerlab
