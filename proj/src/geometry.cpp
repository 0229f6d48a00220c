#include "cheegerlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cheegerlab {

namespace {

double shoelace(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t k = 0, n = v.size(); k < n; ++k) {
    const Point2& a = v[k];
    const Point2& b = v[(k + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double bbox_scale(const std::vector<Point2>& pts) {
  double lox = pts[0].x, hix = pts[0].x, loy = pts[0].y, hiy = pts[0].y;
  for (const Point2& p : pts) {
    lox = std::min(lox, p.x);
    hix = std::max(hix, p.x);
    loy = std::min(loy, p.y);
    hiy = std::max(hiy, p.y);
  }
  return std::max(hix - lox, hiy - loy);
}

std::size_t lowest_vertex(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k].y < v[best].y || (v[k].y == v[best].y && v[k].x < v[best].x)) {
      best = k;
    }
  }
  return best;
}

// Normal angle of edge k in [0, 2pi).
double edge_normal_angle(const Point2& a, const Point2& b) {
  const double ang = std::atan2(-(b.x - a.x), b.y - a.y);
  return ang < 0 ? ang + 2.0 * std::numbers::pi : ang;
}

}  // namespace

double norm(Point2 a) { return std::hypot(a.x, a.y); }

double distance(Point2 a, Point2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

ConvexPolygon make_polygon(const std::vector<Point2>& points) {
  if (points.size() < 3) {
    throw DegenerateInput("make_polygon: need at least 3 points");
  }
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DegenerateInput("make_polygon: non-finite coordinate");
    }
  }
  const double scale = bbox_scale(points);
  if (scale <= 0.0) {
    throw DegenerateInput("make_polygon: all points coincide");
  }
  const double point_tol = 1e-12 * scale;
  const double cross_tol = 1e-12 * scale * scale;

  std::vector<Point2> pts = points;
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](Point2 a, Point2 b) {
                          return distance(a, b) <= point_tol;
                        }),
            pts.end());
  if (pts.size() < 3) {
    throw DegenerateInput("make_polygon: fewer than 3 distinct points");
  }

  // Andrew monotone chain; only strict left turns survive, so collinear
  // runs are merged during construction.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t m = 0;
  for (std::size_t pass = 0; pass < 2; ++pass) {
    const std::size_t start = m;
    const auto step = [&](const Point2& p) {
      while (m >= start + 2 &&
             cross(hull[m - 1] - hull[m - 2], p - hull[m - 1]) <= cross_tol) {
        --m;
      }
      hull[m++] = p;
    };
    if (pass == 0) {
      for (const Point2& p : pts) step(p);
    } else {
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) step(*it);
    }
    --m;  // chain endpoint repeats as the next chain's start
  }
  hull.resize(m);
  if (hull.size() < 3 || shoelace(hull) <= 0.0) {
    throw DegenerateInput("make_polygon: degenerate hull");
  }
  return ConvexPolygon(std::move(hull));
}

double area(const ConvexPolygon& p) { return shoelace(p.vertices()); }

double perimeter(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  double s = 0.0;
  for (std::size_t k = 0, n = v.size(); k < n; ++k) {
    s += distance(v[k], v[(k + 1) % n]);
  }
  return s;
}

AngleData angle_data(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  AngleData d;
  d.interior_angles.resize(n);
  d.side_lengths.resize(n);
  d.outward_normals.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 e = v[(k + 1) % n] - v[k];
    const double len = norm(e);
    d.side_lengths[k] = len;
    d.outward_normals[k] = {e.y / len, -e.x / len};
    const Point2 a = v[(k + n - 1) % n] - v[k];
    const Point2 b = v[(k + 1) % n] - v[k];
    d.interior_angles[k] = std::atan2(std::abs(cross(a, b)), dot(a, b));
  }
  return d;
}

double t_functional(const ConvexPolygon& p) {
  double t = 0.0;
  for (double alpha : angle_data(p).interior_angles) {
    t += 1.0 / std::tan(0.5 * alpha);
  }
  return t;
}

double support_function(const ConvexPolygon& p, double theta) {
  const Point2 u{std::cos(theta), std::sin(theta)};
  double best = dot(p[0], u);
  for (std::size_t k = 1; k < p.size(); ++k) {
    best = std::max(best, dot(p[k], u));
  }
  return best;
}

ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  const std::size_t n = a.size(), m = b.size();
  const std::size_t ia0 = lowest_vertex(a), ib0 = lowest_vertex(b);
  std::vector<Point2> out;
  out.reserve(n + m);
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    const Point2 va = a[(ia0 + i) % n];
    const Point2 vb = b[(ib0 + j) % m];
    out.push_back(va + vb);
    if (i >= n) {
      ++j;
      continue;
    }
    if (j >= m) {
      ++i;
      continue;
    }
    const Point2 ea = a[(ia0 + i + 1) % n] - va;
    const Point2 eb = b[(ib0 + j + 1) % m] - vb;
    const double c = cross(ea, eb);
    if (c > 0) {
      ++i;
    } else if (c < 0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return make_polygon(out);
}

ConvexPolygon minkowski_sum(const ConvexPolygon& a, Point2 b) {
  return translate(a, b);
}

ConvexPolygon scale(const ConvexPolygon& p, double t) {
  if (!(t > 0.0)) {
    throw NonPositiveScale("scale: factor must be positive");
  }
  std::vector<Point2> v = p.vertices();
  for (Point2& q : v) q = t * q;
  return ConvexPolygon::unchecked(std::move(v));
}

ConvexPolygon translate(const ConvexPolygon& p, Point2 shift) {
  std::vector<Point2> v = p.vertices();
  for (Point2& q : v) q = q + shift;
  return ConvexPolygon::unchecked(std::move(v));
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> breaks;
  breaks.reserve(a.size() + b.size());
  for (const ConvexPolygon* p : {&a, &b}) {
    const auto& v = p->vertices();
    for (std::size_t k = 0, n = v.size(); k < n; ++k) {
      breaks.push_back(edge_normal_angle(v[k], v[(k + 1) % n]));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto argmax = [](const ConvexPolygon& p, double theta) {
    const Point2 u{std::cos(theta), std::sin(theta)};
    std::size_t best = 0;
    double bv = dot(p[0], u);
    for (std::size_t k = 1; k < p.size(); ++k) {
      const double val = dot(p[k], u);
      if (val > bv) {
        bv = val;
        best = k;
      }
    }
    return best;
  };

  double best = 0.0;
  const std::size_t m = breaks.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double th1 = breaks[k];
    const double th2 = (k + 1 < m) ? breaks[k + 1] : breaks[0] + two_pi;
    const Point2 d =
        a[argmax(a, 0.5 * (th1 + th2))] - b[argmax(b, 0.5 * (th1 + th2))];
    const auto eval = [&](double th) {
      best = std::max(best, std::abs(d.x * std::cos(th) + d.y * std::sin(th)));
    };
    eval(th1);
    eval(th2);
    // interior extrema of d.x cos + d.y sin sit at phi mod pi
    double phi = std::atan2(d.y, d.x);
    phi -= std::numbers::pi * std::floor((phi - th1) / std::numbers::pi);
    for (; phi < th2; phi += std::numbers::pi) {
      eval(phi);
    }
  }
  return best;
}

double diameter(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ni = (i + 1) % n;
    const Point2 e = v[ni] - v[i];
    std::size_t guard = 0;
    while (guard++ < n && cross(e, v[(j + 1) % n] - v[j]) > 0) {
      j = (j + 1) % n;
    }
    best = std::max({best, distance(v[i], v[j]), distance(v[ni], v[j])});
  }
  return best;
}

}  // namespace cheegerlab
