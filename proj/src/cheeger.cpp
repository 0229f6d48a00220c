#include "cheegerlab/cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace cheegerlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Inward offset family of one side: the half-plane {x : <n, x> <= c - t}.
struct InsetLine {
  int orig = 0;
  Point2 n;
  double c = 0.0;
};

Point2 intersect(const InsetLine& a, const InsetLine& b, double t) {
  const double det = cross(a.n, b.n);
  const double ca = a.c - t, cb = b.c - t;
  return {(ca * b.n.y - cb * a.n.y) / det, (a.n.x * cb - b.n.x * ca) / det};
}

// cot(alpha/2) for the interior angle alpha between consecutive sides with
// outward normals na, nb: equals tan of half the normal turn angle. Going
// through atan2 keeps full precision at needle vertices, where the algebraic
// form cross / (1 + dot) loses six digits to cancellation.
double cot_half_angle(Point2 na, Point2 nb) {
  return std::tan(0.5 * std::atan2(cross(na, nb), dot(na, nb)));
}

double shoelace(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t k = 0, n = v.size(); k < n; ++k) {
    s += v[k].x * v[(k + 1) % n].y - v[(k + 1) % n].x * v[k].y;
  }
  return 0.5 * s;
}

std::vector<InsetLine> side_lines(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::vector<InsetLine> lines(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 e = v[(k + 1) % n] - v[k];
    const double len = norm(e);
    const Point2 nrm{e.y / len, -e.x / len};
    lines[k] = {static_cast<int>(k), nrm, dot(nrm, v[k])};
  }
  return lines;
}

std::vector<Point2> rebuild(const std::vector<InsetLine>& lines,
                            const std::vector<int>& active, double t) {
  const std::size_t m = active.size();
  std::vector<Point2> verts(m);
  for (std::size_t k = 0; k < m; ++k) {
    verts[k] = intersect(lines[active[(k + m - 1) % m]], lines[active[k]], t);
  }
  return verts;
}

}  // namespace

InnerParallelProfile inner_parallel_profile(const ConvexPolygon& p) {
  const std::vector<InsetLine> lines = side_lines(p);
  const double len_tol = 1e-12 * diameter(p);

  std::vector<int> active(p.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<Point2> verts = p.vertices();
  double t = 0.0;

  InnerParallelProfile prof;
  for (;;) {
    const std::size_t m = active.size();
    std::vector<double> cots(m), lens(m);
    for (std::size_t k = 0; k < m; ++k) {
      cots[k] = cot_half_angle(lines[active[(k + m - 1) % m]].n,
                               lines[active[k]].n);
      lens[k] = distance(verts[k], verts[(k + 1) % m]);
    }
    const double P = std::accumulate(lens.begin(), lens.end(), 0.0);
    const double A = shoelace(verts);
    const double T = std::accumulate(cots.begin(), cots.end(), 0.0);
    prof.events.push_back({t, static_cast<int>(m), P, A, T,
                           ConvexPolygon::unchecked(verts), active});

    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      // Roundoff at nearly straight vertices can push a rate to zero or
      // below; such sides are not shrinking and must not set the event time.
      const double rate = cots[k] + cots[(k + 1) % m];
      if (rate > 0.0) dt = std::min(dt, lens[k] / rate);
    }
    if (!std::isfinite(dt)) {
      // No side shrinks at all: the input is a numerically degenerate
      // sliver. Freeze the profile here rather than loop.
      prof.inradius = t;
      return prof;
    }

    std::vector<int> keep;
    keep.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (lens[k] - dt * (cots[k] + cots[(k + 1) % m]) > len_tol) {
        keep.push_back(active[k]);
      }
    }
    if (keep.size() < 3) {
      // The remainder collapses to a point or segment exactly when the
      // shortest side does, so dt itself is the residual inradius. This
      // avoids the cancellation-prone quadratic root of A - sP + s^2 T.
      prof.inradius = t + dt;
      return prof;
    }
    t += dt;
    active = std::move(keep);
    verts = rebuild(lines, active, t);

    // Roundoff near simultaneous collapses can leave a side at or below the
    // tolerance right after the rebuild; fold such drops into this event.
    for (bool dirty = true; dirty;) {
      dirty = false;
      const std::size_t mm = active.size();
      std::vector<int> still;
      still.reserve(mm);
      for (std::size_t k = 0; k < mm; ++k) {
        if (distance(verts[k], verts[(k + 1) % mm]) > len_tol) {
          still.push_back(active[k]);
        } else {
          dirty = true;
        }
      }
      if (still.size() < 3) {
        prof.inradius = t;
        return prof;
      }
      if (dirty) {
        active = std::move(still);
        verts = rebuild(lines, active, t);
      }
    }
  }
}

CheegerResult cheeger(const ConvexPolygon& p) {
  if (p.size() == 3) {
    // Every triangle is tangential, so the inner parallel sets are
    // homothetic shrinks and the matching condition |Omega_t| = pi t^2 has
    // the closed form t* = 2A / (P + 2 sqrt(pi A)). Solving the sweep
    // quadratic instead reaches the same point only up to a cancellation
    // that grows with the aspect ratio.
    const double A = area(p);
    const double P = perimeter(p);
    const double h = 0.5 * P / A + std::sqrt(kPi / A);
    const double t_star = 1.0 / h;
    const std::vector<InsetLine> lines = side_lines(p);
    std::vector<int> all{0, 1, 2};
    std::vector<Point2> core_verts = rebuild(lines, all, t_star);
    CheegerResult res{h,
                      t_star,
                      ConvexPolygon::unchecked(std::move(core_verts)),
                      t_star,
                      std::move(all),
                      true,
                      0.0,
                      0.0};
    const double core_area = area(res.core);
    const double core_perimeter = perimeter(res.core);
    res.cheeger_area =
        core_area + t_star * core_perimeter + kPi * t_star * t_star;
    res.cheeger_perimeter = core_perimeter + 2.0 * kPi * t_star;
    return res;
  }

  const InnerParallelProfile prof = inner_parallel_profile(p);
  const double r = prof.inradius;
  const double slack = 1e-12 * r + 1e-300;

  double t_star = -1.0;
  std::size_t hit = 0;
  for (std::size_t k = 0; k < prof.events.size(); ++k) {
    const ProfileEvent& ev = prof.events[k];
    const double t_next =
        (k + 1 < prof.events.size()) ? prof.events[k + 1].t : r;
    const double width = t_next - ev.t;
    const double a = ev.t_functional - kPi;
    const double b = -(ev.perimeter + 2.0 * kPi * ev.t);
    const double c = ev.area - kPi * ev.t * ev.t;

    double roots[2];
    int nroots = 0;
    if (std::abs(a) < 1e-14) {
      roots[nroots++] = -c / b;
    } else {
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double q = -0.5 * (b - std::sqrt(disc));  // b <= 0 here
        roots[nroots++] = q / a;
        roots[nroots++] = c / q;
      }
    }
    std::sort(roots, roots + nroots);
    for (int i = 0; i < nroots; ++i) {
      if (roots[i] >= -slack && roots[i] <= width + slack) {
        t_star = ev.t + std::clamp(roots[i], 0.0, width);
        hit = k;
        break;
      }
    }
    if (t_star >= 0.0) break;
  }
  if (t_star < 0.0) {
    // Roundoff pushed the root past every interval test; it can only sit at
    // the far end of the final interval.
    hit = prof.events.size() - 1;
    t_star = r;
  }

  const ProfileEvent& ev = prof.events[hit];
  const std::vector<InsetLine> lines = side_lines(p);
  std::vector<Point2> core_verts = rebuild(lines, ev.side_indices, t_star);

  const double len_tol = 1e-12 * diameter(p);
  std::vector<int> contact;
  const std::size_t m = core_verts.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (distance(core_verts[k], core_verts[(k + 1) % m]) > len_tol) {
      contact.push_back(ev.side_indices[k]);
    }
  }

  CheegerResult res{1.0 / t_star,
                    t_star,
                    ConvexPolygon::unchecked(std::move(core_verts)),
                    t_star,
                    std::move(contact),
                    false,
                    0.0,
                    0.0};
  res.is_cheeger_regular = res.contact_side_indices.size() == p.size();
  const double core_area = area(res.core);
  const double core_perimeter = perimeter(res.core);
  res.cheeger_area =
      core_area + t_star * core_perimeter + kPi * t_star * t_star;
  res.cheeger_perimeter = core_perimeter + 2.0 * kPi * t_star;
  return res;
}

double cheeger_regular_closed_form(const ConvexPolygon& p) {
  const double P = perimeter(p);
  const double A = area(p);
  const double T = t_functional(p);
  const double disc = std::max(0.0, P * P - 4.0 * (T - kPi) * A);
  return (P + std::sqrt(disc)) / (2.0 * A);
}

double lower_bound_convex(double perimeter, double area) {
  return (perimeter + std::sqrt(4.0 * kPi * area)) / (2.0 * area);
}

double upper_bound_ngon(double perimeter, double area, int sides) {
  if (sides < 3) {
    throw DegenerateInput("upper_bound_ngon: need at least 3 sides");
  }
  const double n = static_cast<double>(sides);
  const double pmin = regular_ngon_perimeter(sides) * std::sqrt(area);
  if (perimeter < pmin * (1.0 - 1e-12)) {
    throw NegativeDiscriminant(
        "upper_bound_ngon: perimeter below the regular-polygon minimum");
  }
  const double disc = std::max(
      0.0, perimeter * perimeter + 4.0 * (kPi - n * std::tan(kPi / n)) * area);
  return (perimeter + std::sqrt(disc)) / (2.0 * area);
}

double brooks_waksman_bound(const ConvexPolygon& p) {
  return (std::sqrt(t_functional(p)) + std::sqrt(kPi)) / std::sqrt(area(p));
}

double regular_ngon_perimeter(int sides) {
  if (sides < 3) {
    throw DegenerateInput("regular_ngon_perimeter: need at least 3 sides");
  }
  const double n = static_cast<double>(sides);
  return 2.0 * std::sqrt(n * std::tan(kPi / n));
}

double inradius(const ConvexPolygon& p) {
  return inner_parallel_profile(p).inradius;
}

}  // namespace cheegerlab
