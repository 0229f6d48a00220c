#include "cheegerlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "cheegerlab/errors.hpp"
#include "cheegerlab/families.hpp"
#include "cheegerlab/random_polygon.hpp"

namespace cheegerlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t coord_count_to_n(const std::vector<double>& coords) {
  if (coords.size() < 6 || coords.size() % 2 != 0) {
    throw DegenerateInput("coordinate vector must hold n >= 3 vertex pairs");
  }
  return coords.size() / 2;
}

std::vector<Point2> decode(const std::vector<double>& coords) {
  const std::size_t n = coord_count_to_n(coords);
  std::vector<Point2> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = {coords[k], coords[n + k]};
  return v;
}

std::vector<double> encode(const std::vector<Point2>& verts) {
  const std::size_t n = verts.size();
  std::vector<double> coords(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    coords[k] = verts[k].x;
    coords[n + k] = verts[k].y;
  }
  return coords;
}

double polygon_area(const std::vector<double>& c, std::size_t n) {
  double a = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    a += c[k] * c[n + j] - c[j] * c[n + k];
  }
  return 0.5 * a;
}

double polygon_perimeter(const std::vector<double>& c, std::size_t n) {
  double p = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    p += std::hypot(c[j] - c[k], c[n + j] - c[n + k]);
  }
  return p;
}

}  // namespace

std::vector<double> convexity_constraints(const std::vector<double>& coords) {
  const std::size_t n = coord_count_to_n(coords);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t km = (k + n - 1) % n;
    const std::size_t kp = (k + 1) % n;
    out[k] = (coords[km] - coords[k]) * (coords[n + kp] - coords[n + k]) -
             (coords[n + km] - coords[n + k]) * (coords[kp] - coords[k]);
  }
  return out;
}

std::vector<double> area_gradient(const std::vector<double>& coords) {
  const std::size_t n = coord_count_to_n(coords);
  std::vector<double> g(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t km = (k + n - 1) % n;
    const std::size_t kp = (k + 1) % n;
    g[k] = 0.5 * (coords[n + kp] - coords[n + km]);
    g[n + k] = 0.5 * (coords[km] - coords[kp]);
  }
  return g;
}

std::vector<double> perimeter_gradient(const std::vector<double>& coords) {
  const std::size_t n = coord_count_to_n(coords);
  std::vector<double> g(2 * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    const double ux = coords[j] - coords[k];
    const double uy = coords[n + j] - coords[n + k];
    const double len = std::hypot(ux, uy);
    g[k] -= ux / len;
    g[n + k] -= uy / len;
    g[j] += ux / len;
    g[n + j] += uy / len;
  }
  return g;
}

std::vector<std::vector<double>> convexity_gradients(
    const std::vector<double>& coords) {
  const std::size_t n = coord_count_to_n(coords);
  std::vector<std::vector<double>> rows(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t km = (k + n - 1) % n;
    const std::size_t kp = (k + 1) % n;
    const double dxm = coords[km] - coords[k];
    const double dym = coords[n + km] - coords[n + k];
    const double dxp = coords[kp] - coords[k];
    const double dyp = coords[n + kp] - coords[n + k];
    auto& r = rows[k];
    r[km] = dyp;
    r[k] = dym - dyp;
    r[kp] = -dym;
    r[n + km] = -dxp;
    r[n + k] = dxp - dxm;
    r[n + kp] = dxm;
  }
  return rows;
}

std::vector<double> cheeger_gradient(const ConvexPolygon& p) {
  const std::size_t n = p.size();
  const CheegerResult res = cheeger(p);
  if (res.contact_side_indices.empty()) {
    throw NoContact("cheeger_gradient: empty contact set");
  }
  const AngleData ad = angle_data(p);
  const double scale_tol = 1e-8 * diameter(p);

  std::vector<double> g(2 * n, 0.0);
  const auto& core = res.core.vertices();
  const std::size_t m = core.size();

  for (int side : res.contact_side_indices) {
    const std::size_t i = std::size_t(side);
    const Point2 nrm = ad.outward_normals[i];
    const double len = ad.side_lengths[i];
    const Point2 base = p[i];
    const Point2 u = (1.0 / len) * (p[(i + 1) % n] - base);
    const double offset_c = dot(nrm, base) - res.t_star;

    // locate the core edge carried by this side's inset line
    double s1 = 0.0, s2 = 0.0;
    bool found = false;
    for (std::size_t j = 0; j < m; ++j) {
      const Point2 a = core[j];
      const Point2 b = core[(j + 1) % m];
      if (std::abs(dot(nrm, a) - offset_c) > scale_tol) continue;
      if (std::abs(dot(nrm, b) - offset_c) > scale_tol) continue;
      if (dot(u, b - a) <= 0.0) continue;
      s1 = std::clamp(dot(u, a - base) / len, 0.0, 1.0);
      s2 = std::clamp(dot(u, b - base) / len, 0.0, 1.0);
      found = true;
      break;
    }
    if (!found) throw NoContact("cheeger_gradient: contact side lost");

    // hat-field integrals over [s1, s2]: the tail vertex carries 1-s, the
    // head vertex carries s
    const double int_s = 0.5 * (s2 * s2 - s1 * s1);
    const double int_one_minus_s = (s2 - s1) - int_s;
    const double w = -res.h / res.cheeger_area * len;

    const std::size_t head = (i + 1) % n;
    g[i] += w * nrm.x * int_one_minus_s;
    g[n + i] += w * nrm.y * int_one_minus_s;
    g[head] += w * nrm.x * int_s;
    g[n + head] += w * nrm.y * int_s;
  }
  return g;
}

GradientBundle gradient_bundle(const ConvexPolygon& p) {
  const std::vector<double> coords = encode(p.vertices());
  return {cheeger_gradient(p), perimeter_gradient(coords),
          area_gradient(coords), convexity_gradients(coords)};
}

namespace {

struct Objective {
  double h = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  bool feasible = false;
  bool cheeger_regular = false;
};

// C_k < 0 with a scale-aware floor keeps the sweep's line intersections sane.
// Local convexity alone admits pentagram-like vertex chains that wind around
// more than once, so also require the total turning to be one revolution;
// together the two conditions characterize simple strictly convex polygons.
bool strictly_convex(const std::vector<double>& c, double floor_value) {
  for (double v : convexity_constraints(c)) {
    if (v > -floor_value) return false;
  }
  const std::size_t n = c.size() / 2;
  double turning = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t km = (k + n - 1) % n;
    const std::size_t kp = (k + 1) % n;
    const double ax = c[k] - c[km], ay = c[n + k] - c[n + km];
    const double bx = c[kp] - c[k], by = c[n + kp] - c[n + k];
    turning += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return std::abs(turning - 2.0 * kPi) < kPi;
}

Objective evaluate(const std::vector<double>& coords, double barrier,
                   double convexity_floor) {
  Objective obj;
  if (!strictly_convex(coords, convexity_floor)) return obj;
  const std::size_t n = coord_count_to_n(coords);
  if (polygon_area(coords, n) <= 0.0) return obj;
  const ConvexPolygon p = ConvexPolygon::unchecked(decode(coords));
  const CheegerResult res = cheeger(p);
  if (!std::isfinite(res.h)) return obj;  // numerically degenerate sliver
  obj.h = res.h;
  obj.cheeger_regular = res.is_cheeger_regular;
  obj.feasible = true;
  double penalty = 0.0;
  if (barrier > 0.0) {
    for (double v : convexity_constraints(coords)) {
      penalty -= barrier * std::log(-v);
    }
  }
  obj.value = res.h + penalty;
  return obj;
}

// Newton steps for the two equality constraints (area, perimeter) using
// their analytic gradients; quadratic convergence, three or four steps.
bool retract(std::vector<double>& coords, double p0, double tol) {
  const std::size_t n = coord_count_to_n(coords);
  for (int it = 0; it < 30; ++it) {
    const double ra = polygon_area(coords, n) - 1.0;
    const double rp = polygon_perimeter(coords, n) - p0;
    if (std::abs(ra) <= tol && std::abs(rp) <= tol) return true;
    const std::vector<double> da = area_gradient(coords);
    const std::vector<double> dp = perimeter_gradient(coords);
    double aa = 0.0, ap = 0.0, pp = 0.0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      aa += da[k] * da[k];
      ap += da[k] * dp[k];
      pp += dp[k] * dp[k];
    }
    const double det = aa * pp - ap * ap;
    if (std::abs(det) < 1e-30) return false;
    const double la = (ra * pp - rp * ap) / det;
    const double lp = (rp * aa - ra * ap) / det;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      coords[k] -= la * da[k] + lp * dp[k];
    }
  }
  return false;
}

// Remove the components of g along the two constraint gradients.
std::vector<double> project_direction(const std::vector<double>& g,
                                      const std::vector<double>& da,
                                      const std::vector<double>& dp) {
  const std::size_t m = g.size();
  double aa = 0.0, ap = 0.0, pp = 0.0, ga = 0.0, gp = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    aa += da[k] * da[k];
    ap += da[k] * dp[k];
    pp += dp[k] * dp[k];
    ga += g[k] * da[k];
    gp += g[k] * dp[k];
  }
  const double det = aa * pp - ap * ap;
  std::vector<double> d(m);
  if (std::abs(det) < 1e-30) {
    for (std::size_t k = 0; k < m; ++k) d[k] = g[k];
    return d;
  }
  const double ca = (ga * pp - gp * ap) / det;
  const double cp = (gp * aa - ga * ap) / det;
  for (std::size_t k = 0; k < m; ++k) {
    d[k] = g[k] - ca * da[k] - cp * dp[k];
  }
  return d;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct SolveOutcome {
  std::vector<double> coords;
  double h = -std::numeric_limits<double>::infinity();
  double projected_gradient = std::numeric_limits<double>::infinity();
  bool converged = false;
};

SolveOutcome solve_from(std::vector<double> coords, double p0,
                        const OptimizerOptions& opts) {
  constexpr double kConvexityFloor = 1e-13;
  SolveOutcome out;
  if (!retract(coords, p0, 1e-12) ||
      !strictly_convex(coords, kConvexityFloor)) {
    return out;
  }

  double barrier = opts.barrier0;
  double step = 0.1;
  bool abandoned = false;
  for (int outer = 0; outer < opts.max_outer && !abandoned; ++outer) {
    for (int inner = 0; inner < opts.max_inner; ++inner) {
      const ConvexPolygon p = ConvexPolygon::unchecked(decode(coords));
      std::vector<double> g;
      try {
        g = cheeger_gradient(p);
      } catch (const NoContact&) {
        // Retraction can hand us a sliver whose contact structure is
        // numerically unresolvable; give up on this start.
        abandoned = true;
        break;
      }
      if (barrier > 0.0) {
        const std::vector<double> c = convexity_constraints(coords);
        const std::vector<std::vector<double>> dc =
            convexity_gradients(coords);
        for (std::size_t k = 0; k < c.size(); ++k) {
          const double w = -barrier / c[k];  // positive, pushes C_k down
          for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] -= w * dc[k][j];
          }
        }
      }
      const std::vector<double> da = area_gradient(coords);
      const std::vector<double> dp = perimeter_gradient(coords);
      const std::vector<double> dir = project_direction(g, da, dp);
      const double dir_norm = norm2(dir);
      out.projected_gradient = dir_norm;
      if (dir_norm <= opts.grad_tol) break;

      const Objective cur = evaluate(coords, barrier, kConvexityFloor);
      bool accepted = false;
      double alpha = step / dir_norm;
      for (int back = 0; back < 42; ++back) {
        std::vector<double> trial = coords;
        for (std::size_t k = 0; k < trial.size(); ++k) {
          trial[k] += alpha * dir[k];
        }
        if (retract(trial, p0, 1e-12)) {
          const Objective cand = evaluate(trial, barrier, kConvexityFloor);
          if (cand.feasible && cand.value > cur.value + 1e-14) {
            coords = std::move(trial);
            step = std::min(alpha * dir_norm * 2.0, 1.0);
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) break;  // stationary or at a contact-structure kink
    }
    barrier *= 0.1;
  }

  const Objective fin = evaluate(coords, 0.0, kConvexityFloor);
  out.coords = std::move(coords);
  out.h = fin.h;
  out.converged = out.projected_gradient <= opts.grad_tol;
  return out;
}

// Horizontal scaling of the unit-area regular n-gon, renormalized, bisected
// so the perimeter hits p0. Works for every n; for even n the family is also
// generated angle-preservingly below.
std::vector<Point2> scaled_regular_start(int n, double p0) {
  const ConvexPolygon base = regular_polygon(n);
  const auto stretched_perimeter = [&](double lam) {
    std::vector<Point2> v = base.vertices();
    for (Point2& q : v) q.x *= lam;
    const ConvexPolygon s = ConvexPolygon::unchecked(v);
    return perimeter(s) / std::sqrt(area(s));
  };
  double lo = 1.0, hi = 2.0;
  while (stretched_perimeter(hi) < p0 && hi < 1e9) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (stretched_perimeter(mid) < p0 ? lo : hi) = mid;
  }
  std::vector<Point2> v = base.vertices();
  const double lam = 0.5 * (lo + hi);
  for (Point2& q : v) q.x *= lam;
  const double inv = 1.0 / std::sqrt(area(ConvexPolygon::unchecked(v)));
  for (Point2& q : v) q = inv * q;
  return v;
}

}  // namespace

OptimizeResult maximize_h(int n, double p0, const OptimizerOptions& opts) {
  if (n < 3) throw DegenerateInput("maximize_h: need n >= 3");
  const double p_min = regular_ngon_perimeter(n);
  if (p0 < p_min - 1e-9) {
    throw InfeasibleTarget("maximize_h: perimeter below the regular minimum");
  }
  const double target = std::max(p0, p_min);

  std::vector<std::vector<double>> starts;
  starts.push_back(encode(scaled_regular_start(n, target)));
  if (n % 2 == 0) {
    // the equiangular elongation: bisect its diameter so perimeter = p0
    const ConvexPolygon b0 = stretched_regular(n, diameter(regular_polygon(n)));
    double lo = diameter(b0), hi = lo + 1.0;
    const auto fam_perimeter = [&](double d) {
      return perimeter(stretched_regular(n, d));
    };
    while (fam_perimeter(hi) < target && hi < 1e9) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fam_perimeter(mid) < target ? lo : hi) = mid;
    }
    starts.push_back(
        encode(stretched_regular(n, 0.5 * (lo + hi)).vertices()));
  }
  for (int k = int(starts.size()); k < std::max(opts.starts, 1); ++k) {
    SplitMix64 rng = derived_stream(opts.seed, std::uint64_t(k));
    for (int attempt = 0; attempt < 64; ++attempt) {
      ConvexPolygon p = valtr_polygon(n, rng);
      if (int(p.size()) != n) continue;
      p = scale(p, 1.0 / std::sqrt(area(p)));
      std::vector<double> coords = encode(p.vertices());
      if (!retract(coords, target, 1e-12)) continue;
      if (!strictly_convex(coords, 1e-13)) continue;
      starts.push_back(std::move(coords));
      break;
    }
  }

  SolveOutcome best;
  for (auto& s : starts) {
    SolveOutcome got = solve_from(std::move(s), target, opts);
    if (got.h > best.h ||
        (got.h == best.h && got.projected_gradient < best.projected_gradient)) {
      best = std::move(got);
    }
  }
  if (!std::isfinite(best.h) || best.coords.empty()) {
    throw InfeasibleTarget("maximize_h: no feasible start survived");
  }

  const std::size_t nn = coord_count_to_n(best.coords);
  const std::vector<double> cons = convexity_constraints(best.coords);
  OptimizeResult res{
      .polygon = make_polygon(decode(best.coords)),
      .h = best.h,
      .converged = false,
      .area_residual = std::abs(polygon_area(best.coords, nn) - 1.0),
      .perimeter_residual =
          std::abs(polygon_perimeter(best.coords, nn) - target),
      .max_convexity = *std::max_element(cons.begin(), cons.end()),
      .cheeger_regular = false,
      .effective_sides = 0,
      .projected_gradient = best.projected_gradient};
  res.cheeger_regular =
      cheeger(ConvexPolygon::unchecked(decode(best.coords))).is_cheeger_regular;
  res.effective_sides = int(res.polygon.size());
  res.converged = best.converged &&
                  res.area_residual <= opts.feas_tol &&
                  res.perimeter_residual <= opts.feas_tol &&
                  res.max_convexity <= 1e-10;
  return res;
}

std::vector<DiagramPoint> trace_upper_boundary(int n,
                                               const std::vector<double>& grid,
                                               const OptimizerOptions& opts) {
  std::vector<DiagramPoint> points;
  points.reserve(grid.size());
  std::vector<double> warm;
  for (double p0 : grid) {
    OptimizeResult res = maximize_h(n, p0, opts);
    double best_h = res.h;
    ConvexPolygon best_poly = res.polygon;

    // the previous optimum, retracted to the new perimeter, usually wins
    if (!warm.empty()) {
      std::vector<double> seeded = warm;
      if (retract(seeded, p0, 1e-12) && strictly_convex(seeded, 1e-13)) {
        SolveOutcome warm_run = solve_from(std::move(seeded), p0, opts);
        if (warm_run.h > best_h) {
          best_h = warm_run.h;
          best_poly = make_polygon(decode(warm_run.coords));
        }
      }
    }
    warm = encode(best_poly.vertices());

    char tag[64];
    std::snprintf(tag, sizeof tag, "optimize:n=%d,p0=%.10g", n, p0);
    points.push_back(diagram_point(best_poly, tag));
  }
  return points;
}

}  // namespace cheegerlab
