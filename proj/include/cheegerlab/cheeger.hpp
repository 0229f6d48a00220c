#pragma once

#include <vector>

#include "cheegerlab/geometry.hpp"

namespace cheegerlab {

// State of the inner parallel set at the start of one inset interval.
// Within the interval, area and perimeter follow the Steiner formulas
//   A(t) = area - (t - t0) * perimeter + (t - t0)^2 * t_functional
//   P(t) = perimeter - 2 * (t - t0) * t_functional
// until the next side vanishes.
struct ProfileEvent {
  double t = 0.0;
  int sides = 0;
  double perimeter = 0.0;
  double area = 0.0;
  double t_functional = 0.0;
  ConvexPolygon polygon;
  std::vector<int> side_indices;  // surviving sides of the input polygon
};

struct InnerParallelProfile {
  std::vector<ProfileEvent> events;  // events.front().t == 0, strictly increasing
  double inradius = 0.0;
};

// Event-driven inset sweep. Side i of the current inset polygon shrinks at
// rate cot(alpha_start/2) + cot(alpha_end/2); the next event is the first
// side collapse, where the polygon is rebuilt from the surviving offset
// half-planes. Terminates when fewer than three sides survive; the inradius
// is the smallest root of the final interval's area quadratic.
InnerParallelProfile inner_parallel_profile(const ConvexPolygon& p);

struct CheegerResult {
  double h = 0.0;
  double t_star = 0.0;
  ConvexPolygon core;            // inner parallel set at t_star
  double rounding_radius = 0.0;  // equals t_star
  std::vector<int> contact_side_indices;
  bool is_cheeger_regular = false;
  double cheeger_area = 0.0;       // |core + t_star * disk|
  double cheeger_perimeter = 0.0;  // P(core) + 2 pi t_star
};

// h = 1/t* where t* is the unique inset with |inner parallel set| = pi t*^2.
// The Cheeger set is the core polygon outer-rounded by radius t*.
CheegerResult cheeger(const ConvexPolygon& p);

// (P + sqrt(P^2 - 4(T - pi) A)) / (2A). Equals cheeger(p).h exactly when
// every side touches the Cheeger set; strictly exceeds it otherwise.
double cheeger_regular_closed_form(const ConvexPolygon& p);

// (P + sqrt(4 pi A)) / (2A); valid for every convex set, tight for
// polygons circumscribed about their incircle.
double lower_bound_convex(double perimeter, double area);

// (P + sqrt(P^2 + 4(pi - N tan(pi/N)) A)) / (2A); tight for even N.
// Throws NegativeDiscriminant when P is below the regular-N-gon perimeter
// at the given area.
double upper_bound_ngon(double perimeter, double area, int sides);

// (sqrt(T) + sqrt(pi)) / sqrt(A); never exceeds h.
double brooks_waksman_bound(const ConvexPolygon& p);

// Perimeter of the unit-area regular N-gon, 2 sqrt(N tan(pi/N)).
double regular_ngon_perimeter(int sides);

}  // namespace cheegerlab
