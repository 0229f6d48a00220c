#pragma once

#include <cstddef>

#include "cheegerlab/diagram.hpp"
#include "cheegerlab/geometry.hpp"

namespace cheegerlab {

// Parametrized extremal shapes. Smooth families (stadiums, cup bodies) carry
// closed-form diagram coordinates; polygon families return actual polygons.

struct SmoothShapeDescriptor {
  enum class Kind { Stadium, CupBody };
  Kind kind;
  double parameter;  // half-distance t for stadiums, diameter d for cup bodies
  bool normalized;   // coordinates below always refer to the unit-area copy
};

struct SmoothFamilyPoint {
  SmoothShapeDescriptor descriptor;
  double x;  // P / sqrt(A)
  double y;  // sqrt(A) * h
};

// Convex hull of two unit disks at distance t. These sets are Cheeger sets of
// themselves, so x = y = 2(pi + t) / sqrt(pi + 2t); t = 0 is the disk.
SmoothFamilyPoint stadium(double t);

// Convex hull of a unit disk and two opposite points at distance d >= 2.
// Homothetic to its form body, hence y = x/2 + sqrt(pi) exactly.
SmoothFamilyPoint cup_body(double d);

// Inversions of the (strictly increasing) perimeter coordinate, bisected to
// 1e-12. Throw InfeasibleTarget below the disk value 2*sqrt(pi).
double stadium_parameter_for_perimeter(double p);
double cup_parameter_for_perimeter(double p);

// Unit-area regular n-gon centered at the origin, first vertex on the +x axis.
ConvexPolygon regular_polygon(int n);

// Even-n elongation of the regular n-gon: orient two sides horizontally and
// pull the two halves apart, which keeps all interior angles equal and the
// shape Cheeger-regular, so its diagram point stays on y = f_n(x). delta is
// the diameter of the elongated unit-area n-gon before renormalization; for
// n = 4 this family is exactly the 1 x d rectangles.
ConvexPolygon stretched_regular(int n, double delta);

// Even-n circumscribed polygons: keep the incircle of the unit-area regular
// n-gon and pull one vertex out along a main diagonal until the diameter is
// delta, replacing the adjacent sides by the tangents from the new apex.
// Every side stays tangent to the incircle. Not renormalized.
ConvexPolygon circumscribed_extension(int n, double delta);

// Odd-n circumscribed interpolation from the regular n-gon (s = 0) to an
// (n-1)-gon (s = 1): the tangency directions of two adjacent sides rotate
// linearly toward their common bisector. Not renormalized.
ConvexPolygon merge_sides_family(int n, double s);

// Inscribed equal-angle discretizations of the unit-area stadium and cup
// body with perimeter coordinate p, diameters on the x axis. Solver h on
// these converges to the closed-form value at rate O(1/resolution^2).
ConvexPolygon stadium_polygon(double p, int resolution);
ConvexPolygon cup_polygon(double p, int resolution);

// Normalized Minkowski combination of the unit-area stadium and cup body of
// perimeter p, both discretized with `resolution` boundary points and with
// their diameters on the x axis. t = 1 is the pure stadium endpoint.
DiagramPoint minkowski_path(double p, double t, int resolution);

// Translate side i outward by the algebraic distance eps, extending or
// trimming the adjacent sides. Angles are unchanged, so the T-functional is
// invariant, and the perimeter/area changes follow exact polynomial rules.
ConvexPolygon parallel_displacement(const ConvexPolygon& p, std::size_t side,
                                    double eps);

// First-order coefficient of P^2/A under parallel displacement of side i,
// up to the positive factor P/A:
//   Psi_i = 2(cot a + cot b + 1/sin a + 1/sin b) - (P/A) l_i
// with a, b the angles at the two ends of side i. The sum over all sides is
// 4T - P^2/A, which vanishes exactly for circumscribed polygons.
double psi_coefficient(const ConvexPolygon& p, std::size_t side);

// Perimeter ceiling 2n sqrt(tan((n-2)pi/(2n))) for unit-area equiangular
// n-gons, odd n.
double c_n_upper_bound(int n);

}  // namespace cheegerlab
