#pragma once

#include <cstddef>
#include <vector>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double t, Point2 a) { return {t * a.x, t * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);
double distance(Point2 a, Point2 b);

// Strictly convex polygon with counterclockwise vertices. Build through
// make_polygon, which hulls the input, fixes orientation and merges
// collinear runs, or through unchecked() for vertex lists that are convex
// and ordered by construction (inset rebuilds, family generators).
class ConvexPolygon {
 public:
  static ConvexPolygon unchecked(std::vector<Point2> ccw_vertices) {
    return ConvexPolygon(std::move(ccw_vertices));
  }
  const std::vector<Point2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Point2& operator[](std::size_t k) const { return v_[k]; }

 private:
  explicit ConvexPolygon(std::vector<Point2> v) : v_(std::move(v)) {}
  friend ConvexPolygon make_polygon(const std::vector<Point2>&);
  std::vector<Point2> v_;
};

// Convex hull of the input points, counterclockwise, interior and collinear
// points removed. Cross products below 1e-12 * (bbox scale)^2 count as
// collinear so downstream angle formulas stay away from angle pi.
// Throws DegenerateInput if fewer than 3 vertices survive.
ConvexPolygon make_polygon(const std::vector<Point2>& points);

struct AngleData {
  // Side k runs from vertex k to vertex k+1 (cyclic); its endpoint angles
  // are interior_angles[k] and interior_angles[k+1].
  std::vector<double> interior_angles;
  std::vector<double> side_lengths;
  std::vector<Point2> outward_normals;
};

double area(const ConvexPolygon& p);
double perimeter(const ConvexPolygon& p);
AngleData angle_data(const ConvexPolygon& p);

// T(p) = sum of cot(alpha_k / 2) over the interior angles.
double t_functional(const ConvexPolygon& p);

// Max over vertices of <vertex, (cos theta, sin theta)>.
double support_function(const ConvexPolygon& p, double theta);

ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b);
ConvexPolygon minkowski_sum(const ConvexPolygon& a, Point2 b);
ConvexPolygon scale(const ConvexPolygon& p, double t);
ConvexPolygon translate(const ConvexPolygon& p, Point2 shift);

// Exact sup over directions of the support-function gap. On each angular
// cell between consecutive edge-normal angles of the two polygons, each
// support function is one sinusoid, so the extremum is solved in closed form.
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

double diameter(const ConvexPolygon& p);

// Largest t with nonempty inner parallel set; defined in the inset event
// machinery so the Cheeger solver and this value share one source of truth.
double inradius(const ConvexPolygon& p);

}  // namespace cheegerlab
