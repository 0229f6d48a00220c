#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cheegerlab/geometry.hpp"

namespace cheegerlab {

// Scale-invariant (perimeter, Cheeger constant) diagram: a shape maps to
// x = P / sqrt(A) and y = sqrt(A) * h, both invariant under dilation.

struct DiagramPoint {
  double x = 0.0;
  double y = 0.0;
  std::string source;
  std::optional<bool> cheeger_regular;
};

enum class ShapeClass { SimplyConnected, Convex, NGon };

// Attainable band of a shape class. For convex sets the band is exactly
// [x/2 + sqrt(pi), x]; for n-gons the top is the curve f_n, which pinches
// onto the bottom at the regular n-gon abscissa (and everywhere for n = 3).
struct BandSpec {
  ShapeClass cls;
  int n;         // meaningful for NGon only
  double x_min;  // leftmost attainable abscissa

  double lower(double x) const;
  double upper(double x) const;
};

BandSpec band(ShapeClass cls, int n = 0);

enum class Membership { Inside, OnLower, OnUpper, Outside };

struct Classification {
  Membership kind = Membership::Inside;
  double violation = 0.0;  // positive magnitude when Outside
};

Classification classify(const DiagramPoint& pt, const BandSpec& spec,
                        double tol);

DiagramPoint diagram_point(const ConvexPolygon& p, std::string source = "");

// CSV: header "source,x,y,cheeger_regular", full double precision.
void write_points_csv(const std::vector<DiagramPoint>& points,
                      std::ostream& out);
void export_csv(const std::vector<DiagramPoint>& points,
                const std::string& path);
std::vector<DiagramPoint> read_points_csv(const std::string& path);

// Static SVG scatter with the band curves overlaid. unit_square_axes maps
// (x, y) to (2 sqrt(pi)/x, 2 sqrt(pi)/y) so both axes land in (0, 1].
void export_svg_scatter(const std::vector<DiagramPoint>& points,
                        const BandSpec& spec, const std::string& path,
                        bool unit_square_axes = false);

}  // namespace cheegerlab
