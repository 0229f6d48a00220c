#include "cheegerlab/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/errors.hpp"

namespace cheegerlab {

namespace {

constexpr double kTwoSqrtPi = 2.0 * 1.7724538509055160273;

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double BandSpec::lower(double x) const {
  if (cls == ShapeClass::SimplyConnected) return kTwoSqrtPi;
  return 0.5 * x + std::sqrt(std::numbers::pi);
}

double BandSpec::upper(double x) const {
  switch (cls) {
    case ShapeClass::SimplyConnected:
    case ShapeClass::Convex:
      return x;
    case ShapeClass::NGon:
      if (n == 3) return lower(x);
      // clamp against fp dust just left of the pinch abscissa
      return upper_bound_ngon(std::max(x, x_min), 1.0, n);
  }
  return x;
}

BandSpec band(ShapeClass cls, int n) {
  switch (cls) {
    case ShapeClass::SimplyConnected:
    case ShapeClass::Convex:
      return {cls, 0, kTwoSqrtPi};
    case ShapeClass::NGon:
      if (n < 3) throw DegenerateInput("band: n-gon class needs n >= 3");
      return {cls, n, regular_ngon_perimeter(n)};
  }
  throw DegenerateInput("band: unknown shape class");
}

Classification classify(const DiagramPoint& pt, const BandSpec& spec,
                        double tol) {
  if (pt.x < spec.x_min - tol) {
    return {Membership::Outside, spec.x_min - pt.x};
  }
  const double lo = spec.lower(pt.x);
  const double up = spec.upper(pt.x);
  if (pt.y < lo - tol) return {Membership::Outside, lo - pt.y};
  if (pt.y > up + tol) return {Membership::Outside, pt.y - up};
  if (std::abs(pt.y - lo) <= tol) return {Membership::OnLower, 0.0};
  if (std::abs(pt.y - up) <= tol) return {Membership::OnUpper, 0.0};
  return {Membership::Inside, 0.0};
}

DiagramPoint diagram_point(const ConvexPolygon& p, std::string source) {
  const double a = area(p);
  const double sqrt_a = std::sqrt(a);
  const CheegerResult r = cheeger(p);
  DiagramPoint pt;
  pt.x = perimeter(p) / sqrt_a;
  pt.y = sqrt_a * r.h;
  pt.source = std::move(source);
  pt.cheeger_regular = r.is_cheeger_regular;
  return pt;
}

void write_points_csv(const std::vector<DiagramPoint>& points,
                      std::ostream& out) {
  out << "source,x,y,cheeger_regular\n";
  for (const DiagramPoint& pt : points) {
    out << pt.source << ',' << fmt_full(pt.x) << ',' << fmt_full(pt.y) << ',';
    if (pt.cheeger_regular) out << (*pt.cheeger_regular ? "true" : "false");
    out << '\n';
  }
}

void export_csv(const std::vector<DiagramPoint>& points,
                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_points_csv(points, out);
  if (!out) throw IoError("write failed: " + path);
}

std::vector<DiagramPoint> read_points_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV: " + path);
  std::vector<DiagramPoint> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // Sources may themselves contain commas (family descriptors), so the
    // three trailing fields are taken from the right.
    const std::size_t c3 = line.rfind(',');
    const std::size_t c2 = (c3 == std::string::npos || c3 == 0)
                               ? std::string::npos
                               : line.rfind(',', c3 - 1);
    const std::size_t c1 = (c2 == std::string::npos || c2 == 0)
                               ? std::string::npos
                               : line.rfind(',', c2 - 1);
    if (c1 == std::string::npos) throw IoError("bad CSV row: " + line);
    DiagramPoint pt;
    pt.source = line.substr(0, c1);
    try {
      pt.x = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      pt.y = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    } catch (const std::exception&) {
      throw IoError("bad CSV row: " + line);
    }
    const std::string rs = line.substr(c3 + 1);
    if (rs == "true") pt.cheeger_regular = true;
    if (rs == "false") pt.cheeger_regular = false;
    points.push_back(std::move(pt));
  }
  return points;
}

namespace {

struct SvgMapper {
  double x0, x1, y0, y1;
  static constexpr double kW = 800.0, kH = 600.0, kMargin = 50.0;

  double px(double x) const {
    return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin);
  }
  double py(double y) const {
    return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin);
  }
};

std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void svg_curve(std::ofstream& out, const SvgMapper& m, const BandSpec& spec,
               bool upper_curve, const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1\" points=\"";
  const int steps = 256;
  const double xa = std::max(spec.x_min, m.x0);
  for (int k = 0; k <= steps; ++k) {
    const double x = xa + (m.x1 - xa) * k / steps;
    const double y = upper_curve ? spec.upper(x) : spec.lower(x);
    out << fmt_px(m.px(x)) << ',' << fmt_px(m.py(y)) << ' ';
  }
  out << "\"/>\n";
}

}  // namespace

void export_svg_scatter(const std::vector<DiagramPoint>& points,
                        const BandSpec& spec, const std::string& path,
                        bool unit_square_axes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  double x_lo = spec.x_min, x_hi = spec.x_min + 1.0;
  double y_lo = spec.lower(spec.x_min), y_hi = y_lo + 1.0;
  for (const DiagramPoint& pt : points) {
    double px = pt.x, py = pt.y;
    if (unit_square_axes) {
      px = kTwoSqrtPi / pt.x;
      py = kTwoSqrtPi / pt.y;
    }
    x_lo = std::min(x_lo, px);
    x_hi = std::max(x_hi, px);
    y_lo = std::min(y_lo, py);
    y_hi = std::max(y_hi, py);
  }
  if (unit_square_axes) {
    x_lo = 0.0;
    x_hi = 1.05;
    y_lo = 0.0;
    y_hi = 1.05;
  } else {
    const double pad_x = 0.05 * (x_hi - x_lo), pad_y = 0.05 * (y_hi - y_lo);
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo = std::min(y_lo - pad_y, spec.lower(x_lo) - pad_y);
    y_hi = std::max(y_hi + pad_y, spec.upper(std::max(x_hi, spec.x_min)));
  }
  const SvgMapper m{x_lo, x_hi, y_lo, y_hi};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"600\" viewBox=\"0 0 800 600\">\n"
      << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

  // frame
  out << "<rect x=\"" << fmt_px(SvgMapper::kMargin) << "\" y=\""
      << fmt_px(SvgMapper::kMargin) << "\" width=\""
      << fmt_px(SvgMapper::kW - 2 * SvgMapper::kMargin) << "\" height=\""
      << fmt_px(SvgMapper::kH - 2 * SvgMapper::kMargin)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  if (!unit_square_axes) {
    svg_curve(out, m, spec, false, "#1f77b4");
    svg_curve(out, m, spec, true, "#d62728");
  }

  for (const DiagramPoint& pt : points) {
    double px = pt.x, py = pt.y;
    if (unit_square_axes) {
      px = kTwoSqrtPi / pt.x;
      py = kTwoSqrtPi / pt.y;
    }
    out << "<circle cx=\"" << fmt_px(m.px(px)) << "\" cy=\""
        << fmt_px(m.py(py)) << "\" r=\"1.5\" fill=\"#333333\" "
           "fill-opacity=\"0.5\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cheegerlab
