#include "cheegerlab/json_io.hpp"

#include <fstream>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

namespace {

nlohmann::ordered_json vertex_array(const std::vector<Point2>& verts) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Point2& v : verts) {
    arr.push_back({v.x, v.y});
  }
  return arr;
}

}  // namespace

nlohmann::ordered_json polygon_json(const ConvexPolygon& p) {
  return {{"vertices", vertex_array(p.vertices())}};
}

ConvexPolygon read_polygon_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open polygon file: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("invalid JSON in " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") ||
      !doc["vertices"].is_array()) {
    throw IoError("polygon JSON needs a \"vertices\" array: " + path);
  }
  std::vector<Point2> verts;
  for (const auto& item : doc["vertices"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number()) {
      throw IoError("vertex entries must be [x, y] number pairs: " + path);
    }
    verts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return make_polygon(verts);
}

void write_polygon_json(const ConvexPolygon& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write polygon file: " + path);
  }
  out << polygon_json(p).dump(2) << "\n";
}

nlohmann::ordered_json cheeger_result_json(const CheegerResult& res) {
  nlohmann::ordered_json contact = nlohmann::ordered_json::array();
  for (int k : res.contact_side_indices) contact.push_back(k);
  return {{"h", res.h},
          {"t_star", res.t_star},
          {"cheeger_regular", res.is_cheeger_regular},
          {"contact_sides", contact},
          {"core_vertices", vertex_array(res.core.vertices())}};
}

nlohmann::ordered_json optimize_result_json(const OptimizeResult& res,
                                            int sides, double p0) {
  return {{"sides", sides},
          {"perimeter", p0},
          {"vertices", vertex_array(res.polygon.vertices())},
          {"h", res.h},
          {"upper_bound_ngon", upper_bound_ngon(p0, 1.0, sides)},
          {"cheeger_regular", res.cheeger_regular},
          {"effective_sides", res.effective_sides},
          {"converged", res.converged},
          {"area_residual", res.area_residual},
          {"perimeter_residual", res.perimeter_residual},
          {"max_convexity", res.max_convexity},
          {"projected_gradient", res.projected_gradient}};
}

}  // namespace cheegerlab
