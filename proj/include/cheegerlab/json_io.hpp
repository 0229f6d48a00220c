#pragma once

#include <string>

#include <json.hpp>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/optimizer.hpp"

namespace cheegerlab {

// Interchange format shared by every CLI command: an object whose "vertices"
// key holds an array of [x, y] pairs, counterclockwise after normalization.
nlohmann::ordered_json polygon_json(const ConvexPolygon& p);

// Throws IoError when the file is unreadable or is not valid polygon JSON;
// vertex validation itself is left to make_polygon.
ConvexPolygon read_polygon_json(const std::string& path);

void write_polygon_json(const ConvexPolygon& p, const std::string& path);

nlohmann::ordered_json cheeger_result_json(const CheegerResult& res);

// Includes the vertex list, the attained h, the closed-form N-gon bound at
// the same perimeter for reference, and the feasibility residuals.
nlohmann::ordered_json optimize_result_json(const OptimizeResult& res,
                                            int sides, double p0);

}  // namespace cheegerlab
