#pragma once

#include <vector>

#include <Eigen/Core>

#include "soapgait/fields.hpp"

namespace soapgait {

/// One level-set polyline in shape-space coordinates. Closed lines repeat
/// no point; points.front() connects back to points.back().
struct ContourLine {
  std::vector<Eigen::Vector2d> points;
  bool closed = false;
};

/// Marching-squares extraction of the level set f = level.
std::vector<ContourLine> extract_contours(const FieldGrid& f, double level);

/// Ray-casting point-in-polygon test for a closed contour.
bool encloses_point(const ContourLine& line, const Eigen::Vector2d& p);

}  // namespace soapgait
