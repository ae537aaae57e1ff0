#pragma once

#include <vector>

#include <Eigen/Core>

#include "soapgait/se2.hpp"

namespace soapgait {

/// Point in the two-dimensional shape space: joint angles for the
/// three-link swimmer, curvature-mode amplitudes for the serpenoid.
struct Shape {
  double b1 = 0.0;
  double b2 = 0.0;

  Eigen::Vector2d vec() const { return {b1, b2}; }
  static Shape from(const Eigen::Vector2d& v) { return {v.x(), v.y()}; }
};

/// Closed interval of admissible values for one shape axis.
struct AxisBounds {
  double min = -3.0;
  double max = 3.0;
};

struct ShapeBounds {
  AxisBounds b1;
  AxisBounds b2;

  bool contains(const Shape& s) const {
    return s.b1 >= b1.min && s.b1 <= b1.max && s.b2 >= b2.min &&
           s.b2 <= b2.max;
  }
};

/// One straight piece of the sampled body curve.
///
/// pose is the segment midpoint and tangent direction in the body frame
/// (centroid at the origin, length-weighted mean orientation zero).
/// shape_jacobian maps a shape rate to the segment's local velocity
/// (longitudinal, lateral, angular) induced purely by the shape change,
/// holding the body frame fixed.
struct BodySegment {
  GroupElement pose;
  double length = 0.0;
  Eigen::Matrix<double, 3, 2> shape_jacobian =
      Eigen::Matrix<double, 3, 2>::Zero();
};

struct BodyDiscretization {
  std::vector<BodySegment> segments;

  double total_length() const;
  /// Length-weighted mean of segment midpoints.
  Eigen::Vector2d centroid() const;
  /// Length-weighted mean of segment orientations.
  double mean_orientation() const;
};

/// Re-express a discretized body in its centroid / mean-orientation frame,
/// updating segment poses and shape Jacobians consistently. Idempotent.
BodyDiscretization normalize_frame(const BodyDiscretization& body);

/// Purcell's three-link swimmer: three rigid links of length 1/3, joint
/// angle alpha1 between links 1-2 and alpha2 between links 2-3 (each outer
/// link measured counterclockwise relative to the middle one).
///
/// n_segments must be >= 3 and divisible by 3.
BodyDiscretization three_link_body(const Shape& alpha, int n_segments);

inline constexpr double kSerpenoidModeScale = 6.283185307179586476925286766559;

/// Continuous-curvature swimmer with curvature
///   kappa(s) = mode_scale * (b1 * sin(2*pi*s) + b2 * cos(2*pi*s))
/// over arclength s in [-1/2, 1/2] (one full wave per body length).
/// Orientation and position follow by trapezoidal integration of the
/// curvature and unit tangent. n_segments must be >= 16.
BodyDiscretization serpenoid_body(const Shape& amps, int n_segments,
                                  double mode_scale = kSerpenoidModeScale);

/// Per-segment 3x2 matrices mapping shape rate to segment local velocity.
std::vector<Eigen::Matrix<double, 3, 2>> shape_jacobians(
    const BodyDiscretization& body);

}  // namespace soapgait
