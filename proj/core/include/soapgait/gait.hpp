#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "soapgait/fields.hpp"
#include "soapgait/se2.hpp"

namespace soapgait {

/// Position component selector for displacement / efficiency objectives.
enum class Component { x = 0, y = 1, theta = 2 };

const char* component_name(Component c);
Component component_from_name(const std::string& name);

/// Closed loop of waypoints in shape space, traversed in list order.
/// orientation records the winding sign of that order (+1 = ccw) and must
/// agree with the polygon's signed area whenever the area is nonzero.
struct Gait {
  std::vector<Eigen::Vector2d> waypoints;
  int orientation = +1;

  Gait reversed() const;
};

inline constexpr int kMinWaypoints = 12;
inline constexpr int kDefaultSubstepsPerSegment = 8;
inline constexpr int kDefaultFluxSubdivisions = 4;

/// Twice the signed area of the waypoint polygon (positive for ccw order).
double polygon_signed_area2(const std::vector<Eigen::Vector2d>& pts);

/// Winding sign of the waypoint order: +1 ccw, -1 cw, 0 degenerate.
int polygon_winding(const std::vector<Eigen::Vector2d>& pts);

/// True when no two non-adjacent edges intersect (zero-length edges are
/// ignored). A false result is the "internal loops" pathology.
bool is_simple_polygon(const std::vector<Eigen::Vector2d>& pts);

/// Throws on waypoint counts below kMinWaypoints, non-finite coordinates,
/// or an orientation flag inconsistent with the polygon winding.
void validate_gait(const Gait& gait);

struct GaitEvaluation {
  GroupElement displacement;
  double pathlength = 0.0;
  Eigen::Vector3d enclosed_flux = Eigen::Vector3d::Zero();
  Eigen::Vector3d efficiency = Eigen::Vector3d::Zero();  // per component
};

using ConnectionFn =
    std::function<Eigen::Matrix<double, 3, 2>(const Shape&)>;

/// One integration sample of the gait cycle: time, shape, and pose.
struct TrajectorySample {
  double t = 0.0;
  Shape beta;
  GroupElement g;
};

/// Integrate gdot = g * xi, xi = -A(beta(t)) * betadot(t) around the loop
/// (piecewise-linear shape path, uniform time per segment, fixed-step RK4)
/// starting from the identity.
std::vector<TrajectorySample> integrate_trajectory(
    const Gait& gait, const ConnectionFn& connection,
    int substeps_per_segment = kDefaultSubstepsPerSegment);

/// Net displacement over one cycle: final pose of integrate_trajectory.
GroupElement displacement(const Gait& gait, const ConnectionFn& connection,
                          int substeps_per_segment = kDefaultSubstepsPerSegment);
GroupElement displacement(const Gait& gait, const FieldSet& fields,
                          int substeps_per_segment = kDefaultSubstepsPerSegment);

/// Metric pathlength: sum of sqrt(dbeta^T M(segment midpoint) dbeta).
double pathlength(const Gait& gait, const FieldSet& fields);

/// Surface integral of each curvature component over the polygon interior
/// (fan triangulation from the vertex centroid, radially subdivided,
/// 3-point quadrature per triangle). Sign follows the winding of the
/// waypoint order. Throws for self-intersecting polygons.
Eigen::Vector3d enclosed_flux(const Gait& gait, const FieldSet& fields,
                              int subdivisions = kDefaultFluxSubdivisions);

/// Selected displacement component per unit metric pathlength, using the
/// true line-integral displacement (never the flux approximation).
double efficiency(const Gait& gait, const FieldSet& fields, Component c,
                  int substeps_per_segment = kDefaultSubstepsPerSegment);

GaitEvaluation evaluate_gait(const Gait& gait, const FieldSet& fields,
                             int substeps_per_segment = kDefaultSubstepsPerSegment,
                             int flux_subdivisions = kDefaultFluxSubdivisions);

}  // namespace soapgait
