#include "soapgait/gait.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "soapgait/errors.hpp"

namespace soapgait {
namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Proper or touching intersection of segments (p1,p2) and (q1,q2).
bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  const double d1 = cross2(q2 - q1, p1 - q1);
  const double d2 = cross2(q2 - q1, p2 - q1);
  const double d3 = cross2(p2 - p1, q1 - p1);
  const double d4 = cross2(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& p) {
    return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) &&
           p.y() >= std::min(a.y(), b.y()) && p.y() <= std::max(a.y(), b.y());
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

const char* component_name(Component c) {
  switch (c) {
    case Component::x: return "x";
    case Component::y: return "y";
    case Component::theta: return "theta";
  }
  return "?";
}

Component component_from_name(const std::string& name) {
  if (name == "x") return Component::x;
  if (name == "y") return Component::y;
  if (name == "theta") return Component::theta;
  throw ConfigError("unknown component '" + name + "' (expected x|y|theta)");
}

Gait Gait::reversed() const {
  Gait r;
  r.waypoints.assign(waypoints.rbegin(), waypoints.rend());
  r.orientation = -orientation;
  return r;
}

double polygon_signed_area2(const std::vector<Eigen::Vector2d>& pts) {
  double area2 = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t k = 0; k < n; ++k) {
    area2 += cross2(pts[k], pts[(k + 1) % n]);
  }
  return area2;
}

int polygon_winding(const std::vector<Eigen::Vector2d>& pts) {
  const double a2 = polygon_signed_area2(pts);
  if (a2 > 0) return 1;
  if (a2 < 0) return -1;
  return 0;
}

bool is_simple_polygon(const std::vector<Eigen::Vector2d>& pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& p1 = pts[i];
    const Eigen::Vector2d& p2 = pts[(i + 1) % n];
    if ((p2 - p1).squaredNorm() == 0.0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Eigen::Vector2d& q1 = pts[j];
      const Eigen::Vector2d& q2 = pts[(j + 1) % n];
      if ((q2 - q1).squaredNorm() == 0.0) continue;
      if (segments_intersect(p1, p2, q1, q2)) return false;
    }
  }
  return true;
}

void validate_gait(const Gait& gait) {
  if (gait.waypoints.size() < static_cast<std::size_t>(kMinWaypoints)) {
    throw std::invalid_argument(
        "gait requires at least " + std::to_string(kMinWaypoints) +
        " waypoints, got " + std::to_string(gait.waypoints.size()));
  }
  for (const auto& w : gait.waypoints) {
    if (!w.allFinite()) {
      throw std::invalid_argument("gait waypoint has non-finite coordinates");
    }
  }
  if (gait.orientation != 1 && gait.orientation != -1) {
    throw std::invalid_argument("gait orientation must be +1 or -1");
  }
  const double a2 = polygon_signed_area2(gait.waypoints);
  const double scale = 1e-12;
  if (std::abs(a2) > scale && polygon_winding(gait.waypoints) != gait.orientation) {
    throw std::invalid_argument(
        "gait orientation flag disagrees with the waypoint winding");
  }
}

std::vector<TrajectorySample> integrate_trajectory(const Gait& gait,
                                                   const ConnectionFn& connection,
                                                   int substeps_per_segment) {
  validate_gait(gait);
  if (substeps_per_segment < 4) {
    throw std::invalid_argument("at least 4 RK substeps per segment required");
  }
  const std::size_t n = gait.waypoints.size();
  const double dt_segment = 1.0 / static_cast<double>(n);

  // Body velocity at the interpolated shape along segment i.
  auto xi_at = [&](std::size_t i, double u, const Eigen::Vector2d& beta_dot) {
    const Eigen::Vector2d beta = (1.0 - u) * gait.waypoints[i] +
                                 u * gait.waypoints[(i + 1) % n];
    const Eigen::Matrix<double, 3, 2> a = connection(Shape::from(beta));
    const Eigen::Vector3d xi = -(a * beta_dot);
    return BodyVelocity{xi(0), xi(1), xi(2)};
  };

  std::vector<TrajectorySample> samples;
  samples.reserve(n * substeps_per_segment + 1);
  GroupElement g;  // identity
  samples.push_back({0.0, Shape::from(gait.waypoints[0]), g});

  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d beta_dot =
        (gait.waypoints[(i + 1) % n] - gait.waypoints[i]) / dt_segment;
    const double h = dt_segment / substeps_per_segment;
    for (int s = 0; s < substeps_per_segment; ++s) {
      const double u0 = static_cast<double>(s) / substeps_per_segment;
      const double um = (s + 0.5) / substeps_per_segment;
      const double u1 = static_cast<double>(s + 1) / substeps_per_segment;

      const auto deriv = [&](const GroupElement& state, const BodyVelocity& xi) {
        return world_velocity(state, xi);
      };
      const BodyVelocity xi0 = xi_at(i, u0, beta_dot);
      const BodyVelocity xim = xi_at(i, um, beta_dot);
      const BodyVelocity xi1 = xi_at(i, u1, beta_dot);

      const Eigen::Vector3d k1 = deriv(g, xi0);
      const GroupElement g2{g.x + 0.5 * h * k1(0), g.y + 0.5 * h * k1(1),
                            g.theta + 0.5 * h * k1(2)};
      const Eigen::Vector3d k2 = deriv(g2, xim);
      const GroupElement g3{g.x + 0.5 * h * k2(0), g.y + 0.5 * h * k2(1),
                            g.theta + 0.5 * h * k2(2)};
      const Eigen::Vector3d k3 = deriv(g3, xim);
      const GroupElement g4{g.x + h * k3(0), g.y + h * k3(1),
                            g.theta + h * k3(2)};
      const Eigen::Vector3d k4 = deriv(g4, xi1);

      g.x += h / 6.0 * (k1(0) + 2 * k2(0) + 2 * k3(0) + k4(0));
      g.y += h / 6.0 * (k1(1) + 2 * k2(1) + 2 * k3(1) + k4(1));
      g.theta += h / 6.0 * (k1(2) + 2 * k2(2) + 2 * k3(2) + k4(2));

      const double t = (i + u1) * dt_segment;
      const Eigen::Vector2d beta = (1.0 - u1) * gait.waypoints[i] +
                                   u1 * gait.waypoints[(i + 1) % n];
      samples.push_back({t, Shape::from(beta), g});
    }
  }
  return samples;
}

GroupElement displacement(const Gait& gait, const ConnectionFn& connection,
                          int substeps_per_segment) {
  return integrate_trajectory(gait, connection, substeps_per_segment).back().g;
}

GroupElement displacement(const Gait& gait, const FieldSet& fields,
                          int substeps_per_segment) {
  return displacement(
      gait, [&fields](const Shape& b) { return fields.connection_at(b); },
      substeps_per_segment);
}

double pathlength(const Gait& gait, const FieldSet& fields) {
  validate_gait(gait);
  const std::size_t n = gait.waypoints.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = gait.waypoints[i];
    const Eigen::Vector2d& b = gait.waypoints[(i + 1) % n];
    const Eigen::Vector2d d = b - a;
    const Eigen::Matrix2d m = fields.metric_at(Shape::from(0.5 * (a + b)));
    const double q = d.dot(m * d);
    s += std::sqrt(std::max(q, 0.0));
  }
  return s;
}

Eigen::Vector3d enclosed_flux(const Gait& gait, const FieldSet& fields,
                              int subdivisions) {
  validate_gait(gait);
  if (subdivisions < 1) {
    throw std::invalid_argument("flux subdivisions must be >= 1");
  }
  if (!is_simple_polygon(gait.waypoints)) {
    throw DomainError(
        "enclosed flux is ill-defined for a self-intersecting gait polygon");
  }
  const std::size_t n = gait.waypoints.size();
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const auto& w : gait.waypoints) centroid += w;
  centroid /= static_cast<double>(n);

  Eigen::Vector3d flux = Eigen::Vector3d::Zero();
  auto accumulate_triangle = [&](const Eigen::Vector2d& v0,
                                 const Eigen::Vector2d& v1,
                                 const Eigen::Vector2d& v2) {
    const double area = 0.5 * cross2(v1 - v0, v2 - v0);
    if (area == 0.0) return;
    const std::array<Eigen::Vector2d, 3> mids = {
        0.5 * (v0 + v1), 0.5 * (v1 + v2), 0.5 * (v2 + v0)};
    for (int c = 0; c < 3; ++c) {
      double sum = 0.0;
      for (const auto& m : mids) {
        sum += fields.H.h[c].interpolate(Shape::from(m));
      }
      flux(c) += area * sum / 3.0;
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Vector2d& pa = gait.waypoints[k];
    const Eigen::Vector2d& pb = gait.waypoints[(k + 1) % n];
    // Radial strips between similar copies of the fan triangle keep the
    // quadrature cells compact even for large loops.
    for (int r = 0; r < subdivisions; ++r) {
      const double t0 = static_cast<double>(r) / subdivisions;
      const double t1 = static_cast<double>(r + 1) / subdivisions;
      const Eigen::Vector2d a0 = centroid + t0 * (pa - centroid);
      const Eigen::Vector2d b0 = centroid + t0 * (pb - centroid);
      const Eigen::Vector2d a1 = centroid + t1 * (pa - centroid);
      const Eigen::Vector2d b1 = centroid + t1 * (pb - centroid);
      accumulate_triangle(a0, b0, b1);
      accumulate_triangle(a0, b1, a1);
    }
  }
  return flux;
}

double efficiency(const Gait& gait, const FieldSet& fields, Component c,
                  int substeps_per_segment) {
  const double s = pathlength(gait, fields);
  if (!(s > 0.0)) {
    throw DomainError("efficiency undefined: gait has zero pathlength");
  }
  const GroupElement d = displacement(gait, fields, substeps_per_segment);
  const double num = (c == Component::x) ? d.x
                     : (c == Component::y) ? d.y
                                           : d.theta;
  return num / s;
}

GaitEvaluation evaluate_gait(const Gait& gait, const FieldSet& fields,
                             int substeps_per_segment, int flux_subdivisions) {
  GaitEvaluation eval;
  eval.displacement = displacement(gait, fields, substeps_per_segment);
  eval.pathlength = pathlength(gait, fields);
  eval.enclosed_flux = enclosed_flux(gait, fields, flux_subdivisions);
  if (!(eval.pathlength > 0.0)) {
    throw DomainError("gait evaluation requires a non-degenerate gait");
  }
  eval.efficiency =
      Eigen::Vector3d(eval.displacement.x, eval.displacement.y,
                      eval.displacement.theta) /
      eval.pathlength;
  return eval;
}

}  // namespace soapgait
