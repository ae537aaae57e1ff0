#pragma once

#include <Eigen/Core>

#include "soapgait/body.hpp"

namespace soapgait {

/// Per-unit-length drag coefficients of a body element. Normal drag exceeds
/// tangential drag (2:1 by default), which is what lets angle-of-attack
/// produce net motion.
struct DragModel {
  double c_tangential = 1.0;
  double c_normal = 2.0;

  void validate() const;
};

/// Pfaffian constraint blocks: the total body-frame wrench for a motion
/// (xi, beta_dot) is -(omega_g * xi + omega_beta * beta_dot).
struct ConstraintMatrix {
  Eigen::Matrix3d omega_g = Eigen::Matrix3d::Zero();
  Eigen::Matrix<double, 3, 2> omega_beta = Eigen::Matrix<double, 3, 2>::Zero();
};

/// Local connection A(beta): xi = -A(beta) * beta_dot. Rows x, y, theta.
struct LocalConnection {
  Eigen::Matrix<double, 3, 2> rows = Eigen::Matrix<double, 3, 2>::Zero();
};

/// Riemannian shape-space metric; also the map from shape velocity to
/// power dissipated into the medium.
struct MetricTensor {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
};

/// Rigid Jacobian of one segment: maps a body velocity of the body frame to
/// the segment's local (longitudinal, lateral, angular) velocity.
Eigen::Matrix3d rigid_jacobian(const BodySegment& segment);

/// Assemble the constraint blocks by summing per-segment drag wrenches.
ConstraintMatrix constraint_matrix(const BodyDiscretization& body,
                                   const DragModel& drag);

/// Total drag wrench (Fx, Fy, Ftheta) on the body frame for a given body
/// velocity and shape rate.
Eigen::Vector3d body_wrench(const BodyDiscretization& body,
                            const DragModel& drag, const Eigen::Vector3d& xi,
                            const Eigen::Vector2d& beta_dot);

/// Swimmer model: body geometry generator + drag law + shape bounds.
class SystemModel {
 public:
  enum class Kind { three_link, serpenoid };

  SystemModel(Kind kind, int n_segments, DragModel drag, ShapeBounds bounds,
              double serpenoid_mode_scale = kSerpenoidModeScale);

  static SystemModel three_link(int n_segments = 99);
  static SystemModel serpenoid(int n_segments = 100);

  BodyDiscretization body(const Shape& beta) const;
  LocalConnection local_connection(const Shape& beta) const;
  MetricTensor metric(const Shape& beta) const;
  double dissipated_power(const Shape& beta,
                          const Eigen::Vector2d& beta_dot) const;

  /// Connection and metric from one assembly, with the condition number of
  /// omega_g for conditioning diagnostics.
  struct Sample {
    LocalConnection connection;
    MetricTensor metric;
    double omega_g_condition = 0.0;
  };
  Sample sample(const Shape& beta) const;

  Kind kind() const { return kind_; }
  int n_segments() const { return n_segments_; }
  const DragModel& drag() const { return drag_; }
  const ShapeBounds& bounds() const { return bounds_; }
  double serpenoid_mode_scale() const { return serpenoid_mode_scale_; }

 private:
  void check_bounds(const Shape& beta) const;

  Kind kind_;
  int n_segments_;
  DragModel drag_;
  ShapeBounds bounds_;
  double serpenoid_mode_scale_;
};

}  // namespace soapgait
