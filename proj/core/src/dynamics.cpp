#include "soapgait/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "soapgait/errors.hpp"

namespace soapgait {
namespace {

constexpr double kConditionLimit = 1e12;

std::string shape_str(const Shape& beta) {
  std::ostringstream os;
  os << "(" << beta.b1 << ", " << beta.b2 << ")";
  return os.str();
}

struct Assembly {
  ConstraintMatrix omega;
  double condition = 0.0;
  Eigen::Matrix<double, 3, 2> connection = Eigen::Matrix<double, 3, 2>::Zero();
};

}  // namespace

void DragModel::validate() const {
  if (!(c_normal > c_tangential) || !(c_tangential > 0.0)) {
    throw DomainError("drag model requires c_normal > c_tangential > 0");
  }
}

Eigen::Matrix3d rigid_jacobian(const BodySegment& segment) {
  const double c = std::cos(segment.pose.theta);
  const double s = std::sin(segment.pose.theta);
  const double px = segment.pose.x, py = segment.pose.y;
  Eigen::Matrix3d j;
  // Local velocity = R(phi)^T (v + omega * spin(p)), angular passes through.
  j << c, s, c * (-py) + s * px,
      -s, c, -s * (-py) + c * px,
      0, 0, 1;
  return j;
}

ConstraintMatrix constraint_matrix(const BodyDiscretization& body,
                                   const DragModel& drag) {
  drag.validate();
  const Eigen::Vector3d c3(drag.c_tangential, drag.c_normal, 0.0);
  ConstraintMatrix omega;
  for (const auto& seg : body.segments) {
    const Eigen::Matrix3d jg = rigid_jacobian(seg);
    const Eigen::Matrix3d jg_c = jg.transpose() * c3.asDiagonal();
    omega.omega_g += seg.length * (jg_c * jg);
    omega.omega_beta += seg.length * (jg_c * seg.shape_jacobian);
  }
  return omega;
}

Eigen::Vector3d body_wrench(const BodyDiscretization& body,
                            const DragModel& drag, const Eigen::Vector3d& xi,
                            const Eigen::Vector2d& beta_dot) {
  const ConstraintMatrix omega = constraint_matrix(body, drag);
  return -(omega.omega_g * xi + omega.omega_beta * beta_dot);
}

SystemModel::SystemModel(Kind kind, int n_segments, DragModel drag,
                         ShapeBounds bounds, double serpenoid_mode_scale)
    : kind_(kind),
      n_segments_(n_segments),
      drag_(drag),
      bounds_(bounds),
      serpenoid_mode_scale_(serpenoid_mode_scale) {
  drag_.validate();
  // Construct one body up front so bad segment counts fail fast.
  (void)body(Shape{0.0, 0.0});
}

SystemModel SystemModel::three_link(int n_segments) {
  return SystemModel(Kind::three_link, n_segments, DragModel{}, ShapeBounds{});
}

SystemModel SystemModel::serpenoid(int n_segments) {
  return SystemModel(Kind::serpenoid, n_segments, DragModel{}, ShapeBounds{});
}

BodyDiscretization SystemModel::body(const Shape& beta) const {
  switch (kind_) {
    case Kind::three_link:
      return three_link_body(beta, n_segments_);
    case Kind::serpenoid:
      return serpenoid_body(beta, n_segments_, serpenoid_mode_scale_);
  }
  throw DomainError("unknown system kind");
}

void SystemModel::check_bounds(const Shape& beta) const {
  if (!bounds_.contains(beta)) {
    throw DomainError("shape " + shape_str(beta) +
                      " outside configured shape bounds");
  }
}

SystemModel::Sample SystemModel::sample(const Shape& beta) const {
  check_bounds(beta);
  const BodyDiscretization b = body(beta);
  const ConstraintMatrix omega = constraint_matrix(b, drag_);

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(omega.omega_g);
  const Eigen::Vector3d sv = svd.singularValues();
  const double smin = sv(2);
  const double smax = sv(0);
  const double condition =
      (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(condition < kConditionLimit)) {
    throw DomainError("degenerate body configuration at shape " +
                      shape_str(beta) + ": omega_g condition number " +
                      std::to_string(condition));
  }

  Sample out;
  out.omega_g_condition = condition;
  out.connection.rows =
      omega.omega_g.partialPivLu().solve(omega.omega_beta);

  // Solve-quality check: the constraint must be satisfied by xi = -A bdot.
  const double residual =
      (omega.omega_g * out.connection.rows - omega.omega_beta).norm();
  if (!(residual <= 1e-9 * std::max(1.0, omega.omega_beta.norm()))) {
    throw DomainError("constraint solve residual " + std::to_string(residual) +
                      " at shape " + shape_str(beta));
  }

  const Eigen::Vector3d c3(drag_.c_tangential, drag_.c_normal, 0.0);
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (const auto& seg : b.segments) {
    // Total Jacobian from shape rate to segment local velocity under the
    // quasi-static constraint: shape term minus rigid motion through A.
    const Eigen::Matrix<double, 3, 2> j =
        seg.shape_jacobian - rigid_jacobian(seg) * out.connection.rows;
    m += seg.length * (j.transpose() * c3.asDiagonal() * j);
  }
  out.metric.m = 0.5 * (m + m.transpose());

  const double trace = out.metric.m.trace();
  const double det = out.metric.m.determinant();
  if (!(trace > 0.0) || !(det > 0.0)) {
    throw DomainError("metric not positive definite at shape " +
                      shape_str(beta) + " (discretization failure)");
  }
  return out;
}

LocalConnection SystemModel::local_connection(const Shape& beta) const {
  return sample(beta).connection;
}

MetricTensor SystemModel::metric(const Shape& beta) const {
  return sample(beta).metric;
}

double SystemModel::dissipated_power(const Shape& beta,
                                     const Eigen::Vector2d& beta_dot) const {
  const MetricTensor m = metric(beta);
  return beta_dot.dot(m.m * beta_dot);
}

}  // namespace soapgait
