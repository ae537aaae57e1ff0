#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "soapgait/dynamics.hpp"

namespace soapgait {

/// Uniform rectangular grid over the shape space.
struct GridSpec {
  ShapeBounds bounds;
  int n1 = 101;
  int n2 = 101;

  void validate() const;
  double h1() const { return (bounds.b1.max - bounds.b1.min) / (n1 - 1); }
  double h2() const { return (bounds.b2.max - bounds.b2.min) / (n2 - 1); }
  double beta1(int i) const { return bounds.b1.min + i * h1(); }
  double beta2(int j) const { return bounds.b2.min + j * h2(); }
  Shape node(int i, int j) const { return {beta1(i), beta2(j)}; }
};

/// Scalar field sampled on a GridSpec, with bilinear interpolation.
class FieldGrid {
 public:
  FieldGrid() = default;
  explicit FieldGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  double at(int i, int j) const { return values_[index(i, j)]; }
  double& at(int i, int j) { return values_[index(i, j)]; }
  const std::vector<double>& values() const { return values_; }

  /// Bilinear interpolation; exact at nodes, reproduces affine fields.
  /// Throws DomainError naming the axis for out-of-bounds queries.
  double interpolate(const Shape& beta) const;

  /// Exact gradient of the bilinear interpolant (piecewise constant per
  /// cell in each direction).
  Eigen::Vector2d gradient(const Shape& beta) const;

  double min_value() const;
  double max_value() const;
  double max_abs() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * spec_.n2 + j;
  }
  struct CellRef {
    int i, j;
    double tx, ty;
  };
  CellRef locate(const Shape& beta) const;

  GridSpec spec_;
  std::vector<double> values_;
};

/// Sample an arbitrary scalar function on a grid.
FieldGrid map_grid(const GridSpec& spec,
                   const std::function<double(const Shape&)>& fn);

/// Connection component grids: rows x, y, theta; columns per shape axis.
struct ConnectionGrids {
  std::array<std::array<FieldGrid, 2>, 3> comp;
};

struct MetricGrids {
  FieldGrid m11, m12, m22;
};

/// Central-difference gradients of the metric components (one-sided at the
/// grid edges), as sampled/exported fields.
struct MetricGradGrids {
  std::array<FieldGrid, 3> d1;  // d/dbeta1 of m11, m12, m22
  std::array<FieldGrid, 3> d2;  // d/dbeta2 of m11, m12, m22
};

/// Constraint-curvature (height function) components Hx, Hy, Htheta:
/// H = -dA + [A1, A2], the integrand whose surface integral over a
/// counterclockwise gait approximates its displacement.
struct CurvatureField {
  std::array<FieldGrid, 3> h;
};

/// Local SE(2) Lie bracket of the connection columns:
/// ( A^y_1 A^th_2 - A^y_2 A^th_1, A^x_2 A^th_1 - A^x_1 A^th_2, 0 ).
Eigen::Vector3d lie_bracket_local(const LocalConnection& a);

/// Row-wise generalized curl dA = d(col2)/dbeta1 - d(col1)/dbeta2,
/// central differences in the interior, one-sided at edges.
FieldGrid exterior_derivative(const FieldGrid& a_col1, const FieldGrid& a_col2);

/// Partial derivative of a sampled grid along one axis (0 or 1), central
/// differences interior, second-order one-sided at edges.
FieldGrid partial_derivative(const FieldGrid& f, int axis);

CurvatureField curvature_field(const ConnectionGrids& a);

MetricGradGrids metric_gradients(const MetricGrids& m);

/// All fields the evaluator and optimizer query, sampled once per run.
class FieldSet {
 public:
  GridSpec spec;
  ConnectionGrids A;
  MetricGrids M;
  MetricGradGrids dM;
  std::array<FieldGrid, 3> dA;
  CurvatureField H;
  double max_omega_condition = 0.0;

  Eigen::Matrix<double, 3, 2> connection_at(const Shape& beta) const;
  Eigen::Matrix2d metric_at(const Shape& beta) const;
  /// d M / d beta1 and d M / d beta2, as exact gradients of the bilinear
  /// metric interpolant (consistent with metric_at, so pathlength gradients
  /// are exact derivatives of the interpolated pathlength).
  std::array<Eigen::Matrix2d, 2> metric_gradient_at(const Shape& beta) const;
  double curvature_at(const Shape& beta, int component) const;
};

/// Sample connection, metric, metric gradients, and curvature fields of a
/// model over a grid. Dynamics failures are reported with the offending
/// node coordinates.
FieldSet sample_fields(const SystemModel& model, const GridSpec& spec);

/// Build a FieldSet from analytic field functions (test support and
/// synthetic-field experiments share the production sampling path).
FieldSet sample_fields_from(
    const std::function<Eigen::Matrix<double, 3, 2>(const Shape&)>& a_fn,
    const std::function<Eigen::Matrix2d(const Shape&)>& m_fn,
    const GridSpec& spec);

}  // namespace soapgait
