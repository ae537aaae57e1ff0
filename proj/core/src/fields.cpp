#include "soapgait/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soapgait/errors.hpp"

namespace soapgait {

void GridSpec::validate() const {
  if (n1 < 11 || n2 < 11) {
    throw DomainError("grid requires at least 11 nodes per axis");
  }
  if (!(bounds.b1.min < bounds.b1.max) || !(bounds.b2.min < bounds.b2.max)) {
    throw DomainError("grid bounds must satisfy min < max on each axis");
  }
}

FieldGrid::FieldGrid(const GridSpec& spec) : spec_(spec) {
  spec.validate();
  values_.assign(static_cast<std::size_t>(spec.n1) * spec.n2, 0.0);
}

FieldGrid::CellRef FieldGrid::locate(const Shape& beta) const {
  const auto check = [](double v, const AxisBounds& b, const char* name) {
    const double slack = 1e-12 * std::max(1.0, std::abs(b.max - b.min));
    if (v < b.min - slack || v > b.max + slack) {
      std::ostringstream os;
      os << "query " << v << " outside grid bounds [" << b.min << ", " << b.max
         << "] on axis " << name;
      throw DomainError(os.str());
    }
  };
  check(beta.b1, spec_.bounds.b1, "beta1");
  check(beta.b2, spec_.bounds.b2, "beta2");

  const double u = (beta.b1 - spec_.bounds.b1.min) / spec_.h1();
  const double v = (beta.b2 - spec_.bounds.b2.min) / spec_.h2();
  CellRef c;
  c.i = std::clamp(static_cast<int>(std::floor(u)), 0, spec_.n1 - 2);
  c.j = std::clamp(static_cast<int>(std::floor(v)), 0, spec_.n2 - 2);
  c.tx = u - c.i;
  c.ty = v - c.j;
  return c;
}

double FieldGrid::interpolate(const Shape& beta) const {
  const CellRef c = locate(beta);
  const double f00 = at(c.i, c.j), f10 = at(c.i + 1, c.j);
  const double f01 = at(c.i, c.j + 1), f11 = at(c.i + 1, c.j + 1);
  return (1 - c.tx) * (1 - c.ty) * f00 + c.tx * (1 - c.ty) * f10 +
         (1 - c.tx) * c.ty * f01 + c.tx * c.ty * f11;
}

Eigen::Vector2d FieldGrid::gradient(const Shape& beta) const {
  const CellRef c = locate(beta);
  const double f00 = at(c.i, c.j), f10 = at(c.i + 1, c.j);
  const double f01 = at(c.i, c.j + 1), f11 = at(c.i + 1, c.j + 1);
  const double d1 =
      ((1 - c.ty) * (f10 - f00) + c.ty * (f11 - f01)) / spec_.h1();
  const double d2 =
      ((1 - c.tx) * (f01 - f00) + c.tx * (f11 - f10)) / spec_.h2();
  return {d1, d2};
}

double FieldGrid::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double FieldGrid::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double FieldGrid::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

FieldGrid map_grid(const GridSpec& spec,
                   const std::function<double(const Shape&)>& fn) {
  FieldGrid g(spec);
  for (int i = 0; i < spec.n1; ++i) {
    for (int j = 0; j < spec.n2; ++j) {
      g.at(i, j) = fn(spec.node(i, j));
    }
  }
  return g;
}

Eigen::Vector3d lie_bracket_local(const LocalConnection& a) {
  const auto& m = a.rows;
  return {m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0),
          m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1), 0.0};
}

FieldGrid partial_derivative(const FieldGrid& f, int axis) {
  const GridSpec& spec = f.spec();
  FieldGrid out(spec);
  const double h = (axis == 0) ? spec.h1() : spec.h2();
  const int n = (axis == 0) ? spec.n1 : spec.n2;
  auto value = [&](int k, int other) {
    return (axis == 0) ? f.at(k, other) : f.at(other, k);
  };
  auto store = [&](int k, int other, double v) {
    if (axis == 0) {
      out.at(k, other) = v;
    } else {
      out.at(other, k) = v;
    }
  };
  const int n_other = (axis == 0) ? spec.n2 : spec.n1;
  for (int o = 0; o < n_other; ++o) {
    for (int k = 0; k < n; ++k) {
      double d;
      if (k == 0) {
        d = (-3 * value(0, o) + 4 * value(1, o) - value(2, o)) / (2 * h);
      } else if (k == n - 1) {
        d = (3 * value(n - 1, o) - 4 * value(n - 2, o) + value(n - 3, o)) /
            (2 * h);
      } else {
        d = (value(k + 1, o) - value(k - 1, o)) / (2 * h);
      }
      store(k, o, d);
    }
  }
  return out;
}

FieldGrid exterior_derivative(const FieldGrid& a_col1,
                              const FieldGrid& a_col2) {
  const FieldGrid d1 = partial_derivative(a_col2, 0);
  const FieldGrid d2 = partial_derivative(a_col1, 1);
  FieldGrid out(a_col1.spec());
  for (int i = 0; i < out.spec().n1; ++i) {
    for (int j = 0; j < out.spec().n2; ++j) {
      out.at(i, j) = d1.at(i, j) - d2.at(i, j);
    }
  }
  return out;
}

CurvatureField curvature_field(const ConnectionGrids& a) {
  const GridSpec& spec = a.comp[0][0].spec();
  CurvatureField field;
  for (int row = 0; row < 3; ++row) {
    const FieldGrid da = exterior_derivative(a.comp[row][0], a.comp[row][1]);
    field.h[row] = FieldGrid(spec);
    for (int i = 0; i < spec.n1; ++i) {
      for (int j = 0; j < spec.n2; ++j) {
        LocalConnection conn;
        for (int r = 0; r < 3; ++r) {
          conn.rows(r, 0) = a.comp[r][0].at(i, j);
          conn.rows(r, 1) = a.comp[r][1].at(i, j);
        }
        const Eigen::Vector3d bracket = lie_bracket_local(conn);
        field.h[row].at(i, j) = -da.at(i, j) + bracket(row);
      }
    }
  }
  return field;
}

MetricGradGrids metric_gradients(const MetricGrids& m) {
  MetricGradGrids g;
  const std::array<const FieldGrid*, 3> comps = {&m.m11, &m.m12, &m.m22};
  for (int c = 0; c < 3; ++c) {
    g.d1[c] = partial_derivative(*comps[c], 0);
    g.d2[c] = partial_derivative(*comps[c], 1);
  }
  return g;
}

Eigen::Matrix<double, 3, 2> FieldSet::connection_at(const Shape& beta) const {
  Eigen::Matrix<double, 3, 2> a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) {
      a(r, c) = A.comp[r][c].interpolate(beta);
    }
  }
  return a;
}

Eigen::Matrix2d FieldSet::metric_at(const Shape& beta) const {
  Eigen::Matrix2d m;
  m(0, 0) = M.m11.interpolate(beta);
  m(0, 1) = m(1, 0) = M.m12.interpolate(beta);
  m(1, 1) = M.m22.interpolate(beta);
  return m;
}

std::array<Eigen::Matrix2d, 2> FieldSet::metric_gradient_at(
    const Shape& beta) const {
  const Eigen::Vector2d g11 = M.m11.gradient(beta);
  const Eigen::Vector2d g12 = M.m12.gradient(beta);
  const Eigen::Vector2d g22 = M.m22.gradient(beta);
  std::array<Eigen::Matrix2d, 2> out;
  for (int axis = 0; axis < 2; ++axis) {
    out[axis](0, 0) = g11(axis);
    out[axis](0, 1) = out[axis](1, 0) = g12(axis);
    out[axis](1, 1) = g22(axis);
  }
  return out;
}

double FieldSet::curvature_at(const Shape& beta, int component) const {
  return H.h[component].interpolate(beta);
}

namespace {

void finish_field_set(FieldSet& set) {
  for (int row = 0; row < 3; ++row) {
    set.dA[row] =
        exterior_derivative(set.A.comp[row][0], set.A.comp[row][1]);
  }
  set.H = curvature_field(set.A);
  set.dM = metric_gradients(set.M);
}

}  // namespace

FieldSet sample_fields(const SystemModel& model, const GridSpec& spec) {
  spec.validate();
  if (spec.bounds.b1.min < model.bounds().b1.min ||
      spec.bounds.b1.max > model.bounds().b1.max ||
      spec.bounds.b2.min < model.bounds().b2.min ||
      spec.bounds.b2.max > model.bounds().b2.max) {
    throw DomainError("grid bounds exceed the model's shape bounds");
  }

  FieldSet set;
  set.spec = spec;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) set.A.comp[r][c] = FieldGrid(spec);
  }
  set.M.m11 = set.M.m12 = set.M.m22 = FieldGrid(spec);

  for (int i = 0; i < spec.n1; ++i) {
    for (int j = 0; j < spec.n2; ++j) {
      const Shape beta = spec.node(i, j);
      SystemModel::Sample s;
      try {
        s = model.sample(beta);
      } catch (const DomainError& e) {
        std::ostringstream os;
        os << "field sampling failed at node (" << i << ", " << j
           << "), beta = (" << beta.b1 << ", " << beta.b2 << "): " << e.what();
        throw DomainError(os.str());
      }
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 2; ++c) set.A.comp[r][c].at(i, j) = s.connection.rows(r, c);
      }
      set.M.m11.at(i, j) = s.metric.m(0, 0);
      set.M.m12.at(i, j) = s.metric.m(0, 1);
      set.M.m22.at(i, j) = s.metric.m(1, 1);
      set.max_omega_condition =
          std::max(set.max_omega_condition, s.omega_g_condition);
    }
  }
  finish_field_set(set);
  return set;
}

FieldSet sample_fields_from(
    const std::function<Eigen::Matrix<double, 3, 2>(const Shape&)>& a_fn,
    const std::function<Eigen::Matrix2d(const Shape&)>& m_fn,
    const GridSpec& spec) {
  spec.validate();
  FieldSet set;
  set.spec = spec;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) set.A.comp[r][c] = FieldGrid(spec);
  }
  set.M.m11 = set.M.m12 = set.M.m22 = FieldGrid(spec);
  for (int i = 0; i < spec.n1; ++i) {
    for (int j = 0; j < spec.n2; ++j) {
      const Shape beta = spec.node(i, j);
      const Eigen::Matrix<double, 3, 2> a = a_fn(beta);
      const Eigen::Matrix2d m = m_fn(beta);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 2; ++c) set.A.comp[r][c].at(i, j) = a(r, c);
      }
      set.M.m11.at(i, j) = m(0, 0);
      set.M.m12.at(i, j) = m(0, 1);
      set.M.m22.at(i, j) = m(1, 1);
    }
  }
  finish_field_set(set);
  return set;
}

}  // namespace soapgait
