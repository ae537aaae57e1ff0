#include "soapgait/body.hpp"

#include <cmath>
#include <stdexcept>

namespace soapgait {
namespace {

Eigen::Matrix2d rot(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

// 90-degree rotation, d/da rot(a) = rot(a) * kSpin.
const Eigen::Matrix2d kSpin = (Eigen::Matrix2d() << 0, -1, 1, 0).finished();

// Segment data during construction, before frame normalization: midpoint
// position, orientation, and their exact derivatives w.r.t. the shape.
struct RawSegment {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double angle = 0.0;
  Eigen::Matrix2d dposition = Eigen::Matrix2d::Zero();  // columns: d/db1, d/db2
  Eigen::RowVector2d dangle = Eigen::RowVector2d::Zero();
  double length = 0.0;
};

BodyDiscretization assemble(const std::vector<RawSegment>& raw) {
  BodyDiscretization body;
  body.segments.reserve(raw.size());
  for (const RawSegment& r : raw) {
    BodySegment seg;
    seg.pose = {r.position.x(), r.position.y(), r.angle};
    seg.length = r.length;
    const Eigen::Matrix2d r_local = rot(r.angle).transpose();
    seg.shape_jacobian.topRows<2>() = r_local * r.dposition;
    seg.shape_jacobian.bottomRows<1>() = r.dangle;
    body.segments.push_back(seg);
  }
  return normalize_frame(body);
}

}  // namespace

double BodyDiscretization::total_length() const {
  double sum = 0.0;
  for (const auto& s : segments) sum += s.length;
  return sum;
}

Eigen::Vector2d BodyDiscretization::centroid() const {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  const double total = total_length();
  for (const auto& s : segments) c += (s.length / total) * Eigen::Vector2d(s.pose.x, s.pose.y);
  return c;
}

double BodyDiscretization::mean_orientation() const {
  double m = 0.0;
  const double total = total_length();
  for (const auto& s : segments) m += (s.length / total) * s.pose.theta;
  return m;
}

BodyDiscretization normalize_frame(const BodyDiscretization& body) {
  if (body.segments.empty()) {
    throw std::invalid_argument("normalize_frame: empty body");
  }
  const double total = body.total_length();

  // Frame parameters and their shape derivatives, recovered from the
  // segment Jacobians (world-aligned position rates are R(phi) * J top rows).
  Eigen::Vector2d cbar = Eigen::Vector2d::Zero();
  double thetabar = 0.0;
  Eigen::Matrix2d dcbar = Eigen::Matrix2d::Zero();
  Eigen::RowVector2d dthetabar = Eigen::RowVector2d::Zero();
  for (const auto& s : body.segments) {
    const double w = s.length / total;
    cbar += w * Eigen::Vector2d(s.pose.x, s.pose.y);
    thetabar += w * s.pose.theta;
    dcbar += w * (rot(s.pose.theta) * s.shape_jacobian.topRows<2>());
    dthetabar += w * s.shape_jacobian.bottomRows<1>();
  }

  const Eigen::Matrix2d r_inv = rot(-thetabar);
  BodyDiscretization out;
  out.segments.reserve(body.segments.size());
  for (const auto& s : body.segments) {
    const Eigen::Vector2d p(s.pose.x, s.pose.y);
    const Eigen::Matrix2d dp = rot(s.pose.theta) * s.shape_jacobian.topRows<2>();
    const Eigen::RowVector2d dphi = s.shape_jacobian.bottomRows<1>();

    const Eigen::Vector2d p_new = r_inv * (p - cbar);
    const double phi_new = s.pose.theta - thetabar;
    // d/db of R(-thetabar) (p - cbar): frame rotation rate enters through
    // the spin of the offset vector.
    const Eigen::Matrix2d dp_new =
        r_inv * ((dp - dcbar) - kSpin * (p - cbar) * dthetabar);
    const Eigen::RowVector2d dphi_new = dphi - dthetabar;

    BodySegment seg;
    seg.pose = {p_new.x(), p_new.y(), phi_new};
    seg.length = s.length;
    seg.shape_jacobian.topRows<2>() = rot(phi_new).transpose() * dp_new;
    seg.shape_jacobian.bottomRows<1>() = dphi_new;
    out.segments.push_back(seg);
  }
  return out;
}

BodyDiscretization three_link_body(const Shape& alpha, int n_segments) {
  if (n_segments < 3 || n_segments % 3 != 0) {
    throw std::invalid_argument(
        "three_link_body: n_segments must be >= 3 and divisible by 3, got " +
        std::to_string(n_segments));
  }
  const int per_link = n_segments / 3;
  const double seg_len = 1.0 / n_segments;
  const double a1 = alpha.b1, a2 = alpha.b2;

  std::vector<RawSegment> raw;
  raw.reserve(n_segments);

  // Construction frame: middle link along x, joints at (-1/6, 0) and (1/6, 0).
  // Segments run tail to head.
  const Eigen::Vector2d joint1(-1.0 / 6.0, 0.0);
  const Eigen::Vector2d joint2(1.0 / 6.0, 0.0);
  const Eigen::Vector2d dir1(std::cos(a1), std::sin(a1));
  const Eigen::Vector2d dir1_perp(-std::sin(a1), std::cos(a1));
  const Eigen::Vector2d dir2(std::cos(a2), std::sin(a2));
  const Eigen::Vector2d dir2_perp(-std::sin(a2), std::cos(a2));

  // Back link: from the tail toward joint1, oriented at a1.
  for (int k = 0; k < per_link; ++k) {
    const double u = 1.0 / 3.0 - (k + 0.5) * seg_len;  // distance behind joint1
    RawSegment r;
    r.position = joint1 - u * dir1;
    r.angle = a1;
    r.dposition.col(0) = -u * dir1_perp;
    r.dangle = Eigen::RowVector2d(1.0, 0.0);
    r.length = seg_len;
    raw.push_back(r);
  }
  // Middle link along x.
  for (int k = 0; k < per_link; ++k) {
    RawSegment r;
    r.position = Eigen::Vector2d(-1.0 / 6.0 + (k + 0.5) * seg_len, 0.0);
    r.length = seg_len;
    raw.push_back(r);
  }
  // Front link: from joint2 toward the head, oriented at a2.
  for (int k = 0; k < per_link; ++k) {
    const double u = (k + 0.5) * seg_len;
    RawSegment r;
    r.position = joint2 + u * dir2;
    r.angle = a2;
    r.dposition.col(1) = u * dir2_perp;
    r.dangle = Eigen::RowVector2d(0.0, 1.0);
    r.length = seg_len;
    raw.push_back(r);
  }
  return assemble(raw);
}

BodyDiscretization serpenoid_body(const Shape& amps, int n_segments,
                                  double mode_scale) {
  if (n_segments < 16) {
    throw std::invalid_argument(
        "serpenoid_body: n_segments must be >= 16 (curvature under-resolved), "
        "got " + std::to_string(n_segments));
  }
  const int n = n_segments;
  const int m = 2 * n + 1;  // sample points at segment boundaries + midpoints
  const double h = 1.0 / (2.0 * n);
  constexpr double two_pi = 6.283185307179586476925286766559;

  // Curvature modes at the sample points.
  std::vector<double> k1(m), k2(m);
  for (int j = 0; j < m; ++j) {
    const double s = -0.5 + j * h;
    k1[j] = mode_scale * std::sin(two_pi * s);
    k2[j] = mode_scale * std::cos(two_pi * s);
  }

  // Orientation: phi(s) = b1 K1(s) + b2 K2(s) with Ki the cumulative
  // trapezoid of mode i from the body center (s = 0, sample index n).
  std::vector<double> K1(m), K2(m);
  K1[n] = K2[n] = 0.0;
  for (int j = n; j + 1 < m; ++j) {
    K1[j + 1] = K1[j] + 0.5 * h * (k1[j] + k1[j + 1]);
    K2[j + 1] = K2[j] + 0.5 * h * (k2[j] + k2[j + 1]);
  }
  for (int j = n; j > 0; --j) {
    K1[j - 1] = K1[j] - 0.5 * h * (k1[j - 1] + k1[j]);
    K2[j - 1] = K2[j] - 0.5 * h * (k2[j - 1] + k2[j]);
  }

  std::vector<double> phi(m);
  for (int j = 0; j < m; ++j) phi[j] = amps.b1 * K1[j] + amps.b2 * K2[j];

  // Position: cumulative trapezoid of the unit tangent, and of its exact
  // shape derivative, from the center outward.
  std::vector<Eigen::Vector2d> pos(m), dpos1(m), dpos2(m);
  auto tangent = [&](int j) -> Eigen::Vector2d {
    return {std::cos(phi[j]), std::sin(phi[j])};
  };
  auto dtangent = [&](int j, const std::vector<double>& K) -> Eigen::Vector2d {
    return Eigen::Vector2d(-std::sin(phi[j]), std::cos(phi[j])) * K[j];
  };
  pos[n] = dpos1[n] = dpos2[n] = Eigen::Vector2d::Zero();
  for (int j = n; j + 1 < m; ++j) {
    pos[j + 1] = pos[j] + 0.5 * h * (tangent(j) + tangent(j + 1));
    dpos1[j + 1] = dpos1[j] + 0.5 * h * (dtangent(j, K1) + dtangent(j + 1, K1));
    dpos2[j + 1] = dpos2[j] + 0.5 * h * (dtangent(j, K2) + dtangent(j + 1, K2));
  }
  for (int j = n; j > 0; --j) {
    pos[j - 1] = pos[j] - 0.5 * h * (tangent(j - 1) + tangent(j));
    dpos1[j - 1] = dpos1[j] - 0.5 * h * (dtangent(j - 1, K1) + dtangent(j, K1));
    dpos2[j - 1] = dpos2[j] - 0.5 * h * (dtangent(j - 1, K2) + dtangent(j, K2));
  }

  std::vector<RawSegment> raw;
  raw.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int j = 2 * k + 1;  // midpoint sample of segment k
    RawSegment r;
    r.position = pos[j];
    r.angle = phi[j];
    r.dposition.col(0) = dpos1[j];
    r.dposition.col(1) = dpos2[j];
    r.dangle = Eigen::RowVector2d(K1[j], K2[j]);
    r.length = 1.0 / n;
    raw.push_back(r);
  }
  return assemble(raw);
}

std::vector<Eigen::Matrix<double, 3, 2>> shape_jacobians(
    const BodyDiscretization& body) {
  std::vector<Eigen::Matrix<double, 3, 2>> out;
  out.reserve(body.segments.size());
  for (const auto& s : body.segments) out.push_back(s.shape_jacobian);
  return out;
}

}  // namespace soapgait
