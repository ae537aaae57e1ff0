#include "soapgait/se2.hpp"

#include <cmath>

namespace soapgait {

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  const double c = std::cos(g1.theta);
  const double s = std::sin(g1.theta);
  return {g1.x + c * g2.x - s * g2.y,
          g1.y + s * g2.x + c * g2.y,
          g1.theta + g2.theta};
}

GroupElement inverse(const GroupElement& g) {
  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  return {-c * g.x - s * g.y, s * g.x - c * g.y, -g.theta};
}

Eigen::Vector3d world_velocity(const GroupElement& g, const BodyVelocity& xi) {
  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  return {c * xi.xi_x - s * xi.xi_y, s * xi.xi_x + c * xi.xi_y, xi.xi_theta};
}

}  // namespace soapgait
