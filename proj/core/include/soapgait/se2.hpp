#pragma once

#include <Eigen/Core>

namespace soapgait {

/// SE(2) pose of the body frame in the world: (x, y, theta).
///
/// theta is stored unwrapped (accumulated), never reduced mod 2*pi, so the
/// net rotation of a gait cycle is well defined even past a full turn.
struct GroupElement {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

/// Velocity of the body frame expressed in its own coordinates
/// (longitudinal, lateral, angular).
struct BodyVelocity {
  double xi_x = 0.0;
  double xi_y = 0.0;
  double xi_theta = 0.0;
};

/// Group product g1 * g2. Identity is (0,0,0).
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

/// Group inverse: compose(g, inverse(g)) == identity.
GroupElement inverse(const GroupElement& g);

/// Left action on a body velocity: the world-frame rate (xdot, ydot, thetadot)
/// of a frame at g moving with body velocity xi.
Eigen::Vector3d world_velocity(const GroupElement& g, const BodyVelocity& xi);

}  // namespace soapgait
