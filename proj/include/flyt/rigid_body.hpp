#pragma once

// Deterministic 6-DOF rigid-body stepping: semi-implicit Euler on a diagonal
// inertia body, plus sphere/ground-plane contact and sphere-sphere overlap.

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "flyt/errors.hpp"
#include "flyt/frames.hpp"

namespace flyt {

inline constexpr double kGravity = 9.81;

struct RigidBodyState {
  Vec3 position = Vec3::Zero();          // ground frame, m
  EulerAngles orientation;               // rad
  Vec3 velocity = Vec3::Zero();          // ground frame, m/s
  Vec3 angular_velocity = Vec3::Zero();  // body frame, rad/s

  bool finite() const {
    return position.allFinite() && all_finite(orientation) && velocity.allFinite() &&
           angular_velocity.allFinite();
  }

  /// Linear velocity expressed in the body frame.
  Vec3 body_velocity() const { return ground_to_body(orientation) * velocity; }

  friend bool operator==(const RigidBodyState&, const RigidBodyState&) = default;
};

struct MassProperties {
  double mass = 1.0;                    // kg
  Vec3 inertia = Vec3::Ones();          // diagonal Jxx, Jyy, Jzz, kg m^2

  bool valid() const {
    return std::isfinite(mass) && mass > 0.0 && inertia.allFinite() && (inertia.array() > 0.0).all();
  }
};

/// Force and torque in the body frame, applied at a body-frame offset from
/// the centre of mass.
struct AppliedLoad {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
  Vec3 point = Vec3::Zero();
};

struct NetLoad {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
};

inline NetLoad accumulate(std::span<const AppliedLoad> loads) {
  NetLoad net;
  for (const auto& load : loads) {
    net.force += load.force;
    net.torque += load.torque + load.point.cross(load.force);
  }
  return net;
}

inline constexpr int kGyroIterations = 32;

/// One semi-implicit Euler step. Velocities are updated first and the new
/// velocities drive the pose update. Attitude is propagated on the rotation
/// matrix and converted back to wrapped Euler angles.
inline RigidBodyState step_body(const RigidBodyState& state, const MassProperties& mass,
                                std::span<const AppliedLoad> loads, double dt) {
  if (!(dt > 0.0)) throw ContractError("step_body: dt must be positive");
  if (!mass.valid()) throw ContractError("step_body: invalid mass properties");

  const NetLoad net = accumulate(loads);
  const RotationMatrix body_to_world = body_to_ground(state.orientation);

  RigidBodyState next = state;

  Vec3 accel = (body_to_world * net.force) / mass.mass;
  accel.z() += -kGravity;
  next.velocity = state.velocity + accel * dt;
  next.position = state.position + next.velocity * dt;

  // Gyroscopic term at the implicit midpoint, solved by fixed-point iteration.
  // Torque-free spin then keeps its kinetic energy.
  const Vec3& w = state.angular_velocity;
  Vec3 w_next = w;
  for (int i = 0; i < kGyroIterations; ++i) {
    const Vec3 mid = 0.5 * (w + w_next);
    const Vec3 gyro = mid.cross(mass.inertia.cwiseProduct(mid));
    const Vec3 candidate = w + (net.torque - gyro).cwiseQuotient(mass.inertia) * dt;
    const double change = (candidate - w_next).lpNorm<Eigen::Infinity>();
    w_next = candidate;
    if (change <= 1e-15 * (1.0 + w_next.lpNorm<Eigen::Infinity>())) break;
  }
  next.angular_velocity = w_next;

  const double rate = next.angular_velocity.norm();
  if (rate > 0.0) {
    const RotationMatrix delta = rodrigues(next.angular_velocity / rate, rate * dt);
    next.orientation = euler_from_ground_to_body((body_to_world * delta).transpose());
  }

  if (!next.finite()) throw SimulationDiverged("non-finite rigid-body state");
  return next;
}

struct GroundContact {
  RigidBodyState state;
  bool contacted = false;
  double impact_speed = 0.0;
};

/// Sphere against the plane z = 0. Penetration clamps the height and removes
/// any downward velocity; nothing else is resolved.
inline GroundContact resolve_ground_contact(const RigidBodyState& state, double contact_radius) {
  if (!(contact_radius > 0.0)) throw ContractError("contact radius must be positive");
  GroundContact out{state, false, 0.0};
  if (state.position.z() < contact_radius) {
    out.contacted = true;
    out.impact_speed = state.velocity.norm();
    out.state.position.z() = contact_radius;
    if (out.state.velocity.z() < 0.0) out.state.velocity.z() = 0.0;
  }
  return out;
}

using CollisionPair = std::pair<std::size_t, std::size_t>;

inline std::vector<CollisionPair> detect_collisions(std::span<const RigidBodyState> states,
                                                    std::span<const double> radii) {
  if (states.size() != radii.size()) {
    throw ContractError("detect_collisions: states and radii differ in length");
  }
  std::vector<CollisionPair> pairs;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if ((states[i].position - states[j].position).norm() < radii[i] + radii[j]) {
        pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

}  // namespace flyt
