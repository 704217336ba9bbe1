#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flyt/errors.hpp"
#include "flyt/frames.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

struct Observation {
  /// [body rates, Euler angles, body velocity, ground position, previous action, aux]
  std::vector<double> attitude;
  /// Remaining waypoints relative to the vehicle, body frame, in visiting order.
  std::vector<Vec3> targets;

  bool operator==(const Observation&) const = default;

  /// Attitude block followed by the target deltas.
  std::vector<double> flatten() const {
    std::vector<double> out = attitude;
    for (const Vec3& t : targets) out.insert(out.end(), {t.x(), t.y(), t.z()});
    return out;
  }

  /// Fixed-shape target block: `capacity` rows of xyz, zero past targets.size().
  std::vector<double> padded_targets(std::size_t capacity) const {
    if (targets.size() > capacity) throw ContractError("padded_targets: capacity below target count");
    std::vector<double> out(3 * capacity, 0.0);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (int k = 0; k < 3; ++k) out[3 * i + k] = targets[i][k];
    }
    return out;
  }
};

inline Observation assemble_observation(const RigidBodyState& s, std::span<const double> previous_action,
                                        std::span<const double> aux, std::span<const Vec3> remaining) {
  Observation obs;
  const Vec3 v_body = s.body_velocity();
  obs.attitude.reserve(12 + previous_action.size() + aux.size());
  obs.attitude.insert(obs.attitude.end(), {s.angular_velocity.x(), s.angular_velocity.y(), s.angular_velocity.z(),
                                           s.orientation.roll, s.orientation.pitch, s.orientation.yaw, v_body.x(),
                                           v_body.y(), v_body.z(), s.position.x(), s.position.y(), s.position.z()});
  obs.attitude.insert(obs.attitude.end(), previous_action.begin(), previous_action.end());
  obs.attitude.insert(obs.attitude.end(), aux.begin(), aux.end());

  const RotationMatrix to_body = ground_to_body(s.orientation);
  obs.targets.reserve(remaining.size());
  for (const Vec3& wp : remaining) obs.targets.push_back(to_body * (wp - s.position));
  return obs;
}

}  // namespace flyt
