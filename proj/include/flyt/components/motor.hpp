#pragma once

// Brushless motor and propeller: first-order RPM response with multiplicative
// noise, thrust and drag torque quadratic in RPM.

#include <cmath>

#include "flyt/components/first_order.hpp"
#include "flyt/frames.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

struct MotorParams {
  double tau = 0.01;              // ramp time constant, s
  double max_rpm = 1000.0;        // k_omega
  double noise_std = 0.0;         // sigma_m
  double thrust_coef = 1e-6;      // k_F, N / RPM^2
  double torque_coef = 1e-8;      // k_T, N m / RPM^2
  Vec3 thrust_axis = Vec3::UnitZ();
  double rotation_sign = 1.0;     // +1 or -1, direction of the reaction torque
  Vec3 mount_point = Vec3::Zero();
};

struct MotorState {
  double rpm = 0.0;
};

/// Advances the RPM by one physics tick. `noise` is a standard-normal draw
/// supplied by the caller. Negative throttle spins the motor in reverse.
inline Stepped<MotorState> motor_step(const MotorState& s, const MotorParams& p, double throttle,
                                      double physics_rate, double noise) {
  require_stable_lag(p.tau, physics_rate, "motor_step");
  const auto [command, saturated] = clamp_command(throttle, -1.0, 1.0);
  const double filtered = first_order_step(s.rpm, command * p.max_rpm, p.tau, physics_rate);
  return {{filtered * (1.0 + p.noise_std * s.rpm * noise)}, saturated};
}

inline AppliedLoad motor_loads(const MotorState& s, const MotorParams& p) {
  const double signed_sq = s.rpm * std::abs(s.rpm);
  AppliedLoad load;
  load.force = p.thrust_coef * signed_sq * p.thrust_axis;
  load.torque = p.rotation_sign * p.torque_coef * signed_sq * p.thrust_axis;
  load.point = p.mount_point;
  return load;
}

}  // namespace flyt
