#pragma once

// Two-axis servo gimbal producing a body-frame rotation matrix.

#include "flyt/components/first_order.hpp"
#include "flyt/frames.hpp"

namespace flyt {

struct GimbalParams {
  Vec3 axis_a = Vec3::UnitX();
  Vec3 axis_b = Vec3::UnitY();
  double limit_a = 0.1;  // rad
  double limit_b = 0.1;  // rad
  double tau = 0.05;     // s
};

struct GimbalState {
  double angle_a = 0.0;
  double angle_b = 0.0;
};

inline Stepped<GimbalState> gimbal_step(const GimbalState& s, const GimbalParams& p,
                                        double command_a, double command_b,
                                        double physics_rate) {
  require_stable_lag(p.tau, physics_rate, "gimbal_step");
  const auto a = clamp_command(command_a, -1.0, 1.0);
  const auto b = clamp_command(command_b, -1.0, 1.0);
  return {{first_order_step(s.angle_a, a.value * p.limit_a, p.tau, physics_rate),
           first_order_step(s.angle_b, b.value * p.limit_b, p.tau, physics_rate)},
          a.saturated || b.saturated};
}

/// Gimbal with its per-axis skew matrices computed once.
class Gimbal {
 public:
  explicit Gimbal(const GimbalParams& params)
      : params_(params), rot_a_(params.axis_a), rot_b_(params.axis_b) {}

  const GimbalParams& params() const { return params_; }

  RotationMatrix rotation(const GimbalState& s) const {
    return rot_a_(s.angle_a) * rot_b_(s.angle_b);
  }

 private:
  GimbalParams params_;
  AxisRotation rot_a_;
  AxisRotation rot_b_;
};

inline RotationMatrix gimbal_rotation(const GimbalState& s, const GimbalParams& p) {
  return Gimbal(p).rotation(s);
}

}  // namespace flyt
