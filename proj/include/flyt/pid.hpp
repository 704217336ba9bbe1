#pragma once

#include <algorithm>

#include "flyt/frames.hpp"

namespace flyt {

/// Per-axis gains and limits for one loop of a cascade.
struct PidGains {
  Vec3 kp = Vec3::Zero();
  Vec3 ki = Vec3::Zero();
  Vec3 kd = Vec3::Zero();
  Vec3 output_limit = Vec3::Constant(1.0);
  Vec3 integral_limit = Vec3::Constant(1.0);
};

/// Three independent PID channels. The integral is clamped to
/// +/- integral_limit and the output to +/- output_limit.
class PidStage {
 public:
  PidStage() = default;
  explicit PidStage(const PidGains& gains) : gains_(gains) {}

  Vec3 step(const Vec3& error, double dt) {
    integral_ = (integral_ + gains_.ki.cwiseProduct(error) * dt)
                    .cwiseMax(-gains_.integral_limit)
                    .cwiseMin(gains_.integral_limit);
    const Vec3 derivative = has_previous_ ? Vec3((error - previous_) / dt) : Vec3::Zero();
    previous_ = error;
    has_previous_ = true;
    const Vec3 out = gains_.kp.cwiseProduct(error) + integral_ + gains_.kd.cwiseProduct(derivative);
    return out.cwiseMax(-gains_.output_limit).cwiseMin(gains_.output_limit);
  }

  void reset() {
    integral_.setZero();
    previous_.setZero();
    has_previous_ = false;
  }

  const PidGains& gains() const { return gains_; }
  const Vec3& integral() const { return integral_; }

 private:
  PidGains gains_;
  Vec3 integral_ = Vec3::Zero();
  Vec3 previous_ = Vec3::Zero();
  bool has_previous_ = false;
};

}  // namespace flyt
