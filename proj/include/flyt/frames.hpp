#pragma once

// ENU frame conventions. Ground frame: X east, Y north, Z up.
// Body frame: X forward, Y left, Z up.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "flyt/errors.hpp"

namespace flyt {

using Vec3 = Eigen::Vector3d;
using RotationMatrix = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

struct EulerAngles {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;

  friend bool operator==(const EulerAngles&, const EulerAngles&) = default;
};

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

inline bool all_finite(const EulerAngles& a) {
  return std::isfinite(a.roll) && std::isfinite(a.pitch) && std::isfinite(a.yaw);
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

inline EulerAngles wrap(const EulerAngles& a) {
  return {wrap_angle(a.roll), wrap_angle(a.pitch), wrap_angle(a.yaw)};
}

/// Rotation taking ground-frame vectors into the body frame: v_B = R * v_G.
/// Roll, pitch and yaw are applied as a Z-Y-X sequence. No special handling
/// near |pitch| = pi/2.
inline RotationMatrix ground_to_body(const EulerAngles& a) {
  const double cr = std::cos(a.roll), sr = std::sin(a.roll);
  const double cp = std::cos(a.pitch), sp = std::sin(a.pitch);
  const double cy = std::cos(a.yaw), sy = std::sin(a.yaw);

  RotationMatrix r;
  r << cp * cy, cp * sy, -sp,
      -sy * cr + cy * sp * sr, cy * cr + sy * sp * sr, cp * sr,
      sy * sr + cy * sp * cr, -cy * sr + sy * sp * cr, cp * cr;
  return r;
}

inline RotationMatrix body_to_ground(const EulerAngles& a) {
  return ground_to_body(a).transpose();
}

/// Recovers Euler angles from a ground-to-body rotation matrix.
inline EulerAngles euler_from_ground_to_body(const RotationMatrix& r) {
  const double s = std::clamp(-r(0, 2), -1.0, 1.0);
  return wrap(EulerAngles{std::atan2(r(1, 2), r(2, 2)), std::asin(s),
                          std::atan2(r(0, 1), r(0, 0))});
}

/// Cross-product (skew-symmetric) matrix of an axis.
inline Eigen::Matrix3d skew(const Vec3& u) {
  Eigen::Matrix3d w;
  w << 0.0, -u.z(), u.y(),
      u.z(), 0.0, -u.x(),
      -u.y(), u.x(), 0.0;
  return w;
}

inline void require_unit(const Vec3& axis, const char* what) {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-9) {
    throw ContractError(std::string(what) + " must be a unit vector");
  }
}

/// Rotation about a fixed axis with the skew matrix and its square
/// precomputed, so repeated evaluation only costs two sines.
class AxisRotation {
 public:
  AxisRotation() = default;

  explicit AxisRotation(const Vec3& axis) {
    require_unit(axis, "rotation axis");
    axis_ = axis;
    w_ = skew(axis);
    w2_ = w_ * w_;
  }

  /// R = I + sin(e) W + 2 sin^2(e/2) W^2. The half-angle form stays exact
  /// near multiples of 2 pi where 1 - cos(e) loses precision.
  RotationMatrix operator()(double angle) const {
    const double h = std::sin(0.5 * angle);
    return RotationMatrix::Identity() + std::sin(angle) * w_ + (2.0 * h * h) * w2_;
  }

  const Vec3& axis() const { return axis_; }
  const Eigen::Matrix3d& w() const { return w_; }

 private:
  Vec3 axis_ = Vec3::UnitZ();
  Eigen::Matrix3d w_ = skew(Vec3::UnitZ());
  Eigen::Matrix3d w2_ = w_ * w_;
};

inline RotationMatrix rodrigues(const Vec3& axis, double angle) {
  return AxisRotation(axis)(angle);
}

}  // namespace flyt
