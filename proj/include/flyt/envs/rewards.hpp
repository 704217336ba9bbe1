#pragma once

// Per-step rewards for the shipped tasks. Each function is pure so the
// environments and the tests share one definition.

#include <cmath>

#include "flyt/rigid_body.hpp"

namespace flyt {

inline constexpr double kCrashPenalty = -100.0;
inline constexpr double kWaypointBonus = 100.0;
inline constexpr double kSparseStepPenalty = -0.1;

/// Dense: negative tilt magnitude plus distance from (0, 0, 1).
inline double hover_reward(const RigidBodyState& s, bool crashed, bool sparse) {
  if (crashed) return kCrashPenalty;
  if (sparse) return kSparseStepPenalty;
  const double tilt = std::hypot(s.orientation.pitch, s.orientation.roll);
  const double offset = (s.position - Vec3(0.0, 0.0, 1.0)).norm();
  return -tilt - offset;
}

struct WaypointCoefficients {
  double c_a = 0.1;
  double c_b = 3.0;
};

enum class WaypointBranch { kCrash, kReached, kClosing, kOtherwise, kSparseIdle };

/// The reach check runs before either distance-shaped branch, so those
/// branches only ever see delta >= goal radius.
inline WaypointBranch waypoint_branch(double delta_rate, bool reached, bool crashed, bool sparse) {
  if (crashed) return WaypointBranch::kCrash;
  if (reached) return WaypointBranch::kReached;
  if (sparse) return WaypointBranch::kSparseIdle;
  return delta_rate < 0.0 ? WaypointBranch::kClosing : WaypointBranch::kOtherwise;
}

/// delta: distance to the current target, delta_rate: its time derivative.
inline double waypoint_reward(double delta, double delta_rate, bool reached, bool crashed, bool sparse,
                              const WaypointCoefficients& k) {
  switch (waypoint_branch(delta_rate, reached, crashed, sparse)) {
    case WaypointBranch::kCrash: return kCrashPenalty;
    case WaypointBranch::kReached: return kWaypointBonus;
    case WaypointBranch::kSparseIdle: return 0.0;
    case WaypointBranch::kClosing: return k.c_a / delta - k.c_b * delta_rate;
    case WaypointBranch::kOtherwise: break;
  }
  return 1.0 / delta;
}

enum class PadOutcome { kNone, kFatal, kSafe };

inline constexpr double kPadFatal = -20.0;
inline constexpr double kPadSafe = 100.0;

struct RocketReward {
  double distance = 0.0;  // -0.2 d_pad
  double velocity = 0.0;  // -v / d_pad^2
  double pad = 0.0;       // landing outcome on the pad
  double ground = 0.0;    // contact anywhere else

  double total() const { return distance + velocity + pad + ground; }
};

/// d_pad: distance from the body origin to the pad centre, speed: |v|.
/// A pad outcome takes precedence over the off-pad ground term.
inline RocketReward rocket_landing_reward(double d_pad, double speed, PadOutcome pad, bool off_pad_ground,
                                          bool sparse) {
  RocketReward r;
  if (!sparse) {
    r.distance = -0.2 * d_pad;
    r.velocity = -speed / (d_pad * d_pad);
  }
  if (pad == PadOutcome::kFatal) {
    r.pad = kPadFatal;
  } else if (pad == PadOutcome::kSafe) {
    r.pad = kPadSafe;
  } else if (off_pad_ground) {
    r.ground = kCrashPenalty;
  }
  return r;
}

}  // namespace flyt
