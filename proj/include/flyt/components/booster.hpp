#pragma once

// Fueled booster: ignition latch, duty-cycle lag with noise, fuel burn and a
// fuel tank whose inertia scales with the remaining fuel.

#include <algorithm>

#include "flyt/components/first_order.hpp"
#include "flyt/frames.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

struct BoosterParams {
  double fuel_max = 1.0;                 // m_b_max, kg
  double fuel_rate = 0.1;                // k_fr, kg/s burned at full duty
  Vec3 inertia_max = Vec3::Ones();       // fuel tank Jxx, Jyy, Jzz at full load
  double thrust_min = 0.0;               // N
  double thrust_max = 10.0;              // N
  bool reignitable = true;
  double tau = 0.05;                     // s
  double noise_std = 0.0;                // sigma_b
  Vec3 thrust_axis = Vec3::UnitZ();
  Vec3 mount_point = Vec3::Zero();
  Vec3 tank_point = Vec3::Zero();

  double min_duty() const { return thrust_min / thrust_max; }
};

struct BoosterState {
  double duty = 0.0;   // lambda in [0, 1]
  bool lit = false;
  double fuel = 0.0;   // kg

  friend bool operator==(const BoosterState&, const BoosterState&) = default;
};

/// Solid boosters latch once lit; reignitable ones follow the ignition input.
inline bool next_lit(bool reignitable, bool lit, bool ignition) {
  return (!reignitable && lit) || ignition;
}

/// One physics tick. While lit and fuelled the duty cycle tracks
/// min_duty + throttle * (1 - min_duty); otherwise it drops to zero.
inline Stepped<BoosterState> booster_step(const BoosterState& s, const BoosterParams& p,
                                          bool ignition, double throttle, double physics_rate,
                                          double noise) {
  require_stable_lag(p.tau, physics_rate, "booster_step");
  const auto [beta, saturated] = clamp_command(throttle, 0.0, 1.0);
  const double lambda_min = p.min_duty();

  BoosterState next;
  next.lit = next_lit(p.reignitable, s.lit, ignition);

  const bool burning = next.lit && s.fuel > 0.0;
  if (burning) {
    const double target = lambda_min + beta * (1.0 - lambda_min);
    const double filtered = first_order_step(s.duty, target, p.tau, physics_rate);
    next.duty = std::clamp(filtered * (1.0 + p.noise_std * s.duty * noise), 0.0, 1.0);
  }

  next.fuel = std::max(0.0, s.fuel - next.duty * p.fuel_rate / physics_rate);
  return {next, saturated};
}

struct BoosterOutputs {
  AppliedLoad load;
  double fuel_mass = 0.0;
  Vec3 fuel_inertia = Vec3::Zero();
  Vec3 tank_point = Vec3::Zero();
};

/// Thrust along the booster axis (no roll torque) and the current fuel-tank
/// mass properties. `axis` overrides the mounted thrust axis, e.g. when
/// gimballed.
inline BoosterOutputs booster_outputs(const BoosterState& s, const BoosterParams& p,
                                      const Vec3& axis) {
  BoosterOutputs out;
  out.load.force = s.duty * p.thrust_max * axis;
  out.load.point = p.mount_point;
  out.fuel_mass = s.fuel;
  out.fuel_inertia = (s.fuel / p.fuel_max) * p.inertia_max;
  out.tank_point = p.tank_point;
  return out;
}

inline BoosterOutputs booster_outputs(const BoosterState& s, const BoosterParams& p) {
  return booster_outputs(s, p, p.thrust_axis);
}

}  // namespace flyt
