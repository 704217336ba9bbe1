#pragma once

// Shipped vehicles. configs/*.json holds the same data in file form.

#include <cmath>
#include <memory>
#include <string>

#include "flyt/config.hpp"
#include "flyt/drones/fixedwing.hpp"
#include "flyt/drones/quadx.hpp"
#include "flyt/drones/rocket.hpp"

namespace flyt {

namespace presets {

inline MotorParams quad_motor(double x, double y, double sign, double max_rpm, double thrust_coef,
                              double torque_coef, double tau, double noise_std) {
  MotorParams m;
  m.tau = tau;
  m.max_rpm = max_rpm;
  m.noise_std = noise_std;
  m.thrust_coef = thrust_coef;
  m.torque_coef = torque_coef;
  m.thrust_axis = Vec3::UnitZ();
  m.rotation_sign = sign;
  m.mount_point = Vec3(x, y, 0.0);
  return m;
}

inline std::vector<ComponentSpec> quad_motors(double arm, double max_rpm, double thrust_coef, double torque_coef,
                                              double tau, double noise_std) {
  const double d = arm / std::sqrt(2.0);
  return {{"motor_front_left", quad_motor(d, d, 1.0, max_rpm, thrust_coef, torque_coef, tau, noise_std)},
          {"motor_front_right", quad_motor(d, -d, -1.0, max_rpm, thrust_coef, torque_coef, tau, noise_std)},
          {"motor_rear_left", quad_motor(-d, d, -1.0, max_rpm, thrust_coef, torque_coef, tau, noise_std)},
          {"motor_rear_right", quad_motor(-d, -d, 1.0, max_rpm, thrust_coef, torque_coef, tau, noise_std)}};
}

inline PidGains gains(Vec3 kp, Vec3 ki, Vec3 kd, Vec3 output_limit, Vec3 integral_limit) {
  return {kp, ki, kd, output_limit, integral_limit};
}

}  // namespace presets

/// Crazyflie 2.x airframe with motor thrust scaled up to an 8:1
/// thrust-to-weight ratio. Torque coefficient is scaled by the same factor.
inline DroneConfig crazyflie_config() {
  constexpr double kMass = 0.027;
  constexpr double kMaxRpm = 21702.0;
  constexpr double kSysIdThrust = 3.16e-10;  // N / RPM^2
  constexpr double kSysIdTorque = 7.94e-12;  // N m / RPM^2
  constexpr double kThrustToWeight = 8.0;
  const double scale = kThrustToWeight * kMass * kGravity / (4.0 * kSysIdThrust * kMaxRpm * kMaxRpm);

  DroneConfig cfg;
  cfg.name = "crazyflie";
  cfg.kind = "quadx";
  cfg.base = {kMass, Vec3(1.4e-5, 1.4e-5, 2.17e-5)};
  cfg.collision_radius = 0.06;
  cfg.components = presets::quad_motors(0.045, kMaxRpm, kSysIdThrust * scale, kSysIdTorque * scale, 0.01, 2.0e-7);

  ControllerConfig ctl;
  ctl.rate = presets::gains({0.008, 0.008, 0.01}, {0.01, 0.01, 0.01}, {0.0, 0.0, 0.0}, {0.25, 0.25, 0.25},
                            {0.05, 0.05, 0.05});
  ctl.attitude = presets::gains({10.0, 10.0, 5.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {6.0, 6.0, 3.0},
                                {1.0, 1.0, 1.0});
  ctl.velocity = presets::gains({3.0, 3.0, 0.04}, {0.3, 0.3, 0.04}, {0.0, 0.0, 0.0}, {8.0, 8.0, 0.3},
                                {2.0, 2.0, 0.1});
  ctl.position = presets::gains({1.2, 1.2, 1.2}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {5.0, 5.0, 3.0},
                                {1.0, 1.0, 1.0});
  ctl.hover_thrust = std::sqrt(1.0 / kThrustToWeight);
  ctl.max_tilt = 0.7;
  ctl.max_climb_rate = 3.0;
  ctl.max_lateral_speed = 5.0;
  cfg.controller = ctl;
  cfg.start.position = Vec3(0.0, 0.0, 1.0);
  return cfg;
}

/// Generic 1 kg F450-class quadrotor.
inline DroneConfig generic_quadx_config() {
  constexpr double kMass = 1.0;
  constexpr double kMaxRpm = 9000.0;
  constexpr double kThrustToWeight = 3.0;
  const double thrust_coef = kThrustToWeight * kMass * kGravity / (4.0 * kMaxRpm * kMaxRpm);

  DroneConfig cfg;
  cfg.name = "generic_quadx";
  cfg.kind = "quadx";
  cfg.base = {kMass, Vec3(0.0123, 0.0123, 0.0224)};
  cfg.collision_radius = 0.3;
  cfg.components = presets::quad_motors(0.225, kMaxRpm, thrust_coef, 0.016 * thrust_coef, 0.02, 5.0e-7);

  ControllerConfig ctl;
  ctl.rate = presets::gains({0.06, 0.06, 0.3}, {0.05, 0.05, 0.1}, {0.0, 0.0, 0.0}, {0.3, 0.3, 0.2},
                            {0.05, 0.05, 0.05});
  ctl.attitude = presets::gains({8.0, 8.0, 4.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {4.0, 4.0, 2.0},
                                {1.0, 1.0, 1.0});
  ctl.velocity = presets::gains({2.5, 2.5, 0.06}, {0.4, 0.4, 0.06}, {0.0, 0.0, 0.0}, {6.0, 6.0, 0.3},
                                {2.0, 2.0, 0.1});
  ctl.position = presets::gains({1.5, 1.5, 1.5}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {5.0, 5.0, 3.0},
                                {1.0, 1.0, 1.0});
  ctl.hover_thrust = std::sqrt(1.0 / kThrustToWeight);
  ctl.max_tilt = 0.6;
  ctl.max_climb_rate = 3.0;
  ctl.max_lateral_speed = 5.0;
  cfg.controller = ctl;
  cfg.start.position = Vec3(0.0, 0.0, 1.0);
  return cfg;
}

namespace presets {

inline SurfaceParams wing_surface(const Vec3& mount, double area, double aspect_ratio, double zero_lift_deg,
                                  double flap_ratio, double max_deflection_deg) {
  SurfaceParams s;
  s.zero_lift_aoa = deg_to_rad(zero_lift_deg);
  s.stall_aoa_pos = deg_to_rad(zero_lift_deg + 16.0);
  s.stall_aoa_neg = deg_to_rad(zero_lift_deg - 14.0);
  s.cd0 = 0.02;
  s.cl_alpha = 2.0 * kPi * aspect_ratio / (aspect_ratio + 2.0);
  s.viscosity_correction = 0.9;
  s.area = area;
  s.span = std::sqrt(aspect_ratio * area);
  s.mount_point = mount;
  s.flap_ratio = flap_ratio;
  s.max_deflection = deg_to_rad(max_deflection_deg);
  s.tau = 0.05;
  return s;
}

}  // namespace presets

/// 2.4 m span tube-and-wing, 2.35 kg, 0.8 thrust-to-weight.
inline DroneConfig fixedwing_config() {
  constexpr double kFuselageMass = 1.0;
  constexpr double kLength = 1.55;
  constexpr double kSpan = 2.4;
  constexpr double kWingMass = 0.5;
  constexpr double kChord = 0.22;
  constexpr double kTotalMass = 2.35;
  constexpr double kMaxRpm = 8000.0;

  DroneConfig cfg;
  cfg.name = "fixedwing";
  cfg.kind = "fixedwing";
  // Fuselage as a slender rod plus the main wing as a thin plate, both centred on the origin.
  const Vec3 fuselage(0.00125, kFuselageMass * kLength * kLength / 12.0, kFuselageMass * kLength * kLength / 12.0);
  const Vec3 wing(kWingMass * kSpan * kSpan / 12.0, kWingMass * kChord * kChord / 12.0,
                  kWingMass * (kSpan * kSpan + kChord * kChord) / 12.0);
  cfg.base = {kFuselageMass + kWingMass, fuselage + wing};
  cfg.collision_radius = 0.3;

  const double wing_area = 1.8 * kChord;
  const double aileron_area = 0.3 * kChord;
  const double aspect = kSpan * kSpan / (wing_area + 2.0 * aileron_area);

  SurfaceParams v_tail = presets::wing_surface({-0.85, 0.0, 0.12}, 0.06, 1.5, 0.0, 0.4, 20.0);
  v_tail.normal_dir = Vec3::UnitY();

  MotorParams motor;
  motor.tau = 0.05;
  motor.max_rpm = kMaxRpm;
  motor.noise_std = 1e-6;
  motor.thrust_coef = 0.8 * kTotalMass * kGravity / (kMaxRpm * kMaxRpm);
  motor.torque_coef = 0.01 * motor.thrust_coef;
  motor.thrust_axis = Vec3::UnitX();
  motor.rotation_sign = 1.0;
  motor.mount_point = Vec3(0.55, 0.0, 0.0);

  // Remaining 0.85 kg sits in the flapped surfaces.
  cfg.components = {
      {"main_wing", presets::wing_surface({0.0, 0.0, 0.0}, wing_area, aspect, -2.0, 0.0, 0.0), 0.0},
      {"left_aileron", presets::wing_surface({0.0, 1.05, 0.0}, aileron_area, aspect, -2.0, 0.3, 30.0), 0.3},
      {"right_aileron", presets::wing_surface({0.0, -1.05, 0.0}, aileron_area, aspect, -2.0, 0.3, 30.0), 0.3},
      {"horizontal_tail", presets::wing_surface({-0.85, 0.0, 0.0}, 0.1, 2.5, 0.0, 0.4, 20.0), 0.15},
      {"vertical_tail", v_tail, 0.1},
      {"motor", motor, 0.0},
  };
  cfg.start.position = Vec3(0.0, 0.0, 3.0);
  cfg.start.velocity = Vec3(20.0, 0.0, 0.0);
  return cfg;
}

/// 1:10 scale orbital-class first stage with a single gimballed engine and
/// four control fins.
inline DroneConfig rocket_config() {
  constexpr double kDryMass = 25.6;
  constexpr double kLength = 4.7;
  constexpr double kRadius = 0.185;

  DroneConfig cfg;
  cfg.name = "rocket";
  cfg.kind = "rocket";
  cfg.base = {kDryMass, Vec3(kDryMass * kLength * kLength / 12.0, kDryMass * kLength * kLength / 12.0,
                             0.5 * kDryMass * kRadius * kRadius)};
  cfg.collision_radius = 2.35;

  BoosterParams booster;
  booster.fuel_max = 395.7;
  booster.fuel_rate = 0.3;
  booster.inertia_max = Vec3(404.0, 404.0, 6.77);
  booster.thrust_max = 845.0;
  booster.thrust_min = 0.4 * booster.thrust_max;
  booster.reignitable = true;
  // Spool-up completes within one 240 Hz physics tick.
  booster.tau = 1.0 / 240.0;
  booster.noise_std = 0.0;
  booster.thrust_axis = Vec3::UnitZ();
  booster.mount_point = Vec3(0.0, 0.0, -2.2);
  booster.tank_point = Vec3(0.0, 0.0, -0.5);

  GimbalParams gimbal;
  gimbal.axis_a = Vec3::UnitX();
  gimbal.axis_b = Vec3::UnitY();
  gimbal.limit_a = deg_to_rad(5.0);
  gimbal.limit_b = deg_to_rad(5.0);
  gimbal.tau = 0.05;

  auto fin = [](const Vec3& mount, const Vec3& normal) {
    SurfaceParams s;
    s.zero_lift_aoa = 0.0;
    s.stall_aoa_pos = deg_to_rad(10.0);
    s.stall_aoa_neg = deg_to_rad(-10.0);
    s.cd0 = 0.05;
    s.cl_alpha = 2.0 * kPi / 3.0;
    s.viscosity_correction = 0.8;
    s.area = 0.04;
    s.span = 0.2;
    s.chord_dir = -Vec3::UnitZ();
    s.normal_dir = normal;
    s.mount_point = mount;
    s.flap_ratio = 1.0;
    s.max_deflection = deg_to_rad(30.0);
    s.tau = 0.05;
    s.flap_effectiveness = 1.0;
    return s;
  };

  cfg.components = {
      {"booster", booster, 0.0},
      {"gimbal", gimbal, 0.0},
      {"fin_pos_x", fin({0.2, 0.0, 2.1}, Vec3::UnitY()), 0.0},
      {"fin_neg_x", fin({-0.2, 0.0, 2.1}, Vec3::UnitY()), 0.0},
      {"fin_pos_y", fin({0.0, 0.2, 2.1}, Vec3::UnitX()), 0.0},
      {"fin_neg_y", fin({0.0, -0.2, 2.1}, Vec3::UnitX()), 0.0},
  };
  cfg.start.position = Vec3(0.0, 0.0, 450.0);
  return cfg;
}

inline DroneConfig preset_config(const std::string& name) {
  if (name == "crazyflie") return crazyflie_config();
  if (name == "generic_quadx") return generic_quadx_config();
  if (name == "fixedwing") return fixedwing_config();
  if (name == "rocket") return rocket_config();
  throw LookupError("unknown preset '" + name + "' (crazyflie, generic_quadx, fixedwing, rocket)");
}

inline std::unique_ptr<Drone> assemble_quadx(const DroneConfig& cfg) { return std::make_unique<QuadX>(cfg); }
inline std::unique_ptr<Drone> assemble_fixedwing(const DroneConfig& cfg) { return std::make_unique<Fixedwing>(cfg); }
inline std::unique_ptr<Drone> assemble_rocket(const DroneConfig& cfg) { return std::make_unique<Rocket>(cfg); }

/// Builds the vehicle named by `cfg.kind`.
inline std::unique_ptr<Drone> make_drone(const DroneConfig& cfg) {
  if (cfg.kind == "quadx") return assemble_quadx(cfg);
  if (cfg.kind == "fixedwing") return assemble_fixedwing(cfg);
  if (cfg.kind == "rocket") return assemble_rocket(cfg);
  throw ConfigError("unknown vehicle kind '" + cfg.kind + "'");
}

}  // namespace flyt
