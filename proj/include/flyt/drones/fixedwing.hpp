#pragma once

// Tube-and-wing aircraft: main wing, two ailerons, horizontal and vertical
// tail, one pusher/tractor motor. Setpoint: [aileron, elevator, rudder,
// throttle]; surfaces in [-1, 1], throttle in [0, 1].

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "flyt/components/lifting_surface.hpp"
#include "flyt/components/motor.hpp"
#include "flyt/drones/drone.hpp"

namespace flyt {

class Fixedwing : public Drone {
 public:
  static constexpr std::array<const char*, 5> kSurfaceNames{"main_wing", "left_aileron", "right_aileron",
                                                            "horizontal_tail", "vertical_tail"};

  explicit Fixedwing(DroneConfig config) : Drone(std::move(config)) {
    if (config_.kind != "fixedwing") throw ConfigError(config_.name + ": not a fixedwing config");
    for (const char* name : kSurfaceNames) {
      const ComponentSpec* spec = config_.find(name);
      if (!spec || !std::holds_alternative<SurfaceParams>(spec->params)) {
        throw ConfigError(config_.name + ": missing lifting surface '" + name + "'");
      }
      surfaces_.emplace_back(std::get<SurfaceParams>(spec->params));
      add_point_mass(spec->mass, surfaces_.back().params().mount_point);
    }
    const ComponentSpec* motor = config_.find("motor");
    if (!motor || !std::holds_alternative<MotorParams>(motor->params)) {
      throw ConfigError(config_.name + ": missing motor");
    }
    motor_ = std::get<MotorParams>(motor->params);
    add_point_mass(motor->mass, motor_.mount_point);
    init_setpoint(FlightMode::kRaw, Setpoint(4, 0.0));
  }

  std::size_t setpoint_size() const override { return 4; }

  MassProperties mass_properties() const override {
    return {config_.base.mass + component_mass_, config_.base.inertia + component_inertia_};
  }

  /// Normalized flap deflections of the four flapped surfaces, then motor RPM.
  std::vector<double> aux_state() const override {
    std::vector<double> out;
    for (std::size_t i = 1; i < surfaces_.size(); ++i) {
      out.push_back(surface_states_[i].deflection / surfaces_[i].params().max_deflection);
    }
    out.push_back(motor_state_.rpm / motor_.max_rpm);
    return out;
  }

  const std::vector<LiftingSurface>& surfaces() const { return surfaces_; }
  const std::array<SurfaceState, 5>& surface_states() const { return surface_states_; }
  const MotorParams& motor() const { return motor_; }
  const MotorState& motor_state() const { return motor_state_; }

  void reset() override {
    Drone::reset();
    surface_states_ = {};
    motor_state_ = {};
    commands_ = {};
    throttle_ = 0.0;
    init_setpoint(FlightMode::kRaw, Setpoint(4, 0.0));
  }

 protected:
  void compute_commands(double) override {
    const double aileron = setpoint_[0];
    commands_ = {0.0, aileron, -aileron, setpoint_[1], setpoint_[2]};
    throttle_ = std::clamp(setpoint_[3], 0.0, 1.0);
  }

  void zero_commands() override {
    commands_ = {};
    throttle_ = 0.0;
  }

  std::vector<AppliedLoad> step_actuators(double rate, NoiseSource* noise) override {
    std::vector<AppliedLoad> loads;
    loads.reserve(surfaces_.size() + 1);
    const Vec3 body_velocity = state_.body_velocity();
    for (std::size_t i = 0; i < surfaces_.size(); ++i) {
      const SurfaceParams& p = surfaces_[i].params();
      if (p.max_deflection > 0.0) {
        surface_states_[i] = surface_step(surface_states_[i], p, commands_[i], rate).state;
      }
      const Vec3 local_velocity = body_velocity + state_.angular_velocity.cross(p.mount_point);
      loads.push_back(surfaces_[i].loads(surface_states_[i], -local_velocity));
    }
    motor_state_ = motor_step(motor_state_, motor_, throttle_, rate, draw(noise)).state;
    loads.push_back(motor_loads(motor_state_, motor_));
    return loads;
  }

 private:
  void add_point_mass(double m, const Vec3& r) {
    component_mass_ += m;
    component_inertia_ += point_inertia(m, r);
  }

  std::vector<LiftingSurface> surfaces_;
  std::array<SurfaceState, 5> surface_states_{};
  std::array<double, 5> commands_{};
  MotorParams motor_;
  MotorState motor_state_;
  double throttle_ = 0.0;
  double component_mass_ = 0.0;
  Vec3 component_inertia_ = Vec3::Zero();
};

}  // namespace flyt
