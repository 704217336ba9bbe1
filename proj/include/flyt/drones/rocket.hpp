#pragma once

// Rocket first stage: one gimballed booster and four fins near the top.
// Setpoint (7): [fin_x, fin_y, fin_cyclic, ignition, throttle, gimbal_a, gimbal_b].
// Ignition is on while its channel exceeds 0.5; throttle is in [0, 1].

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "flyt/components/booster.hpp"
#include "flyt/components/gimbal.hpp"
#include "flyt/components/lifting_surface.hpp"
#include "flyt/drones/drone.hpp"

namespace flyt {

class Rocket : public Drone {
 public:
  // Fins on the +x/-x arms deflect in the X plane, +y/-y arms in the Y plane.
  static constexpr std::array<const char*, 4> kFinNames{"fin_pos_x", "fin_neg_x", "fin_pos_y", "fin_neg_y"};

  explicit Rocket(DroneConfig config) : Drone(std::move(config)), gimbal_(gimbal_params(config_)) {
    if (config_.kind != "rocket") throw ConfigError(config_.name + ": not a rocket config");
    const ComponentSpec* booster = config_.find("booster");
    if (!booster || !std::holds_alternative<BoosterParams>(booster->params)) {
      throw ConfigError(config_.name + ": missing booster");
    }
    booster_ = std::get<BoosterParams>(booster->params);
    add_point_mass(booster->mass, booster_.mount_point);
    for (const char* name : kFinNames) {
      const ComponentSpec* spec = config_.find(name);
      if (!spec || !std::holds_alternative<SurfaceParams>(spec->params)) {
        throw ConfigError(config_.name + ": missing fin '" + name + "'");
      }
      fins_.emplace_back(std::get<SurfaceParams>(spec->params));
      add_point_mass(spec->mass, fins_.back().params().mount_point);
    }
    booster_state_.fuel = booster_.fuel_max;
    init_setpoint(FlightMode::kRaw, Setpoint(7, 0.0));
  }

  std::size_t setpoint_size() const override { return 7; }

  /// Dry mass plus fuel; the tank adds its scaled inertia and a parallel-axis
  /// term at the tank point.
  MassProperties mass_properties() const override {
    const BoosterOutputs out = booster_outputs(booster_state_, booster_);
    return {config_.base.mass + component_mass_ + out.fuel_mass,
            config_.base.inertia + component_inertia_ + out.fuel_inertia +
                point_inertia(out.fuel_mass, out.tank_point)};
  }

  /// Fin deflections, fuel fraction, lit flag, duty cycle, gimbal angles (normalized).
  std::vector<double> aux_state() const override {
    std::vector<double> out;
    for (std::size_t i = 0; i < fins_.size(); ++i) {
      out.push_back(fin_states_[i].deflection / fins_[i].params().max_deflection);
    }
    out.push_back(booster_state_.fuel / booster_.fuel_max);
    out.push_back(booster_state_.lit ? 1.0 : 0.0);
    out.push_back(booster_state_.duty);
    out.push_back(gimbal_state_.angle_a / gimbal_.params().limit_a);
    out.push_back(gimbal_state_.angle_b / gimbal_.params().limit_b);
    return out;
  }

  const BoosterParams& booster() const { return booster_; }
  const BoosterState& booster_state() const { return booster_state_; }
  void set_fuel(double kg) { booster_state_.fuel = std::clamp(kg, 0.0, booster_.fuel_max); }
  const Gimbal& gimbal() const { return gimbal_; }
  const GimbalState& gimbal_state() const { return gimbal_state_; }
  const std::vector<LiftingSurface>& fins() const { return fins_; }

  /// Thrust direction in the body frame after gimballing.
  Vec3 thrust_direction() const { return gimbal_.rotation(gimbal_state_) * booster_.thrust_axis; }

  void reset() override {
    Drone::reset();
    booster_state_ = {};
    booster_state_.fuel = booster_.fuel_max;
    gimbal_state_ = {};
    fin_states_ = {};
    fin_commands_ = {};
    ignition_ = false;
    throttle_ = 0.0;
    gimbal_commands_ = {};
    init_setpoint(FlightMode::kRaw, Setpoint(7, 0.0));
  }

 protected:
  void compute_commands(double) override {
    const double fx = setpoint_[0], fy = setpoint_[1], cyclic = setpoint_[2];
    fin_commands_ = {std::clamp(fx + cyclic, -1.0, 1.0), std::clamp(fx - cyclic, -1.0, 1.0),
                     std::clamp(fy - cyclic, -1.0, 1.0), std::clamp(fy + cyclic, -1.0, 1.0)};
    ignition_ = setpoint_[3] > 0.5;
    throttle_ = std::clamp(setpoint_[4], 0.0, 1.0);
    gimbal_commands_ = {std::clamp(setpoint_[5], -1.0, 1.0), std::clamp(setpoint_[6], -1.0, 1.0)};
  }

  void zero_commands() override {
    fin_commands_ = {};
    ignition_ = false;
    throttle_ = 0.0;
    gimbal_commands_ = {};
  }

  std::vector<AppliedLoad> step_actuators(double rate, NoiseSource* noise) override {
    std::vector<AppliedLoad> loads;
    loads.reserve(fins_.size() + 1);

    booster_state_ = booster_step(booster_state_, booster_, ignition_, throttle_, rate, draw(noise)).state;
    gimbal_state_ = gimbal_step(gimbal_state_, gimbal_.params(), gimbal_commands_[0], gimbal_commands_[1], rate).state;
    loads.push_back(booster_outputs(booster_state_, booster_, thrust_direction()).load);

    const Vec3 body_velocity = state_.body_velocity();
    for (std::size_t i = 0; i < fins_.size(); ++i) {
      const SurfaceParams& p = fins_[i].params();
      fin_states_[i] = surface_step(fin_states_[i], p, fin_commands_[i], rate).state;
      const Vec3 local_velocity = body_velocity + state_.angular_velocity.cross(p.mount_point);
      loads.push_back(fins_[i].loads(fin_states_[i], -local_velocity));
    }
    return loads;
  }

 private:
  static GimbalParams gimbal_params(const DroneConfig& cfg) {
    const ComponentSpec* spec = cfg.find("gimbal");
    if (!spec || !std::holds_alternative<GimbalParams>(spec->params)) {
      throw ConfigError(cfg.name + ": missing gimbal");
    }
    return std::get<GimbalParams>(spec->params);
  }

  void add_point_mass(double m, const Vec3& r) {
    component_mass_ += m;
    component_inertia_ += point_inertia(m, r);
  }

  Gimbal gimbal_;
  BoosterParams booster_;
  BoosterState booster_state_;
  GimbalState gimbal_state_;
  std::vector<LiftingSurface> fins_;
  std::array<SurfaceState, 4> fin_states_{};
  std::array<double, 4> fin_commands_{};
  bool ignition_ = false;
  double throttle_ = 0.0;
  std::array<double, 2> gimbal_commands_{};
  double component_mass_ = 0.0;
  Vec3 component_inertia_ = Vec3::Zero();
};

}  // namespace flyt
