#pragma once

// The interface every vehicle exposes to the aviary.

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flyt/config.hpp"
#include "flyt/errors.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

/// QuadX setpoint interpretations. Other vehicles only accept kRaw.
enum class FlightMode : int {
  kRaw = -1,              // motor throttles
  kRates = 0,             // roll rate, pitch rate, yaw rate, thrust
  kAttitude = 1,          // roll, pitch, yaw, climb rate
  kVelocityYawRate = 2,   // vx, vy, yaw rate, climb rate
  kVelocityYaw = 3,       // vx, vy, yaw, climb rate
  kPositionYawRate = 4,   // x, y, yaw rate, z
  kPosition = 5,          // x, y, yaw, z
};

inline bool is_flight_mode(int m) { return m >= -1 && m <= 5; }

using Setpoint = std::vector<double>;

/// Standard-normal draws from a shared generator.
class NoiseSource {
 public:
  explicit NoiseSource(std::mt19937_64& rng) : rng_(&rng) {}
  double operator()() { return normal_(*rng_); }

 private:
  std::mt19937_64* rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

class Drone {
 public:
  explicit Drone(DroneConfig config) : config_(std::move(config)) { reset_state(); }
  virtual ~Drone() = default;

  Drone(const Drone&) = delete;
  Drone& operator=(const Drone&) = delete;

  const DroneConfig& config() const { return config_; }
  const std::string& kind() const { return config_.kind; }

  const RigidBodyState& state() const { return state_; }
  void set_state(const RigidBodyState& s) { state_ = s; }
  double collision_radius() const { return config_.collision_radius; }

  bool armed() const { return armed_; }
  void set_armed(bool armed) { armed_ = armed; }

  FlightMode mode() const { return mode_; }
  void set_mode(FlightMode mode) {
    if (!supports(mode)) {
      throw ContractError(config_.name + ": flight mode " + std::to_string(static_cast<int>(mode)) +
                          " not supported");
    }
    if (mode != mode_) on_mode_change();
    mode_ = mode;
  }

  const Setpoint& setpoint() const { return setpoint_; }
  void set_setpoint(std::span<const double> sp) {
    if (sp.size() != setpoint_size()) {
      throw ContractError(config_.name + ": setpoint has " + std::to_string(sp.size()) +
                          " entries, expected " + std::to_string(setpoint_size()));
    }
    for (double v : sp) {
      if (!std::isfinite(v)) throw ContractError(config_.name + ": setpoint contains a non-finite value");
    }
    setpoint_.assign(sp.begin(), sp.end());
  }

  /// Runs the onboard control law once; disarmed vehicles command nothing.
  void control_update(double dt) {
    if (armed_) {
      compute_commands(dt);
    } else {
      zero_commands();
    }
  }

  /// Steps actuators and integrates the body for one physics tick. Noise is
  /// drawn only while armed.
  void physics_update(double physics_rate, NoiseSource& noise) {
    std::vector<AppliedLoad> loads = step_actuators(physics_rate, armed_ ? &noise : nullptr);
    state_ = step_body(state_, mass_properties(), loads, 1.0 / physics_rate);
  }

  virtual std::size_t setpoint_size() const = 0;
  virtual bool supports(FlightMode mode) const { return mode == FlightMode::kRaw; }
  /// Current mass properties about the body origin.
  virtual MassProperties mass_properties() const = 0;
  /// Normalized actuator readings appended to observations.
  virtual std::vector<double> aux_state() const = 0;

  virtual void reset() {
    reset_state();
    armed_ = true;
    on_mode_change();
  }

 protected:
  virtual void compute_commands(double dt) = 0;
  virtual void zero_commands() = 0;
  virtual std::vector<AppliedLoad> step_actuators(double physics_rate, NoiseSource* noise) = 0;
  virtual void on_mode_change() {}

  static double draw(NoiseSource* noise) { return noise ? (*noise)() : 0.0; }

  /// Point-mass contributions of components to the diagonal inertia.
  static Vec3 point_inertia(double m, const Vec3& r) {
    return m * Vec3(r.y() * r.y() + r.z() * r.z(), r.x() * r.x() + r.z() * r.z(),
                    r.x() * r.x() + r.y() * r.y());
  }

  void init_setpoint(FlightMode mode, Setpoint sp) {
    mode_ = mode;
    setpoint_ = std::move(sp);
  }

  DroneConfig config_;
  RigidBodyState state_;
  FlightMode mode_ = FlightMode::kRaw;
  Setpoint setpoint_;
  bool armed_ = true;

 private:
  void reset_state() {
    state_ = RigidBodyState{};
    state_.position = config_.start.position;
    state_.orientation = wrap(config_.start.orientation);
    state_.velocity = config_.start.velocity;
  }
};

}  // namespace flyt
