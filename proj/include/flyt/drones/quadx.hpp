#pragma once

// Quad-X multirotor with a cascaded PID stack:
//   position -> velocity -> attitude -> body rate -> torque -> mixer.
//
// Motor order and spin:
//   0 front-left  (+x, +y)  +1      1 front-right (+x, -y)  -1
//   2 rear-left   (-x, +y)  -1      3 rear-right  (-x, -y)  +1

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "flyt/components/motor.hpp"
#include "flyt/drones/drone.hpp"
#include "flyt/pid.hpp"

namespace flyt {

/// [roll torque, pitch torque, yaw torque, thrust], normalized to throttle units.
using MotorCommands = std::array<double, 4>;
using Throttles = std::array<double, 4>;

/// X-configuration mixer. When a motor would leave [0, 1] the differential
/// part is scaled down uniformly, so torque ratios and collective thrust are
/// preserved where possible.
inline Throttles quadx_mix(const MotorCommands& cmd) {
  const double roll = cmd[0], pitch = cmd[1], yaw = cmd[2];
  const double thrust = std::clamp(cmd[3], 0.0, 1.0);
  const std::array<double, 4> diff{roll - pitch + yaw, -roll - pitch - yaw, roll + pitch - yaw,
                                   -roll + pitch + yaw};
  double scale = 1.0;
  for (double d : diff) {
    if (d > 0.0) scale = std::min(scale, (1.0 - thrust) / d);
    if (d < 0.0) scale = std::min(scale, thrust / -d);
  }
  Throttles out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = std::clamp(thrust + scale * diff[i], 0.0, 1.0);
  return out;
}

/// Stateful PID cascade for one QuadX.
class QuadXController {
 public:
  QuadXController() = default;
  explicit QuadXController(const ControllerConfig& cfg)
      : cfg_(cfg), rate_(cfg.rate), attitude_(cfg.attitude), velocity_(cfg.velocity), position_(cfg.position) {}

  void reset() {
    rate_.reset();
    attitude_.reset();
    velocity_.reset();
    position_.reset();
  }

  const ControllerConfig& config() const { return cfg_; }

  /// Runs the loops that `mode` requires, outermost first. Raw mode is
  /// handled by the caller and never reaches here.
  MotorCommands step(const RigidBodyState& s, FlightMode mode, const Setpoint& sp, double dt) {
    Vec3 rate_sp = Vec3::Zero();
    double thrust = 0.0;

    if (mode == FlightMode::kRates) {
      rate_sp = Vec3(sp[0], sp[1], sp[2]);
      thrust = sp[3];
    } else {
      double roll_sp = 0.0, pitch_sp = 0.0;
      Vec3 vel_err = Vec3::Zero();
      bool lateral_mode = false;
      double yaw_target = s.orientation.yaw;
      bool hold_yaw_angle = true;
      double yaw_rate_sp = 0.0;

      if (mode == FlightMode::kAttitude) {
        roll_sp = sp[0];
        pitch_sp = sp[1];
        yaw_target = sp[2];
        vel_err.z() = sp[3] - s.velocity.z();
      } else {
        Vec3 vel_sp;
        if (mode == FlightMode::kPosition || mode == FlightMode::kPositionYawRate) {
          const Vec3 err(sp[0] - s.position.x(), sp[1] - s.position.y(), sp[3] - s.position.z());
          vel_sp = position_.step(err, dt);
        } else {
          vel_sp = Vec3(sp[0], sp[1], sp[3]);
        }
        vel_sp.head<2>() = limit_norm(vel_sp.head<2>(), cfg_.max_lateral_speed);
        vel_sp.z() = std::clamp(vel_sp.z(), -cfg_.max_climb_rate, cfg_.max_climb_rate);
        lateral_mode = true;
        vel_err = vel_sp - s.velocity;

        if (mode == FlightMode::kVelocityYawRate || mode == FlightMode::kPositionYawRate) {
          hold_yaw_angle = false;
          yaw_rate_sp = sp[2];
        } else {
          yaw_target = sp[2];
        }
      }

      // x/y outputs are ground-frame accelerations, z is a throttle correction.
      const Vec3 vel_out = velocity_.step(vel_err, dt);
      if (lateral_mode) {
        const double cy = std::cos(s.orientation.yaw), sy = std::sin(s.orientation.yaw);
        const double forward = cy * vel_out.x() + sy * vel_out.y();
        const double left = -sy * vel_out.x() + cy * vel_out.y();
        pitch_sp = std::atan2(forward, kGravity);
        roll_sp = -std::atan2(left, kGravity);
      }

      roll_sp = std::clamp(roll_sp, -cfg_.max_tilt, cfg_.max_tilt);
      pitch_sp = std::clamp(pitch_sp, -cfg_.max_tilt, cfg_.max_tilt);
      const Vec3 angle_err(roll_sp - s.orientation.roll, pitch_sp - s.orientation.pitch,
                           wrap_angle(yaw_target - s.orientation.yaw));
      rate_sp = attitude_.step(angle_err, dt);
      if (!hold_yaw_angle) rate_sp.z() = yaw_rate_sp;

      const double tilt = std::max(std::cos(s.orientation.roll) * std::cos(s.orientation.pitch), 0.5);
      thrust = (cfg_.hover_thrust + vel_out.z()) / tilt;
    }

    const Vec3 torque = rate_.step(rate_sp - s.angular_velocity, dt);
    return {torque.x(), torque.y(), torque.z(), thrust};
  }

 private:
  static Eigen::Vector2d limit_norm(const Eigen::Vector2d& v, double limit) {
    const double n = v.norm();
    return n > limit ? Eigen::Vector2d(v * (limit / n)) : v;
  }

  ControllerConfig cfg_;
  PidStage rate_;
  PidStage attitude_;
  PidStage velocity_;
  PidStage position_;
};

inline MotorCommands quadx_control_step(const RigidBodyState& state, FlightMode mode, const Setpoint& setpoint,
                                        QuadXController& stages, double dt) {
  return stages.step(state, mode, setpoint, dt);
}

class QuadX : public Drone {
 public:
  explicit QuadX(DroneConfig config) : Drone(std::move(config)) {
    if (config_.kind != "quadx") throw ConfigError(config_.name + ": not a quadx config");
    const auto motors = config_.all_of<MotorParams>();
    if (motors.size() != 4) throw ConfigError(config_.name + ": quadx needs exactly 4 motors");
    if (!config_.controller) throw ConfigError(config_.name + ": quadx needs controller gains");
    for (const auto* m : motors) {
      motors_.push_back(std::get<MotorParams>(m->params));
      component_mass_ += m->mass;
      component_inertia_ += point_inertia(m->mass, motors_.back().mount_point);
    }
    controller_ = QuadXController(*config_.controller);
    init_setpoint(FlightMode::kRates, Setpoint(4, 0.0));
  }

  std::size_t setpoint_size() const override { return 4; }
  bool supports(FlightMode) const override { return true; }

  MassProperties mass_properties() const override {
    return {config_.base.mass + component_mass_, config_.base.inertia + component_inertia_};
  }

  std::vector<double> aux_state() const override {
    std::vector<double> out;
    for (std::size_t i = 0; i < 4; ++i) out.push_back(motor_states_[i].rpm / motors_[i].max_rpm);
    return out;
  }

  const Throttles& throttles() const { return throttles_; }
  const MotorCommands& last_commands() const { return commands_; }
  const std::vector<MotorParams>& motors() const { return motors_; }
  const std::array<MotorState, 4>& motor_states() const { return motor_states_; }
  const QuadXController& controller() const { return controller_; }

  void reset() override {
    Drone::reset();
    motor_states_ = {};
    throttles_ = {};
    commands_ = {};
    init_setpoint(FlightMode::kRates, Setpoint(4, 0.0));
  }

 protected:
  void compute_commands(double dt) override {
    if (mode_ == FlightMode::kRaw) {
      for (std::size_t i = 0; i < 4; ++i) throttles_[i] = std::clamp(setpoint_[i], 0.0, 1.0);
      return;
    }
    commands_ = quadx_control_step(state_, mode_, setpoint_, controller_, dt);
    throttles_ = quadx_mix(commands_);
  }

  void zero_commands() override {
    throttles_ = {};
    commands_ = {};
  }

  std::vector<AppliedLoad> step_actuators(double rate, NoiseSource* noise) override {
    std::vector<AppliedLoad> loads;
    loads.reserve(4);
    for (std::size_t i = 0; i < 4; ++i) {
      motor_states_[i] = motor_step(motor_states_[i], motors_[i], throttles_[i], rate, draw(noise)).state;
      loads.push_back(motor_loads(motor_states_[i], motors_[i]));
    }
    return loads;
  }

  void on_mode_change() override { controller_.reset(); }

 private:
  std::vector<MotorParams> motors_;
  std::array<MotorState, 4> motor_states_{};
  Throttles throttles_{};
  MotorCommands commands_{};
  QuadXController controller_;
  double component_mass_ = 0.0;
  Vec3 component_inertia_ = Vec3::Zero();
};

}  // namespace flyt
