#pragma once

// The four shipped tasks and the name-based factory.

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <string>

#include "flyt/envs/environment.hpp"
#include "flyt/envs/waypoints.hpp"

namespace flyt {

/// QuadX action: [roll rate, pitch rate, yaw rate] in rad/s and thrust in [0, 1].
inline constexpr double kQuadXMaxRate = 3.0;

inline ActionBounds quadx_action_bounds() {
  return {{-kQuadXMaxRate, -kQuadXMaxRate, -kQuadXMaxRate, 0.0}, {kQuadXMaxRate, kQuadXMaxRate, kQuadXMaxRate, 1.0}};
}

/// Fixedwing action: [aileron, elevator, rudder] in [-1, 1], throttle in [0, 1].
inline ActionBounds fixedwing_action_bounds() { return {{-1.0, -1.0, -1.0, 0.0}, {1.0, 1.0, 1.0, 1.0}}; }

/// Rocket action: [fin x, fin y, fin cyclic, ignition, throttle, gimbal a, gimbal b].
inline ActionBounds rocket_action_bounds() {
  return {{-1.0, -1.0, -1.0, 0.0, 0.0, -1.0, -1.0}, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}};
}

class QuadXHoverEnv : public Environment {
 public:
  explicit QuadXHoverEnv(EnvConfig cfg) : Environment(std::move(cfg), crazyflie_config(), quadx_action_bounds()) {}

 protected:
  void on_reset(Drone&, std::mt19937_64&) override {}

  void apply_action(Drone& d, std::span<const double> action) override {
    d.set_mode(FlightMode::kRates);
    d.set_setpoint(action);
  }

  void evaluate(const std::vector<ContactEvent>& events, Transition& t) override {
    const bool crashed = detect_crash(events, t.info);
    t.reward = hover_reward(vehicle().state(), crashed, cfg_.sparse_reward);
    t.terminated = crashed;
  }
};

/// Ordered waypoint visiting, shared by the QuadX and Fixedwing variants.
class WaypointEnv : public Environment {
 public:
  std::span<const Vec3> remaining_targets() const override { return tracker_.remaining(); }
  const WaypointTracker& tracker() const { return tracker_; }

 protected:
  WaypointEnv(EnvConfig cfg, DroneConfig vehicle, ActionBounds bounds, WaypointRegion region,
              WaypointCoefficients coefs)
      : Environment(std::move(cfg), std::move(vehicle), std::move(bounds)), region_(region), coefs_(coefs) {}

  void on_reset(Drone&, std::mt19937_64& rng) override {
    tracker_ = WaypointTracker(sample_waypoints(rng, region_, cfg_.waypoint_count), cfg_.goal_radius);
  }

  void evaluate(const std::vector<ContactEvent>& events, Transition& t) override {
    const bool crashed = detect_crash(events, t.info);
    WaypointTracker::Update u;
    if (!crashed) {
      u = tracker_.update(vehicle().state().position, agent_dt());
    }
    t.info.waypoint_reached = u.reached;
    t.info.waypoints_remaining = tracker_.remaining().size();
    t.reward = waypoint_reward(u.delta, u.delta_rate, u.reached, crashed, cfg_.sparse_reward, coefs_);
    t.terminated = crashed || tracker_.done();
  }

  WaypointRegion region_;
  WaypointCoefficients coefs_;
  WaypointTracker tracker_;
};

class QuadXWaypointsEnv : public WaypointEnv {
 public:
  explicit QuadXWaypointsEnv(EnvConfig cfg)
      : WaypointEnv(std::move(cfg), crazyflie_config(), quadx_action_bounds(), WaypointRegion{}, {0.1, 3.0}) {}

 protected:
  void apply_action(Drone& d, std::span<const double> action) override {
    d.set_mode(FlightMode::kRates);
    d.set_setpoint(action);
  }
};

class FixedwingWaypointsEnv : public WaypointEnv {
 public:
  explicit FixedwingWaypointsEnv(EnvConfig cfg)
      : WaypointEnv(std::move(cfg), fixedwing_config(), fixedwing_action_bounds(), WaypointRegion{}.scaled(20.0),
                    {1.0, 3.0}) {}

 protected:
  void apply_action(Drone& d, std::span<const double> action) override { d.set_setpoint(action); }
};

class RocketLandingEnv : public Environment {
 public:
  static constexpr double kPadRadius = 2.0;
  static constexpr double kFatalSpeed = 1.0;
  static constexpr double kUprightTolerance = 5.0 * kPi / 180.0;
  static constexpr double kHaltSpeed = 0.1;
  static constexpr double kHaltRate = 0.1;
  static constexpr double kHaltHold = 0.5;  // s
  static constexpr double kStartFuelFraction = 0.01;
  static constexpr double kSpawnRadiusMin = 5.0;
  static constexpr double kSpawnRadiusMax = 15.0;

  explicit RocketLandingEnv(EnvConfig cfg) : Environment(std::move(cfg), rocket_config(), rocket_action_bounds()) {}

  Rocket& rocket() { return static_cast<Rocket&>(vehicle()); }

  /// Distance from the body origin to the pad centre.
  double pad_distance() const { return vehicle().state().position.norm(); }

  /// Consecutive agent steps the vehicle must sit upright and still on the
  /// pad before the landing counts.
  int halt_steps_required() const { return static_cast<int>(std::ceil(kHaltHold * cfg_.agent_rate - 1e-9)); }

  static bool upright_and_still(const RigidBodyState& s) {
    return std::abs(s.orientation.roll) < kUprightTolerance && std::abs(s.orientation.pitch) < kUprightTolerance &&
           s.velocity.norm() < kHaltSpeed && s.angular_velocity.norm() < kHaltRate;
  }

 protected:
  /// Spawns over an annulus around the pad with 1 % fuel.
  void on_reset(Drone& d, std::mt19937_64& rng) override {
    std::uniform_real_distribution<double> radius(kSpawnRadiusMin, kSpawnRadiusMax);
    std::uniform_real_distribution<double> bearing(-kPi, kPi);
    const double r = radius(rng);
    const double b = bearing(rng);
    RigidBodyState s = d.state();
    s.position.x() = r * std::cos(b);
    s.position.y() = r * std::sin(b);
    d.set_state(s);
    auto& rocket = static_cast<Rocket&>(d);
    rocket.set_fuel(kStartFuelFraction * rocket.booster().fuel_max);
    halt_steps_ = 0;
  }

  void apply_action(Drone& d, std::span<const double> action) override { d.set_setpoint(action); }

  bool outside_bounds(const Vec3& p) const override {
    const double b = cfg_.flight_bounds;
    return std::abs(p.x()) > b || std::abs(p.y()) > b || p.z() > vehicle_.start.position.z() + b;
  }

  void evaluate(const std::vector<ContactEvent>& events, Transition& t) override {
    const RigidBodyState& s = vehicle().state();
    double impact = 0.0;
    for (const auto& e : events) {
      if (e.ground()) {
        t.info.ground_contact = true;
        impact = std::max(impact, e.impact_speed);
      } else {
        t.info.collision = true;
      }
    }
    t.info.out_of_bounds = outside_bounds(s.position);

    const bool over_pad = std::hypot(s.position.x(), s.position.y()) <= kPadRadius;
    bool off_pad_ground = false;
    PadOutcome pad = PadOutcome::kNone;
    if (t.info.ground_contact && over_pad) {
      t.info.on_pad = true;
      if (impact >= kFatalSpeed) pad = PadOutcome::kFatal;
    } else if (t.info.ground_contact) {
      off_pad_ground = true;
    }
    if (pad == PadOutcome::kNone && t.info.on_pad) {
      halt_steps_ = upright_and_still(s) ? halt_steps_ + 1 : 0;
      if (halt_steps_ >= halt_steps_required()) pad = PadOutcome::kSafe;
    } else {
      halt_steps_ = 0;
    }

    t.info.pad = pad;
    t.info.crashed = off_pad_ground || t.info.out_of_bounds || t.info.collision || pad == PadOutcome::kFatal;
    t.info.rocket_terms = rocket_landing_reward(pad_distance(), s.velocity.norm(), pad,
                                                off_pad_ground || t.info.out_of_bounds || t.info.collision,
                                                cfg_.sparse_reward);
    t.reward = t.info.rocket_terms.total();
    t.terminated = pad != PadOutcome::kNone || t.info.crashed;
  }

 private:
  int halt_steps_ = 0;
};

inline std::unique_ptr<Environment> make_env(const EnvConfig& cfg) {
  if (cfg.name == kQuadXHover) return std::make_unique<QuadXHoverEnv>(cfg);
  if (cfg.name == kQuadXWaypoints) return std::make_unique<QuadXWaypointsEnv>(cfg);
  if (cfg.name == kFixedwingWaypoints) return std::make_unique<FixedwingWaypointsEnv>(cfg);
  if (cfg.name == kRocketLanding) return std::make_unique<RocketLandingEnv>(cfg);
  default_env_config(cfg.name);  // throws LookupError with the known names
  throw LookupError("unknown environment '" + cfg.name + "'");
}

inline std::unique_ptr<Environment> make_env(const std::string& name) { return make_env(default_env_config(name)); }

}  // namespace flyt
