#pragma once

// Common reset/step machinery for single-vehicle tasks.

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flyt/aviary.hpp"
#include "flyt/drones/presets.hpp"
#include "flyt/envs/observation.hpp"
#include "flyt/envs/rewards.hpp"
#include "flyt/errors.hpp"

namespace flyt {

inline constexpr const char* kQuadXHover = "PyFlyt/QuadX-Hover-v0";
inline constexpr const char* kQuadXWaypoints = "PyFlyt/QuadX-Waypoints-v0";
inline constexpr const char* kFixedwingWaypoints = "PyFlyt/Fixedwing-Waypoints-v0";
inline constexpr const char* kRocketLanding = "PyFlyt/Rocket-Landing-v0";

inline const std::vector<std::string>& env_names() {
  static const std::vector<std::string> names{kQuadXHover, kQuadXWaypoints, kFixedwingWaypoints, kRocketLanding};
  return names;
}

struct EnvConfig {
  std::string name;
  bool sparse_reward = false;
  int agent_rate = 30;        // Hz
  double max_duration = 10;   // s
  int waypoint_count = 5;
  double goal_radius = 0.2;   // m
  double flight_bounds = 10;  // half-extent, m
  std::uint64_t seed = 0;
};

/// Defaults for one of the shipped task names.
inline EnvConfig default_env_config(const std::string& name) {
  EnvConfig c;
  c.name = name;
  if (name == kQuadXHover) {
    c.max_duration = 10.0;
  } else if (name == kQuadXWaypoints) {
    c.max_duration = 20.0;
  } else if (name == kFixedwingWaypoints) {
    c.max_duration = 20.0;
    c.goal_radius = 2.0;
    c.flight_bounds = 200.0;
  } else if (name == kRocketLanding) {
    c.max_duration = 30.0;
    c.flight_bounds = 200.0;
  } else {
    std::string known;
    for (const auto& n : env_names()) known += (known.empty() ? "" : ", ") + n;
    throw LookupError("unknown environment '" + name + "' (known: " + known + ")");
  }
  return c;
}

inline void check_env_config(const EnvConfig& c) {
  if (!(c.max_duration > 0.0)) throw ConfigError("max_duration must be positive");
  if (c.waypoint_count < 1) throw ConfigError("waypoint count must be at least 1");
  if (!(c.goal_radius > 0.0)) throw ConfigError("goal radius must be positive");
  if (!(c.flight_bounds > 0.0)) throw ConfigError("flight bounds must be positive");
  if (c.agent_rate <= 0 || 120 % c.agent_rate != 0) {
    throw ConfigError("agent rate must divide the 120 Hz control rate");
  }
}

struct StepInfo {
  bool crashed = false;
  bool ground_contact = false;
  bool collision = false;
  bool out_of_bounds = false;
  bool waypoint_reached = false;
  std::size_t waypoints_remaining = 0;
  bool on_pad = false;
  PadOutcome pad = PadOutcome::kNone;
  RocketReward rocket_terms;
};

struct Transition {
  Observation observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  StepInfo info;
};

struct ActionBounds {
  std::vector<double> low;
  std::vector<double> high;
};

class Environment {
 public:
  virtual ~Environment() = default;

  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  const EnvConfig& config() const { return cfg_; }
  const std::string& name() const { return cfg_.name; }
  std::size_t action_size() const { return bounds_.low.size(); }
  const ActionBounds& action_bounds() const { return bounds_; }
  int max_steps() const { return max_steps_; }
  int steps() const { return steps_; }
  double agent_dt() const { return 1.0 / cfg_.agent_rate; }
  bool needs_reset() const { return !aviary_ || finished_; }

  Aviary& aviary() {
    require_started();
    return *aviary_;
  }
  Drone& vehicle() { return aviary().drone(0); }
  const Drone& vehicle() const {
    require_started();
    return aviary_->drone(0);
  }

  /// Rebuilds the aviary from `seed`, spawns the vehicle and samples the task.
  Observation reset(std::uint64_t seed) {
    aviary_ = std::make_unique<Aviary>(LoopRates{240, 120, cfg_.agent_rate}, seed);
    aviary_->add(make_drone(vehicle_));
    task_rng_.seed(seed ^ 0x9E3779B97F4A7C15ULL);
    steps_ = 0;
    finished_ = false;
    previous_action_.assign(action_size(), 0.0);
    on_reset(vehicle(), task_rng_);
    return observe();
  }
  Observation reset() { return reset(cfg_.seed); }

  Transition step(std::span<const double> action) {
    require_running();
    if (action.size() != action_size()) {
      throw ContractError(name() + ": action has " + std::to_string(action.size()) + " entries, expected " +
                          std::to_string(action_size()));
    }
    for (double a : action) {
      if (!std::isfinite(a)) throw ContractError(name() + ": action contains a non-finite value");
    }
    apply_action(vehicle(), action);
    return advance(action);
  }

  /// Drives the vehicle's own flight modes directly instead of the action
  /// space. Only vehicles with an onboard cascade accept this.
  Transition step_setpoint(FlightMode mode, std::span<const double> setpoint) {
    require_running();
    Drone& d = vehicle();
    d.set_mode(mode);
    d.set_setpoint(setpoint);
    std::vector<double> recorded(action_size(), 0.0);
    if (setpoint.size() == recorded.size()) recorded.assign(setpoint.begin(), setpoint.end());
    return advance(recorded);
  }

  Observation observe() const {
    const Drone& d = vehicle();
    const std::vector<double> aux = d.aux_state();
    return assemble_observation(d.state(), previous_action_, aux, remaining_targets());
  }

  virtual std::span<const Vec3> remaining_targets() const { return {}; }

 protected:
  Environment(EnvConfig cfg, DroneConfig vehicle, ActionBounds bounds)
      : cfg_(std::move(cfg)), vehicle_(std::move(vehicle)), bounds_(std::move(bounds)) {
    check_env_config(cfg_);
    max_steps_ = static_cast<int>(std::llround(cfg_.max_duration * cfg_.agent_rate));
  }

  virtual void on_reset(Drone& d, std::mt19937_64& rng) = 0;
  virtual void apply_action(Drone& d, std::span<const double> action) = 0;
  /// Fills reward, terminated and info after one agent step.
  virtual void evaluate(const std::vector<ContactEvent>& events, Transition& t) = 0;

  virtual bool outside_bounds(const Vec3& p) const {
    const double b = cfg_.flight_bounds;
    return std::abs(p.x()) > b || std::abs(p.y()) > b || p.z() > b;
  }

  /// Ground contact, inter-vehicle contact or leaving the flight volume.
  bool detect_crash(const std::vector<ContactEvent>& events, StepInfo& info) const {
    for (const auto& e : events) {
      if (e.ground()) {
        info.ground_contact = true;
      } else {
        info.collision = true;
      }
    }
    info.out_of_bounds = outside_bounds(vehicle().state().position);
    info.crashed = info.ground_contact || info.collision || info.out_of_bounds;
    return info.crashed;
  }

  EnvConfig cfg_;
  DroneConfig vehicle_;

 private:
  void require_started() const {
    if (!aviary_) throw ContractError(cfg_.name + ": reset() must be called first");
  }
  void require_running() const {
    require_started();
    if (finished_) throw ContractError(cfg_.name + ": episode is over, call reset()");
  }

  Transition advance(std::span<const double> action) {
    const std::vector<ContactEvent> events = aviary_->step();
    ++steps_;
    previous_action_.assign(action.begin(), action.end());
    Transition t;
    evaluate(events, t);
    t.truncated = steps_ >= max_steps_;
    finished_ = t.terminated || t.truncated;
    t.observation = observe();
    return t;
  }

  ActionBounds bounds_;
  int max_steps_ = 0;
  std::unique_ptr<Aviary> aviary_;
  std::mt19937_64 task_rng_;
  int steps_ = 0;
  bool finished_ = false;
  std::vector<double> previous_action_;
};

}  // namespace flyt
