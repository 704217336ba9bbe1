#pragma once

// The simulation domain: owns the vehicles, runs the nested physics/control
// loops and records contacts. Contacts are reported, not resolved, except
// that the ground plane stops bodies from sinking.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flyt/drones/drone.hpp"
#include "flyt/errors.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

struct LoopRates {
  int physics = 240;
  int control = 120;
  int agent = 30;
};

struct Schedule {
  int physics_per_control = 1;
  int control_per_agent = 1;

  int physics_per_agent() const { return physics_per_control * control_per_agent; }
  bool operator==(const Schedule&) const = default;
};

/// Integer loop ratios. Rates that do not nest exactly are rejected.
inline Schedule schedule(const LoopRates& r) {
  if (r.agent <= 0 || r.control < r.agent || r.physics < r.control) {
    throw ConfigError("loop rates must satisfy physics >= control >= agent > 0");
  }
  if (r.physics % r.control != 0) {
    throw ConfigError("physics rate " + std::to_string(r.physics) + " Hz is not a multiple of control rate " +
                      std::to_string(r.control) + " Hz");
  }
  if (r.control % r.agent != 0) {
    throw ConfigError("control rate " + std::to_string(r.control) + " Hz is not a multiple of agent rate " +
                      std::to_string(r.agent) + " Hz");
  }
  return {r.physics / r.control, r.control / r.agent};
}

struct ContactEvent {
  static constexpr int kGround = -1;

  int first = 0;
  int second = kGround;  // drone id, or kGround
  std::int64_t tick = 0;
  double impact_speed = 0.0;  // ground contacts only

  bool ground() const { return second == kGround; }
  bool operator==(const ContactEvent&) const = default;
};

class Aviary {
 public:
  explicit Aviary(LoopRates rates = {}, std::uint64_t seed = 0)
      : rates_(rates), schedule_(flyt::schedule(rates)), rng_(seed) {}

  Aviary(const Aviary&) = delete;
  Aviary& operator=(const Aviary&) = delete;

  /// Registers a vehicle; ids are assigned in registration order.
  int add(std::unique_ptr<Drone> drone) {
    if (!drone) throw ContractError("cannot register a null drone");
    drones_.push_back(std::move(drone));
    return static_cast<int>(drones_.size()) - 1;
  }

  int size() const { return static_cast<int>(drones_.size()); }

  Drone& drone(int id) {
    check(id);
    return *drones_[id];
  }
  const Drone& drone(int id) const {
    check(id);
    return *drones_[id];
  }

  const LoopRates& rates() const { return rates_; }
  const Schedule& loop_schedule() const { return schedule_; }
  std::int64_t physics_ticks() const { return physics_ticks_; }
  std::int64_t control_ticks() const { return control_ticks_; }
  std::int64_t agent_steps() const { return agent_steps_; }
  double elapsed() const { return static_cast<double>(physics_ticks_) / rates_.physics; }
  const std::vector<ContactEvent>& contact_log() const { return log_; }

  void set_setpoint(int id, std::span<const double> setpoint) { drone(id).set_setpoint(setpoint); }
  void set_mode(int id, FlightMode mode) { drone(id).set_mode(mode); }
  void set_armed(int id, bool armed) { drone(id).set_armed(armed); }

  /// Advances one agent step and returns the contacts seen during it.
  std::vector<ContactEvent> step() {
    std::vector<ContactEvent> events;
    const double control_dt = 1.0 / rates_.control;
    for (int c = 0; c < schedule_.control_per_agent; ++c) {
      for (auto& d : drones_) d->control_update(control_dt);
      ++control_ticks_;
      for (int p = 0; p < schedule_.physics_per_control; ++p) {
        physics_substep(events);
      }
    }
    ++agent_steps_;
    log_.insert(log_.end(), events.begin(), events.end());
    return events;
  }

 private:
  void check(int id) const {
    if (id < 0 || id >= size()) {
      throw LookupError("no drone with id " + std::to_string(id) + " (have " + std::to_string(size()) + ")");
    }
  }

  void physics_substep(std::vector<ContactEvent>& events) {
    ++physics_ticks_;
    for (std::size_t i = 0; i < drones_.size(); ++i) {
      try {
        drones_[i]->physics_update(rates_.physics, noise_);
      } catch (const SimulationDiverged& e) {
        throw SimulationDiverged(e.what(), static_cast<int>(i));
      }
    }

    std::vector<RigidBodyState> states;
    std::vector<double> radii;
    states.reserve(drones_.size());
    radii.reserve(drones_.size());
    for (std::size_t i = 0; i < drones_.size(); ++i) {
      Drone& d = *drones_[i];
      const GroundContact g = resolve_ground_contact(d.state(), d.collision_radius());
      if (g.contacted) {
        d.set_state(g.state);
        events.push_back({static_cast<int>(i), ContactEvent::kGround, physics_ticks_, g.impact_speed});
      }
      states.push_back(d.state());
      radii.push_back(d.collision_radius());
    }
    for (const auto& [a, b] : detect_collisions(states, radii)) {
      events.push_back({static_cast<int>(a), static_cast<int>(b), physics_ticks_, 0.0});
    }
  }

  LoopRates rates_;
  Schedule schedule_;
  std::mt19937_64 rng_;
  NoiseSource noise_{rng_};
  std::vector<std::unique_ptr<Drone>> drones_;
  std::int64_t physics_ticks_ = 0;
  std::int64_t control_ticks_ = 0;
  std::int64_t agent_steps_ = 0;
  std::vector<ContactEvent> log_;
};

}  // namespace flyt
