#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "flyt/errors.hpp"
#include "flyt/frames.hpp"

namespace flyt {

/// Axis-aligned box waypoints are drawn from.
struct WaypointRegion {
  double half_extent = 4.0;  // x, y in [-half_extent, half_extent]
  double z_min = 1.0;
  double z_max = 4.0;

  WaypointRegion scaled(double factor) const { return {half_extent * factor, z_min * factor, z_max * factor}; }
};

inline std::vector<Vec3> sample_waypoints(std::mt19937_64& rng, const WaypointRegion& region, int count) {
  if (count < 1) throw ConfigError("waypoint count must be at least 1");
  std::uniform_real_distribution<double> xy(-region.half_extent, region.half_extent);
  std::uniform_real_distribution<double> z(region.z_min, region.z_max);
  std::vector<Vec3> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = xy(rng);
    const double y = xy(rng);
    out.emplace_back(x, y, z(rng));
  }
  return out;
}

/// Ordered target list. Only the head can be reached; reaching it moves the
/// head forward and forgets the previous distance sample.
class WaypointTracker {
 public:
  WaypointTracker() = default;
  WaypointTracker(std::vector<Vec3> waypoints, double goal_radius)
      : waypoints_(std::move(waypoints)), goal_radius_(goal_radius) {
    if (!(goal_radius > 0.0)) throw ConfigError("goal radius must be positive");
  }

  struct Update {
    double delta = 0.0;       // distance to the head before any advance
    double delta_rate = 0.0;  // first difference over dt, 0 without a prior sample
    bool reached = false;
  };

  /// Measures the distance from `position` to the current head. The reach
  /// test comes first, so a reported delta on a non-reach step is never
  /// below the goal radius.
  Update update(const Vec3& position, double dt) {
    if (done()) throw ContractError("all waypoints already reached");
    Update u;
    u.delta = (position - waypoints_[next_]).norm();
    if (previous_delta_) u.delta_rate = (u.delta - *previous_delta_) / dt;
    if (u.delta < goal_radius_) {
      u.reached = true;
      ++next_;
      previous_delta_.reset();
    } else {
      previous_delta_ = u.delta;
    }
    return u;
  }

  bool done() const { return next_ >= waypoints_.size(); }
  std::size_t reached_count() const { return next_; }
  std::size_t total() const { return waypoints_.size(); }
  double goal_radius() const { return goal_radius_; }
  const std::vector<Vec3>& all() const { return waypoints_; }
  std::span<const Vec3> remaining() const {
    return std::span<const Vec3>(waypoints_).subspan(std::min(next_, waypoints_.size()));
  }
  const Vec3& head() const {
    if (done()) throw ContractError("no waypoint remaining");
    return waypoints_[next_];
  }

 private:
  std::vector<Vec3> waypoints_;
  double goal_radius_ = 0.2;
  std::size_t next_ = 0;
  std::optional<double> previous_delta_;
};

}  // namespace flyt
