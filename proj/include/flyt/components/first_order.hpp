#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "flyt/errors.hpp"

namespace flyt {

/// Result of an actuator update. `saturated` is set when the command had to
/// be clamped into its admissible range.
template <class State>
struct Stepped {
  State state;
  bool saturated = false;
};

/// One discrete step of the first-order lag shared by every actuator:
/// x + (target - x) / (tau * rate).
inline double first_order_step(double current, double target, double tau, double rate) {
  return (1.0 / (tau * rate)) * (target - current) + current;
}

/// Discrete lags with tau * rate < 1 overshoot their target.
inline void require_stable_lag(double tau, double rate, const char* who) {
  if (!(tau > 0.0) || !(rate > 0.0) || tau * rate < 1.0) {
    throw ContractError(std::string(who) + ": time constant times loop rate must be >= 1");
  }
}

struct Clamped {
  double value;
  bool saturated;
};

inline Clamped clamp_command(double command, double lo, double hi) {
  if (std::isnan(command)) throw ContractError("actuator command is NaN");
  const double v = std::clamp(command, lo, hi);
  return {v, v != command};
}

}  // namespace flyt
