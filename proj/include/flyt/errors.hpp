#pragma once

#include <stdexcept>
#include <string>

namespace flyt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent configuration (rates, vehicle files, env options).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's contract (wrong dimension, NaN input, bad axis).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Unknown drone id, env name or component name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// The integrator produced a non-finite state.
class SimulationDiverged : public Error {
 public:
  explicit SimulationDiverged(const std::string& what, int drone_id = -1)
      : Error(drone_id < 0 ? what : "drone " + std::to_string(drone_id) + ": " + what),
        drone_id_(drone_id) {}

  int drone_id() const noexcept { return drone_id_; }

 private:
  int drone_id_;
};

}  // namespace flyt
