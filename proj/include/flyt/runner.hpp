#pragma once

// Batch episode runner behind the command-line tool.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "flyt/config.hpp"
#include "flyt/envs/tasks.hpp"

namespace flyt {

enum class PolicyKind { kRandom, kScriptedPid, kZero };
enum class LogFormat { kCsv, kJsonLines };

inline PolicyKind parse_policy(const std::string& s) {
  if (s == "random") return PolicyKind::kRandom;
  if (s == "scripted-pid") return PolicyKind::kScriptedPid;
  if (s == "zero") return PolicyKind::kZero;
  throw LookupError("unknown policy '" + s + "' (random, scripted-pid, zero)");
}

inline LogFormat parse_format(const std::string& s) {
  if (s == "csv") return LogFormat::kCsv;
  if (s == "jsonl" || s == "json-lines") return LogFormat::kJsonLines;
  throw LookupError("unknown log format '" + s + "' (csv, jsonl)");
}

struct RunSpec {
  std::string env;
  std::uint64_t seed = 0;
  int episodes = 1;
  PolicyKind policy = PolicyKind::kRandom;
  bool sparse = false;
  LogFormat format = LogFormat::kCsv;
  std::optional<int> waypoints;
  std::optional<double> goal_radius;
};

inline bool is_quadx_env(const std::string& name) { return name == kQuadXHover || name == kQuadXWaypoints; }

/// Resolves the environment options a run will use; rejects invalid combinations.
inline EnvConfig env_config_for(const RunSpec& spec) {
  if (spec.episodes < 1) throw ConfigError("episode count must be at least 1");
  EnvConfig cfg = default_env_config(spec.env);
  if (spec.policy == PolicyKind::kScriptedPid && !is_quadx_env(spec.env)) {
    throw ConfigError("scripted-pid policy is only defined for QuadX environments");
  }
  cfg.sparse_reward = spec.sparse;
  if (spec.waypoints) cfg.waypoint_count = *spec.waypoints;
  if (spec.goal_radius) cfg.goal_radius = *spec.goal_radius;
  check_env_config(cfg);
  return cfg;
}

/// Shortest decimal text that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct StepRecord {
  int episode = 0;
  int step = 0;
  std::int64_t tick = 0;
  std::vector<double> observation;  // attitude block
  std::vector<double> action;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  bool crashed = false;
  bool waypoint_reached = false;
};

class TrajectoryWriter {
 public:
  TrajectoryWriter(std::ostream& out, LogFormat format) : out_(out), format_(format) {}

  void write(const StepRecord& r) {
    if (format_ == LogFormat::kJsonLines) {
      const nlohmann::json line{{"episode", r.episode},
                                {"step", r.step},
                                {"tick", r.tick},
                                {"observation", r.observation},
                                {"action", r.action},
                                {"reward", r.reward},
                                {"terminated", r.terminated},
                                {"truncated", r.truncated},
                                {"crashed", r.crashed},
                                {"waypoint_reached", r.waypoint_reached}};
      out_ << line.dump() << '\n';
      return;
    }
    if (!header_written_) write_header(r);
    out_ << r.episode << ',' << r.step << ',' << r.tick;
    for (double v : r.observation) out_ << ',' << format_number(v);
    for (double v : r.action) out_ << ',' << format_number(v);
    out_ << ',' << format_number(r.reward) << ',' << r.terminated << ',' << r.truncated << ',' << r.crashed << ','
         << r.waypoint_reached << '\n';
  }

  /// Header lines emitted so far (CSV only).
  int header_lines() const { return header_written_ ? 1 : 0; }

 private:
  void write_header(const StepRecord& r) {
    out_ << "episode,step,tick";
    for (std::size_t i = 0; i < r.observation.size(); ++i) out_ << ",obs_" << i;
    for (std::size_t i = 0; i < r.action.size(); ++i) out_ << ",act_" << i;
    out_ << ",reward,terminated,truncated,crashed,waypoint_reached\n";
    header_written_ = true;
  }

  std::ostream& out_;
  LogFormat format_;
  bool header_written_ = false;
};

struct EpisodeSummary {
  int episode = 0;
  std::uint64_t seed = 0;
  double episode_return = 0.0;
  int length = 0;
  std::string outcome;  // goal, landed, crashed, truncated, diverged
  std::size_t waypoints_reached = 0;
};

/// Mean of the middle half after trimming floor(n/4) values from each end.
inline double interquartile_mean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t cut = values.size() / 4;
  const auto first = values.begin() + static_cast<std::ptrdiff_t>(cut);
  const auto last = values.end() - static_cast<std::ptrdiff_t>(cut);
  return std::accumulate(first, last, 0.0) / static_cast<double>(last - first);
}

struct RunResult {
  std::vector<EpisodeSummary> episodes;
  bool diverged = false;

  std::vector<double> returns() const {
    std::vector<double> out;
    for (const auto& e : episodes) out.push_back(e.episode_return);
    return out;
  }
  double mean_return() const {
    const auto r = returns();
    return r.empty() ? 0.0 : std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  }
  double iqm_return() const { return interquartile_mean(returns()); }
  int total_steps() const {
    int n = 0;
    for (const auto& e : episodes) n += e.length;
    return n;
  }
};

/// Position setpoint for the scripted controller: the current waypoint, or
/// the hover point when the task has none.
inline std::vector<double> scripted_setpoint(const Environment& env) {
  const auto targets = env.remaining_targets();
  const Vec3 goal = targets.empty() ? Vec3(0.0, 0.0, 1.0) : targets.front();
  return {goal.x(), goal.y(), 0.0, goal.z()};
}

inline Transition policy_step(PolicyKind policy, Environment& env, std::mt19937_64& rng,
                              std::vector<double>& action) {
  const ActionBounds& b = env.action_bounds();
  switch (policy) {
    case PolicyKind::kZero:
      action.assign(env.action_size(), 0.0);
      return env.step(action);
    case PolicyKind::kRandom:
      action.resize(env.action_size());
      for (std::size_t i = 0; i < action.size(); ++i) {
        action[i] = std::uniform_real_distribution<double>(b.low[i], b.high[i])(rng);
      }
      return env.step(action);
    case PolicyKind::kScriptedPid:
      action = scripted_setpoint(env);
      return env.step_setpoint(FlightMode::kPosition, action);
  }
  throw ContractError("unhandled policy");
}

inline std::string episode_outcome(const Transition& t) {
  if (t.info.pad == PadOutcome::kSafe) return "landed";
  if (t.info.crashed) return "crashed";
  if (t.terminated) return "goal";
  return "truncated";
}

/// Runs `spec.episodes` episodes, seeding episode k with seed + k. Every
/// agent step is written to `trajectory`. Divergence ends that episode and is
/// flagged in the result; later episodes still run.
inline RunResult run(const RunSpec& spec, std::ostream& trajectory) {
  const EnvConfig cfg = env_config_for(spec);
  auto env = make_env(cfg);
  TrajectoryWriter writer(trajectory, spec.format);
  RunResult result;
  std::vector<double> action;

  for (int k = 0; k < spec.episodes; ++k) {
    EpisodeSummary summary;
    summary.episode = k;
    summary.seed = spec.seed + static_cast<std::uint64_t>(k);
    std::mt19937_64 policy_rng(summary.seed ^ 0xD1B54A32D192ED03ULL);
    try {
      env->reset(summary.seed);
      Transition t;
      do {
        t = policy_step(spec.policy, *env, policy_rng, action);
        StepRecord rec;
        rec.episode = k;
        rec.step = summary.length;
        rec.tick = env->aviary().physics_ticks();
        rec.observation = t.observation.attitude;
        rec.action = action;
        rec.reward = t.reward;
        rec.terminated = t.terminated;
        rec.truncated = t.truncated;
        rec.crashed = t.info.crashed;
        rec.waypoint_reached = t.info.waypoint_reached;
        writer.write(rec);
        summary.episode_return += t.reward;
        ++summary.length;
        if (t.info.waypoint_reached) ++summary.waypoints_reached;
      } while (!t.terminated && !t.truncated);
      summary.outcome = episode_outcome(t);
    } catch (const SimulationDiverged&) {
      summary.outcome = "diverged";
      result.diverged = true;
    }
    result.episodes.push_back(summary);
  }
  return result;
}

inline void print_summary(std::ostream& out, const RunResult& r) {
  for (const auto& e : r.episodes) {
    out << "episode " << e.episode << " seed " << e.seed << " return " << format_number(e.episode_return)
        << " length " << e.length << " outcome " << e.outcome << '\n';
  }
  out << "episodes " << r.episodes.size() << " mean " << format_number(r.mean_return()) << " iqm "
      << format_number(r.iqm_return()) << '\n';
}

/// Parses and checks a vehicle file. Parse failures become a single
/// violation; unreadable files raise Error.
inline std::vector<Violation> validate_config_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return validate(parse_config(text));
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon == std::string::npos) return {{"<document>", msg}};
    return {{msg.substr(0, colon), msg.substr(colon + 2)}};
  }
}

}  // namespace flyt
