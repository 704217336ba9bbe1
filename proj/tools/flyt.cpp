// flyt: run episodes, validate vehicle files, dump preset vehicles.
//
//   flyt --env PyFlyt/QuadX-Waypoints-v0 --policy scripted-pid --episodes 10 --out traj.csv
//   flyt validate configs/crazyflie.json
//   flyt preset rocket --out configs/rocket.json

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flyt/flyt.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kDiverged = 3;
constexpr int kInvalidConfig = 1;

int run_episodes(const flyt::RunSpec& spec, const std::string& out_path) {
  std::ofstream file;
  std::ostream* trajectory = nullptr;
  std::ofstream discard;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return kUsageError;
    }
    trajectory = &file;
  } else {
    discard.setstate(std::ios::badbit);
    trajectory = &discard;
  }
  const flyt::RunResult result = flyt::run(spec, *trajectory);
  flyt::print_summary(std::cout, result);
  return result.diverged ? kDiverged : 0;
}

int validate_file(const std::string& path) {
  const auto violations = flyt::validate_config_file(path);
  for (const auto& v : violations) std::cout << v.field << ": " << v.message << '\n';
  std::cout << path << ": " << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << '\n';
  return violations.empty() ? 0 : kInvalidConfig;
}

int dump_preset(const std::string& name, const std::string& out_path) {
  const std::string text = flyt::serialize_config(flyt::preset_config(name));
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return kUsageError;
  }
  file << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flight dynamics task runner"};

  std::string env_name;
  std::uint64_t seed = 0;
  int episodes = 1;
  std::string policy = "random";
  bool sparse = false;
  std::string out_path;
  std::string format = "csv";
  std::optional<int> waypoints;
  std::optional<double> goal_radius;

  app.add_option("--env", env_name, "Environment name, e.g. PyFlyt/QuadX-Hover-v0");
  app.add_option("--seed", seed, "Seed of the first episode; episode k uses seed + k");
  app.add_option("--episodes", episodes, "Number of episodes")->check(CLI::PositiveNumber);
  app.add_option("--policy", policy, "random, scripted-pid or zero");
  app.add_flag("--sparse", sparse, "Use the sparse reward variant");
  app.add_option("--out", out_path, "Trajectory log path");
  app.add_option("--format", format, "Trajectory log format: csv or jsonl");
  app.add_option("--waypoints", waypoints, "Waypoint count for waypoint tasks");
  app.add_option("--goal-radius", goal_radius, "Waypoint goal radius in metres");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a vehicle file against every invariant");
  validate_cmd->add_option("path", validate_path, "Vehicle file")->required();

  std::string preset_name;
  std::string preset_out;
  auto* preset_cmd = app.add_subcommand("preset", "Write a shipped vehicle as a vehicle file");
  preset_cmd->add_option("name", preset_name, "crazyflie, generic_quadx, fixedwing or rocket")->required();
  preset_cmd->add_option("--out", preset_out, "Output path (stdout if omitted)");

  app.require_subcommand(0, 1);
  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return validate_file(validate_path);
    if (*preset_cmd) return dump_preset(preset_name, preset_out);

    if (env_name.empty()) {
      std::cerr << "error: --env is required\n" << app.help();
      return kUsageError;
    }
    flyt::RunSpec spec;
    spec.env = env_name;
    spec.seed = seed;
    spec.episodes = episodes;
    spec.policy = flyt::parse_policy(policy);
    spec.sparse = sparse;
    spec.format = flyt::parse_format(format);
    spec.waypoints = waypoints;
    spec.goal_radius = goal_radius;
    return run_episodes(spec, out_path);
  } catch (const flyt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
