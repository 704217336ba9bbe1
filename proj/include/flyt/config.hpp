#pragma once

// Vehicle description files. A vehicle is one JSON document holding its base
// mass properties, collision radius, start pose, component list and (for
// vehicles with an onboard cascade) controller gains.

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "flyt/components/booster.hpp"
#include "flyt/components/gimbal.hpp"
#include "flyt/components/lifting_surface.hpp"
#include "flyt/components/motor.hpp"
#include "flyt/errors.hpp"
#include "flyt/pid.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

using Json = nlohmann::json;

using ComponentParams = std::variant<MotorParams, BoosterParams, GimbalParams, SurfaceParams>;

struct ComponentSpec {
  std::string name;
  ComponentParams params;
  double mass = 0.0;  // point mass carried at the component's mount point, kg

  std::string_view kind() const {
    switch (params.index()) {
      case 0: return "motor";
      case 1: return "booster";
      case 2: return "gimbal";
      default: return "surface";
    }
  }
};

struct ControllerConfig {
  PidGains rate;
  PidGains attitude;
  PidGains velocity;
  PidGains position;
  double hover_thrust = 0.5;       // throttle feed-forward
  double max_tilt = 0.5;           // rad
  double max_climb_rate = 3.0;     // m/s
  double max_lateral_speed = 5.0;  // m/s
};

struct StartPose {
  Vec3 position = Vec3::Zero();
  EulerAngles orientation;
  Vec3 velocity = Vec3::Zero();
};

struct DroneConfig {
  std::string name;
  std::string kind;  // "quadx", "fixedwing" or "rocket"
  MassProperties base;
  double collision_radius = 0.1;
  std::vector<ComponentSpec> components;
  std::optional<ControllerConfig> controller;
  StartPose start;

  const ComponentSpec* find(std::string_view component_name) const {
    for (const auto& c : components) {
      if (c.name == component_name) return &c;
    }
    return nullptr;
  }

  template <class Params>
  std::vector<const ComponentSpec*> all_of() const {
    std::vector<const ComponentSpec*> out;
    for (const auto& c : components) {
      if (std::holds_alternative<Params>(c.params)) out.push_back(&c);
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Reading. Every failure names the offending field path.

namespace detail {

class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  bool has(const char* key) const { return node_.is_object() && node_.contains(key); }

  Reader child(const char* key) const {
    require(key);
    return Reader(node_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  double number(const char* key) const {
    const Json& v = value(key, Json::value_t::number_float);
    return v.get<double>();
  }

  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  bool boolean(const char* key) const {
    const Json& v = value(key, Json::value_t::boolean);
    return v.get<bool>();
  }

  std::string string(const char* key) const {
    const Json& v = value(key, Json::value_t::string);
    return v.get<std::string>();
  }

  Vec3 vec3(const char* key) const {
    require(key);
    const Json& v = node_.at(key);
    if (!v.is_array() || v.size() != 3) fail(key, "expected an array of 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      if (!v[i].is_number()) fail(key, "expected an array of 3 numbers");
      out[i] = v[i].get<double>();
    }
    return out;
  }

  Vec3 vec3(const char* key, const Vec3& fallback) const { return has(key) ? vec3(key) : fallback; }

  [[noreturn]] void fail(const char* key, const std::string& msg) const {
    throw ConfigError(join(key) + ": " + msg);
  }

 private:
  std::string join(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void require(const char* key) const {
    if (!node_.is_object()) throw ConfigError((path_.empty() ? "<root>" : path_) + ": expected an object");
    if (!node_.contains(key)) fail(key, "missing field");
  }

  const Json& value(const char* key, Json::value_t type) const {
    require(key);
    const Json& v = node_.at(key);
    const bool ok = type == Json::value_t::number_float ? v.is_number() : v.type() == type;
    if (!ok) {
      fail(key, type == Json::value_t::number_float ? "expected a number"
                : type == Json::value_t::boolean    ? "expected a boolean"
                                                    : "expected a string");
    }
    return v;
  }

  const Json& node_;
  std::string path_;
};

inline Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

inline PidGains read_gains(const Reader& r) {
  PidGains g;
  g.kp = r.vec3("kp");
  g.ki = r.vec3("ki");
  g.kd = r.vec3("kd");
  g.output_limit = r.vec3("output_limit");
  g.integral_limit = r.vec3("integral_limit");
  return g;
}

inline Json gains_json(const PidGains& g) {
  return {{"kp", vec_json(g.kp)},
          {"ki", vec_json(g.ki)},
          {"kd", vec_json(g.kd)},
          {"output_limit", vec_json(g.output_limit)},
          {"integral_limit", vec_json(g.integral_limit)}};
}

inline ComponentParams read_params(const std::string& kind, const Reader& r, const Reader& parent) {
  if (kind == "motor") {
    MotorParams p;
    p.tau = r.number("tau");
    p.max_rpm = r.number("max_rpm");
    p.noise_std = r.number("noise_std");
    p.thrust_coef = r.number("thrust_coef");
    p.torque_coef = r.number("torque_coef");
    p.thrust_axis = r.vec3("thrust_axis");
    p.rotation_sign = r.number("rotation_sign");
    p.mount_point = r.vec3("mount_point");
    return p;
  }
  if (kind == "booster") {
    BoosterParams p;
    p.fuel_max = r.number("fuel_max");
    p.fuel_rate = r.number("fuel_rate");
    p.inertia_max = r.vec3("inertia_max");
    p.thrust_min = r.number("thrust_min");
    p.thrust_max = r.number("thrust_max");
    p.reignitable = r.boolean("reignitable");
    p.tau = r.number("tau");
    p.noise_std = r.number("noise_std");
    p.thrust_axis = r.vec3("thrust_axis");
    p.mount_point = r.vec3("mount_point");
    p.tank_point = r.vec3("tank_point");
    return p;
  }
  if (kind == "gimbal") {
    GimbalParams p;
    p.axis_a = r.vec3("axis_a");
    p.axis_b = r.vec3("axis_b");
    p.limit_a = r.number("limit_a");
    p.limit_b = r.number("limit_b");
    p.tau = r.number("tau");
    return p;
  }
  if (kind == "surface") {
    SurfaceParams p;
    p.zero_lift_aoa = r.number("zero_lift_aoa");
    p.stall_aoa_pos = r.number("stall_aoa_pos");
    p.stall_aoa_neg = r.number("stall_aoa_neg");
    p.cd0 = r.number("cd0");
    p.cl_alpha = r.number("cl_alpha");
    p.viscosity_correction = r.number("viscosity_correction");
    p.area = r.number("area");
    p.span = r.number("span");
    p.chord_dir = r.vec3("chord_dir");
    p.normal_dir = r.vec3("normal_dir");
    p.mount_point = r.vec3("mount_point");
    p.flap_ratio = r.number("flap_ratio", p.flap_ratio);
    p.max_deflection = r.number("max_deflection", p.max_deflection);
    p.tau = r.number("tau", p.tau);
    p.stall_blend = r.number("stall_blend", p.stall_blend);
    p.flap_effectiveness = r.number("flap_effectiveness", p.flap_effectiveness);
    p.flap_exponent = r.number("flap_exponent", p.flap_exponent);
    p.flap_drag = r.number("flap_drag", p.flap_drag);
    return p;
  }
  parent.fail("kind", "unknown component kind '" + kind + "'");
}

struct ParamsToJson {
  Json operator()(const MotorParams& p) const {
    return {{"tau", p.tau},
            {"max_rpm", p.max_rpm},
            {"noise_std", p.noise_std},
            {"thrust_coef", p.thrust_coef},
            {"torque_coef", p.torque_coef},
            {"thrust_axis", vec_json(p.thrust_axis)},
            {"rotation_sign", p.rotation_sign},
            {"mount_point", vec_json(p.mount_point)}};
  }
  Json operator()(const BoosterParams& p) const {
    return {{"fuel_max", p.fuel_max},
            {"fuel_rate", p.fuel_rate},
            {"inertia_max", vec_json(p.inertia_max)},
            {"thrust_min", p.thrust_min},
            {"thrust_max", p.thrust_max},
            {"reignitable", p.reignitable},
            {"tau", p.tau},
            {"noise_std", p.noise_std},
            {"thrust_axis", vec_json(p.thrust_axis)},
            {"mount_point", vec_json(p.mount_point)},
            {"tank_point", vec_json(p.tank_point)}};
  }
  Json operator()(const GimbalParams& p) const {
    return {{"axis_a", vec_json(p.axis_a)},
            {"axis_b", vec_json(p.axis_b)},
            {"limit_a", p.limit_a},
            {"limit_b", p.limit_b},
            {"tau", p.tau}};
  }
  Json operator()(const SurfaceParams& p) const {
    return {{"zero_lift_aoa", p.zero_lift_aoa},
            {"stall_aoa_pos", p.stall_aoa_pos},
            {"stall_aoa_neg", p.stall_aoa_neg},
            {"cd0", p.cd0},
            {"cl_alpha", p.cl_alpha},
            {"viscosity_correction", p.viscosity_correction},
            {"area", p.area},
            {"span", p.span},
            {"chord_dir", vec_json(p.chord_dir)},
            {"normal_dir", vec_json(p.normal_dir)},
            {"mount_point", vec_json(p.mount_point)},
            {"flap_ratio", p.flap_ratio},
            {"max_deflection", p.max_deflection},
            {"tau", p.tau},
            {"stall_blend", p.stall_blend},
            {"flap_effectiveness", p.flap_effectiveness},
            {"flap_exponent", p.flap_exponent},
            {"flap_drag", p.flap_drag}};
  }
};

}  // namespace detail

inline DroneConfig config_from_json(const Json& doc) {
  const detail::Reader root(doc, "");
  DroneConfig cfg;
  cfg.name = root.string("name");
  cfg.kind = root.string("kind");

  const auto base = root.child("base");
  cfg.base.mass = base.number("mass");
  cfg.base.inertia = base.vec3("inertia");
  cfg.collision_radius = root.number("collision_radius");

  const auto start = root.child("start");
  cfg.start.position = start.vec3("position");
  const Vec3 rpy = start.vec3("orientation");
  cfg.start.orientation = {rpy.x(), rpy.y(), rpy.z()};
  cfg.start.velocity = start.vec3("velocity", Vec3::Zero());

  if (!root.has("components") || !doc.at("components").is_array()) {
    root.fail("components", "expected an array");
  }
  const Json& list = doc.at("components");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const detail::Reader item(list[i], "components[" + std::to_string(i) + "]");
    ComponentSpec spec;
    spec.name = item.string("name");
    spec.mass = item.number("mass", 0.0);
    spec.params = detail::read_params(item.string("kind"), item.child("params"), item);
    cfg.components.push_back(std::move(spec));
  }

  if (root.has("controller")) {
    const auto c = root.child("controller");
    ControllerConfig ctl;
    ctl.rate = detail::read_gains(c.child("rate"));
    ctl.attitude = detail::read_gains(c.child("attitude"));
    ctl.velocity = detail::read_gains(c.child("velocity"));
    ctl.position = detail::read_gains(c.child("position"));
    ctl.hover_thrust = c.number("hover_thrust");
    ctl.max_tilt = c.number("max_tilt");
    ctl.max_climb_rate = c.number("max_climb_rate");
    ctl.max_lateral_speed = c.number("max_lateral_speed");
    cfg.controller = ctl;
  }
  return cfg;
}

inline Json config_to_json(const DroneConfig& cfg) {
  Json doc;
  doc["name"] = cfg.name;
  doc["kind"] = cfg.kind;
  doc["base"] = {{"mass", cfg.base.mass}, {"inertia", detail::vec_json(cfg.base.inertia)}};
  doc["collision_radius"] = cfg.collision_radius;
  doc["start"] = {{"position", detail::vec_json(cfg.start.position)},
                  {"orientation", Json::array({cfg.start.orientation.roll,
                                               cfg.start.orientation.pitch,
                                               cfg.start.orientation.yaw})},
                  {"velocity", detail::vec_json(cfg.start.velocity)}};
  Json list = Json::array();
  for (const auto& c : cfg.components) {
    list.push_back({{"name", c.name},
                    {"kind", std::string(c.kind())},
                    {"mass", c.mass},
                    {"params", std::visit(detail::ParamsToJson{}, c.params)}});
  }
  doc["components"] = std::move(list);
  if (cfg.controller) {
    const auto& c = *cfg.controller;
    doc["controller"] = {{"rate", detail::gains_json(c.rate)},
                         {"attitude", detail::gains_json(c.attitude)},
                         {"velocity", detail::gains_json(c.velocity)},
                         {"position", detail::gains_json(c.position)},
                         {"hover_thrust", c.hover_thrust},
                         {"max_tilt", c.max_tilt},
                         {"max_climb_rate", c.max_climb_rate},
                         {"max_lateral_speed", c.max_lateral_speed}};
  }
  return doc;
}

inline DroneConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return config_from_json(doc);
}

/// Serialized form: two-space indented JSON with shortest round-trip numbers.
inline std::string serialize_config(const DroneConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline DroneConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

// ---------------------------------------------------------------------------
// Invariant checks.

struct Violation {
  std::string field;
  std::string message;
};

namespace detail {

class Checker {
 public:
  void expect(bool ok, std::string field, std::string message) {
    if (!ok) out.push_back({std::move(field), std::move(message)});
  }
  void positive(double v, const std::string& field) { expect(std::isfinite(v) && v > 0.0, field, "must be > 0"); }
  void non_negative(double v, const std::string& field) {
    expect(std::isfinite(v) && v >= 0.0, field, "must be >= 0");
  }
  void finite(const Vec3& v, const std::string& field) { expect(v.allFinite(), field, "must be finite"); }
  void unit(const Vec3& v, const std::string& field) {
    expect(v.allFinite() && std::abs(v.norm() - 1.0) <= 1e-9, field, "must be a unit vector");
  }

  std::vector<Violation> out;
};

struct ParamsChecker {
  Checker& c;
  std::string path;

  void operator()(const MotorParams& p) const {
    c.positive(p.tau, path + ".tau");
    c.positive(p.max_rpm, path + ".max_rpm");
    c.non_negative(p.noise_std, path + ".noise_std");
    c.positive(p.thrust_coef, path + ".thrust_coef");
    c.non_negative(p.torque_coef, path + ".torque_coef");
    c.unit(p.thrust_axis, path + ".thrust_axis");
    c.expect(p.rotation_sign == 1.0 || p.rotation_sign == -1.0, path + ".rotation_sign", "must be +1 or -1");
    c.finite(p.mount_point, path + ".mount_point");
  }
  void operator()(const BoosterParams& p) const {
    c.positive(p.fuel_max, path + ".fuel_max");
    c.non_negative(p.fuel_rate, path + ".fuel_rate");
    c.expect(p.inertia_max.allFinite() && (p.inertia_max.array() >= 0.0).all(), path + ".inertia_max",
             "must be finite and >= 0");
    c.non_negative(p.thrust_min, path + ".thrust_min");
    c.expect(std::isfinite(p.thrust_max) && p.thrust_min < p.thrust_max, path + ".thrust_max",
             "must exceed thrust_min");
    c.positive(p.tau, path + ".tau");
    c.non_negative(p.noise_std, path + ".noise_std");
    c.unit(p.thrust_axis, path + ".thrust_axis");
    c.finite(p.mount_point, path + ".mount_point");
    c.finite(p.tank_point, path + ".tank_point");
  }
  void operator()(const GimbalParams& p) const {
    c.unit(p.axis_a, path + ".axis_a");
    c.unit(p.axis_b, path + ".axis_b");
    c.positive(p.limit_a, path + ".limit_a");
    c.positive(p.limit_b, path + ".limit_b");
    c.positive(p.tau, path + ".tau");
  }
  void operator()(const SurfaceParams& p) const {
    c.expect(p.stall_aoa_neg < p.zero_lift_aoa && p.zero_lift_aoa < p.stall_aoa_pos, path + ".zero_lift_aoa",
             "must lie strictly between the stall angles");
    c.non_negative(p.cd0, path + ".cd0");
    c.positive(p.cl_alpha, path + ".cl_alpha");
    c.positive(p.viscosity_correction, path + ".viscosity_correction");
    c.positive(p.area, path + ".area");
    c.positive(p.span, path + ".span");
    c.unit(p.chord_dir, path + ".chord_dir");
    c.unit(p.normal_dir, path + ".normal_dir");
    c.expect(std::abs(p.chord_dir.dot(p.normal_dir)) <= 1e-9, path + ".normal_dir",
             "must be perpendicular to chord_dir");
    c.finite(p.mount_point, path + ".mount_point");
    c.expect(p.flap_ratio >= 0.0 && p.flap_ratio <= 1.0, path + ".flap_ratio", "must lie in [0, 1]");
    c.non_negative(p.max_deflection, path + ".max_deflection");
    c.positive(p.tau, path + ".tau");
    c.positive(p.stall_blend, path + ".stall_blend");
  }
};

}  // namespace detail

/// Checks every type invariant; an empty result means the config is usable.
inline std::vector<Violation> validate(const DroneConfig& cfg) {
  detail::Checker c;
  c.expect(cfg.kind == "quadx" || cfg.kind == "fixedwing" || cfg.kind == "rocket", "kind",
           "must be one of quadx, fixedwing, rocket");
  c.positive(cfg.base.mass, "base.mass");
  c.expect(cfg.base.inertia.allFinite() && (cfg.base.inertia.array() > 0.0).all(), "base.inertia",
           "entries must be > 0");
  c.positive(cfg.collision_radius, "collision_radius");
  c.finite(cfg.start.position, "start.position");
  c.expect(all_finite(cfg.start.orientation), "start.orientation", "must be finite");
  c.finite(cfg.start.velocity, "start.velocity");

  bool has_actuator = false;
  for (std::size_t i = 0; i < cfg.components.size(); ++i) {
    const auto& comp = cfg.components[i];
    const std::string path = "components[" + std::to_string(i) + "]";
    c.non_negative(comp.mass, path + ".mass");
    std::visit(detail::ParamsChecker{c, path + ".params"}, comp.params);
    has_actuator = has_actuator || comp.kind() == "motor" || comp.kind() == "booster" ||
                   comp.kind() == "gimbal" ||
                   (comp.kind() == "surface" && std::get<SurfaceParams>(comp.params).max_deflection > 0.0);
  }
  c.expect(has_actuator, "components", "must contain at least one actuator");

  if (cfg.controller) {
    const auto& ctl = *cfg.controller;
    auto gains = [&](const PidGains& g, const std::string& path) {
      c.finite(g.kp, path + ".kp");
      c.finite(g.ki, path + ".ki");
      c.finite(g.kd, path + ".kd");
      c.finite(g.output_limit, path + ".output_limit");
      c.finite(g.integral_limit, path + ".integral_limit");
    };
    gains(ctl.rate, "controller.rate");
    gains(ctl.attitude, "controller.attitude");
    gains(ctl.velocity, "controller.velocity");
    gains(ctl.position, "controller.position");
    c.positive(ctl.max_tilt, "controller.max_tilt");
    c.positive(ctl.max_climb_rate, "controller.max_climb_rate");
    c.positive(ctl.max_lateral_speed, "controller.max_lateral_speed");
  }
  return c.out;
}

}  // namespace flyt
