#pragma once

// Flapped lifting surface.
//
// Coefficient curves are tabulated once over [-pi, pi]:
//   attached flow   CL = CLa (a - a0),  CD = CD0 + CL^2 / (pi AR k),  CM = 0
//   separated flow  CL = 2 sin a cos a, CD = 2 sin^2 a + CD0 (1 + sin^2(a/2)),
//                   CM = -0.42 sin a
// with a linear blend of width `stall_blend` past each stall angle, during
// which the attached-flow values are held at their stall-angle level. The flap
// shifts the zero-lift angle by -eff * ratio^exp * delta and adds a drag
// increment proportional to |delta| * ratio.

#include <cmath>
#include <cstddef>
#include <vector>

#include "flyt/components/first_order.hpp"
#include "flyt/frames.hpp"
#include "flyt/rigid_body.hpp"

namespace flyt {

inline constexpr double kAirDensity = 1.225;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

struct SurfaceParams {
  double zero_lift_aoa = 0.0;                 // alpha_0, rad
  double stall_aoa_pos = deg_to_rad(15.0);    // rad
  double stall_aoa_neg = deg_to_rad(-15.0);   // rad
  double cd0 = 0.02;
  double cl_alpha = 5.0;                      // 1/rad
  double viscosity_correction = 0.9;          // k_s_eta
  double area = 0.1;                          // m^2
  double span = 1.0;                          // m
  Vec3 chord_dir = Vec3::UnitX();             // points toward the leading edge
  Vec3 normal_dir = Vec3::UnitZ();            // lift side
  Vec3 mount_point = Vec3::Zero();
  double flap_ratio = 0.0;                    // flap chord / chord
  double max_deflection = 0.0;                // delta_max, rad
  double tau = 0.05;                          // s
  double stall_blend = deg_to_rad(15.0);      // rad
  double flap_effectiveness = 0.9;
  double flap_exponent = 0.7;
  double flap_drag = 0.01;

  double aspect_ratio() const { return span * span / area; }
  Vec3 span_dir() const { return chord_dir.cross(normal_dir); }
};

struct SurfaceState {
  double deflection = 0.0;  // delta, rad
};

struct Coefficients {
  double cl = 0.0;
  double cd = 0.0;
  double cm = 0.0;
};

/// Polar sampled uniformly on [-pi, pi], linearly interpolated.
class CoefficientCurves {
 public:
  static constexpr std::size_t kSamples = 3601;  // 0.1 degree spacing

  CoefficientCurves() = default;

  template <class Fn>
  explicit CoefficientCurves(Fn&& exact) : cl_(kSamples), cd_(kSamples), cm_(kSamples) {
    for (std::size_t i = 0; i < kSamples; ++i) {
      const Coefficients c = exact(angle_at(i));
      cl_[i] = c.cl;
      cd_[i] = c.cd;
      cm_[i] = c.cm;
    }
  }

  static double spacing() { return 2.0 * kPi / static_cast<double>(kSamples - 1); }
  static double angle_at(std::size_t i) { return -kPi + static_cast<double>(i) * spacing(); }

  Coefficients operator()(double aoa) const {
    const double a = wrap_angle(aoa);
    const double pos = (a + kPi) / spacing();
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= kSamples - 1) i = kSamples - 2;
    const double t = pos - static_cast<double>(i);
    auto lerp = [&](const std::vector<double>& v) { return v[i] + t * (v[i + 1] - v[i]); };
    return {lerp(cl_), lerp(cd_), lerp(cm_)};
  }

  const std::vector<double>& cl() const { return cl_; }
  const std::vector<double>& cd() const { return cd_; }
  const std::vector<double>& cm() const { return cm_; }

 private:
  std::vector<double> cl_, cd_, cm_;
};

namespace detail {

inline Coefficients attached_flow(const SurfaceParams& p, double aoa) {
  const double cl = p.cl_alpha * (aoa - p.zero_lift_aoa);
  const double cd = p.cd0 + cl * cl / (kPi * p.aspect_ratio() * p.viscosity_correction);
  return {cl, cd, 0.0};
}

inline Coefficients separated_flow(const SurfaceParams& p, double aoa) {
  const double s = std::sin(aoa);
  const double h = std::sin(0.5 * aoa);
  return {2.0 * s * std::cos(aoa), 2.0 * s * s + p.cd0 * (1.0 + h * h), -0.42 * s};
}

inline Coefficients mix(const Coefficients& a, const Coefficients& b, double w) {
  return {(1.0 - w) * a.cl + w * b.cl, (1.0 - w) * a.cd + w * b.cd, (1.0 - w) * a.cm + w * b.cm};
}

}  // namespace detail

/// Exact (untabulated) coefficients at one angle of attack.
inline Coefficients polar_point(const SurfaceParams& p, double aoa) {
  if (aoa >= p.stall_aoa_neg && aoa <= p.stall_aoa_pos) return detail::attached_flow(p, aoa);
  if (aoa > p.stall_aoa_pos && aoa < p.stall_aoa_pos + p.stall_blend) {
    const double w = (aoa - p.stall_aoa_pos) / p.stall_blend;
    return detail::mix(detail::attached_flow(p, p.stall_aoa_pos), detail::separated_flow(p, aoa), w);
  }
  if (aoa < p.stall_aoa_neg && aoa > p.stall_aoa_neg - p.stall_blend) {
    const double w = (p.stall_aoa_neg - aoa) / p.stall_blend;
    return detail::mix(detail::attached_flow(p, p.stall_aoa_neg), detail::separated_flow(p, aoa), w);
  }
  return detail::separated_flow(p, aoa);
}

inline CoefficientCurves build_polar(const SurfaceParams& p) {
  return CoefficientCurves([&](double aoa) { return polar_point(p, aoa); });
}

inline Stepped<SurfaceState> surface_step(const SurfaceState& s, const SurfaceParams& p,
                                          double command, double physics_rate) {
  require_stable_lag(p.tau, physics_rate, "surface_step");
  const auto [nu, saturated] = clamp_command(command, -1.0, 1.0);
  return {{first_order_step(s.deflection, nu * p.max_deflection, p.tau, physics_rate)}, saturated};
}

/// Angle of attack of `airflow` (air velocity relative to the surface, body
/// frame) after projection onto the chord-normal plane.
inline double angle_of_attack(const SurfaceParams& p, const Vec3& airflow) {
  return std::atan2(airflow.dot(p.normal_dir), -airflow.dot(p.chord_dir));
}

/// Lift, drag and pitching moment at the mount point. Lift is normal to the
/// projected flow inside the chord-normal plane, drag is along the flow and
/// the moment acts about the span axis.
inline AppliedLoad surface_loads(const SurfaceState& s, const SurfaceParams& p,
                                 const CoefficientCurves& curves, const Vec3& airflow,
                                 double air_density = kAirDensity) {
  if (!(air_density > 0.0)) throw ContractError("air density must be positive");
  AppliedLoad load;
  load.point = p.mount_point;

  const Vec3 span = p.span_dir();
  const Vec3 flow = airflow - airflow.dot(span) * span;
  const double speed_sq = flow.squaredNorm();
  if (speed_sq <= 0.0) return load;

  const double flap_gain = p.flap_ratio > 0.0 ? std::pow(p.flap_ratio, p.flap_exponent) : 0.0;
  const double alpha0_shift = -p.flap_effectiveness * flap_gain * s.deflection;
  Coefficients c = curves(angle_of_attack(p, flow) - alpha0_shift);
  c.cd += p.flap_drag * std::abs(s.deflection) * p.flap_ratio;

  const double q = 0.5 * air_density * p.area * speed_sq;
  const Vec3 flow_dir = flow / std::sqrt(speed_sq);
  load.force = q * (c.cl * flow_dir.cross(span) + c.cd * flow_dir);
  load.torque = q * c.cm * span;
  return load;
}

/// A surface with its polar built once.
class LiftingSurface {
 public:
  explicit LiftingSurface(const SurfaceParams& params)
      : params_(params), curves_(build_polar(params)) {}

  const SurfaceParams& params() const { return params_; }
  const CoefficientCurves& curves() const { return curves_; }

  AppliedLoad loads(const SurfaceState& s, const Vec3& airflow,
                    double air_density = kAirDensity) const {
    return surface_loads(s, params_, curves_, airflow, air_density);
  }

 private:
  SurfaceParams params_;
  CoefficientCurves curves_;
};

}  // namespace flyt
