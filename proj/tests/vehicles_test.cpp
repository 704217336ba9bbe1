#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "flyt/aviary.hpp"
#include "flyt/config.hpp"
#include "flyt/drones/presets.hpp"
#include "test_support.hpp"

using namespace flyt;
using flyt::testing::Gen;

namespace {

// Steady-state body torque of a mixed command on the Crazyflie motor layout.
Vec3 steady_torque(const Throttles& t) {
  const DroneConfig cfg = crazyflie_config();
  const auto motors = cfg.all_of<MotorParams>();
  std::vector<AppliedLoad> loads;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = std::get<MotorParams>(motors[i]->params);
    loads.push_back(motor_loads({t[i] * p.max_rpm}, p));
  }
  return accumulate(loads).torque;
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

DroneConfig noiseless(DroneConfig cfg) {
  for (auto& c : cfg.components) {
    if (auto* m = std::get_if<MotorParams>(&c.params)) m->noise_std = 0.0;
  }
  return cfg;
}

// Drone that records how often the aviary drives it.
class CountingDrone : public Drone {
 public:
  explicit CountingDrone(double z, bool diverge = false) : Drone(make_config(z)), diverge_(diverge) {}

  std::size_t setpoint_size() const override { return 1; }
  MassProperties mass_properties() const override { return config_.base; }
  std::vector<double> aux_state() const override { return {}; }

  int controls = 0;
  int physics = 0;

 protected:
  void compute_commands(double) override { ++controls; }
  void zero_commands() override { ++controls; }
  std::vector<AppliedLoad> step_actuators(double, NoiseSource*) override {
    ++physics;
    if (diverge_) return {{Vec3(std::nan(""), 0, 0), Vec3::Zero(), Vec3::Zero()}};
    return {{Vec3(0, 0, kGravity), Vec3::Zero(), Vec3::Zero()}};
  }

 private:
  static DroneConfig make_config(double z) {
    DroneConfig c;
    c.name = "counter";
    c.kind = "test";
    c.base = {1.0, Vec3::Ones()};
    c.collision_radius = 0.5;
    c.start.position = Vec3(0, 0, z);
    return c;
  }

  bool diverge_;
};

std::string config_path(const std::string& name) { return std::string(FLYT_CONFIG_DIR) + "/" + name + ".json"; }

}  // namespace

TEST(Mixer, PureThrustAndZero) {
  EXPECT_EQ(quadx_mix({0, 0, 0, 0.37}), (Throttles{0.37, 0.37, 0.37, 0.37}));
  EXPECT_EQ(quadx_mix({0, 0, 0, 0}), (Throttles{0, 0, 0, 0}));
}

TEST(Mixer, PureRollIsLeftRightDifferential) {
  const Throttles t = quadx_mix({0.1, 0, 0, 0.5});
  EXPECT_DOUBLE_EQ(t[0], t[2]);
  EXPECT_DOUBLE_EQ(t[1], t[3]);
  EXPECT_GT(t[0], t[1]);
  EXPECT_NEAR(t[0] + t[1] + t[2] + t[3], 2.0, 1e-15);
  EXPECT_GT(steady_torque(t).x(), 0.0);
  EXPECT_NEAR(steady_torque(t).y(), 0.0, 1e-15);
}

TEST(Mixer, SingleAxisTorqueSignMatchesCommand) {
  Gen gen(31);
  for (int i = 0; i < 3000; ++i) {
    MotorCommands cmd{0, 0, 0, gen.uniform(0.05, 0.95)};
    const int axis = i % 3;
    cmd[axis] = gen.uniform(-2, 2);
    const Throttles t = quadx_mix(cmd);
    for (double v : t) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    EXPECT_EQ(sign(steady_torque(t)[axis]), sign(cmd[axis])) << i;
  }
}

TEST(Mixer, DominantAxisSignSurvivesCoupling) {
  Gen gen(32);
  for (int i = 0; i < 3000; ++i) {
    MotorCommands cmd{gen.uniform(-0.05, 0.05), gen.uniform(-0.05, 0.05), gen.uniform(-0.05, 0.05),
                      gen.uniform(0.2, 0.8)};
    const int axis = i % 3;
    cmd[axis] = (gen.coin() ? 1 : -1) * gen.uniform(0.2, 0.5);
    const Vec3 torque = steady_torque(quadx_mix(cmd));
    EXPECT_EQ(sign(torque[axis]), sign(cmd[axis])) << i;
  }
}

TEST(Mixer, SaturationScalesDifferentialUniformly) {
  const Throttles t = quadx_mix({0.4, 0.2, 0.0, 0.9});
  const Throttles u = quadx_mix({0.004, 0.002, 0.0, 0.9});
  const double k = (t[0] - 0.9) / (u[0] - 0.9);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LE(t[i], 1.0);
    EXPECT_NEAR(t[i] - 0.9, k * (u[i] - 0.9), 1e-12);
  }
  EXPECT_NEAR(*std::max_element(t.begin(), t.end()), 1.0, 1e-12);
}

TEST(Cascade, RateModeAtEquilibriumPassesThrust) {
  QuadXController c(*crazyflie_config().controller);
  RigidBodyState s;
  s.position = Vec3(0, 0, 1);
  const MotorCommands cmd = c.step(s, FlightMode::kRates, {0, 0, 0, 0.42}, 1.0 / 120);
  EXPECT_EQ(quadx_mix(cmd), (Throttles{0.42, 0.42, 0.42, 0.42}));
}

TEST(Cascade, ZeroErrorGivesZeroCorrectionInEveryMode) {
  Gen gen(33);
  for (const auto& cfg : {crazyflie_config(), generic_quadx_config()}) {
    for (int trial = 0; trial < 20; ++trial) {
      RigidBodyState s;
      s.position = gen.vec(-3, 3);
      s.orientation.yaw = gen.uniform(-3, 3);
      const double yaw = s.orientation.yaw;
      const Vec3 p = s.position;
      const std::vector<std::pair<FlightMode, Setpoint>> cases{
          {FlightMode::kRates, {0, 0, 0, 0.5}},
          {FlightMode::kAttitude, {0, 0, yaw, 0}},
          {FlightMode::kVelocityYawRate, {0, 0, 0, 0}},
          {FlightMode::kVelocityYaw, {0, 0, yaw, 0}},
          {FlightMode::kPositionYawRate, {p.x(), p.y(), 0, p.z()}},
          {FlightMode::kPosition, {p.x(), p.y(), yaw, p.z()}}};
      for (const auto& [mode, sp] : cases) {
        QuadXController c(*cfg.controller);
        for (int k = 0; k < 3; ++k) {
          const MotorCommands cmd = c.step(s, mode, sp, 1.0 / 120);
          EXPECT_LT(std::abs(cmd[0]), 1e-6);
          EXPECT_LT(std::abs(cmd[1]), 1e-6);
          EXPECT_LT(std::abs(cmd[2]), 1e-6);
          if (mode != FlightMode::kRates) EXPECT_NEAR(cmd[3], cfg.controller->hover_thrust, 1e-12);
        }
      }
    }
  }
}

TEST(Cascade, PositionAboveCommandsClimb) {
  const DroneConfig cfg = crazyflie_config();
  QuadXController c(*cfg.controller);
  RigidBodyState s;
  s.position = Vec3(0.5, -0.5, 1.0);
  const MotorCommands cmd = c.step(s, FlightMode::kPosition, {0.5, -0.5, 0.0, 2.0}, 1.0 / 120);
  EXPECT_GT(cmd[3], cfg.controller->hover_thrust);
  QuadXController d(*cfg.controller);
  EXPECT_LT(d.step(s, FlightMode::kPosition, {0.5, -0.5, 0.0, 0.0}, 1.0 / 120)[3], cfg.controller->hover_thrust);
}

TEST(Cascade, ForwardTargetPitchesNoseDown) {
  QuadXController c(*crazyflie_config().controller);
  RigidBodyState s;
  s.position = Vec3(0, 0, 1);
  // A positive pitch rate command rotates the nose downwards.
  const MotorCommands cmd = c.step(s, FlightMode::kPosition, {1.0, 0.0, 0.0, 1.0}, 1.0 / 120);
  EXPECT_GT(cmd[1], 0.0);
  EXPECT_NEAR(cmd[0], 0.0, 1e-12);
}

TEST(Presets, CrazyflieThrustToWeight) {
  const DroneConfig cfg = crazyflie_config();
  double total = 0.0;
  for (const auto* m : cfg.all_of<MotorParams>()) {
    const auto& p = std::get<MotorParams>(m->params);
    total += motor_loads({p.max_rpm}, p).force.z();
  }
  const auto drone = make_drone(cfg);
  EXPECT_NEAR(total, 8.0 * drone->mass_properties().mass * kGravity, 1e-12);
  EXPECT_DOUBLE_EQ(drone->mass_properties().mass, 0.027);
}

TEST(Presets, GenericQuadIsOneKilogram) {
  EXPECT_EQ(make_drone(generic_quadx_config())->mass_properties().mass, 1.0);
}

TEST(Presets, FixedwingMassAndThrust) {
  const auto drone = make_drone(fixedwing_config());
  const auto& fw = static_cast<const Fixedwing&>(*drone);
  EXPECT_NEAR(fw.mass_properties().mass, 2.35, 1e-12);
  const double thrust = motor_loads({fw.motor().max_rpm}, fw.motor()).force.norm();
  EXPECT_NEAR(thrust, 0.8 * 2.35 * 9.81, 1e-9);
  EXPECT_NEAR(thrust, 18.44, 0.01);
}

TEST(Presets, AllValidateAndRoundTrip) {
  for (const char* name : {"crazyflie", "generic_quadx", "fixedwing", "rocket"}) {
    const DroneConfig cfg = preset_config(name);
    EXPECT_TRUE(validate(cfg).empty()) << name;
    const std::string text = serialize_config(cfg);
    EXPECT_EQ(serialize_config(parse_config(text)), text) << name;
  }
  EXPECT_THROW(preset_config("blimp"), LookupError);
}

TEST(Presets, ShippedFilesMatchPresets) {
  for (const char* name : {"crazyflie", "generic_quadx", "fixedwing", "rocket"}) {
    EXPECT_EQ(serialize_config(load_config(config_path(name))), serialize_config(preset_config(name))) << name;
  }
}

TEST(Config, ViolationsNameTheField) {
  DroneConfig cfg = crazyflie_config();
  cfg.base.mass = -0.1;
  std::get<MotorParams>(cfg.components[2].params).thrust_axis = Vec3(0, 0.2, 1);
  const auto v = validate(cfg);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].field, "base.mass");
  EXPECT_EQ(v[1].field, "components[2].params.thrust_axis");
  EXPECT_THROW(make_drone(DroneConfig{}), ConfigError);
}

TEST(Config, ParseErrorsAreConfigErrors) {
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(parse_config("{\"name\": \"x\"}"), ConfigError);
  nlohmann::json doc = config_to_json(crazyflie_config());
  doc["components"][0]["params"]["thrust_axis"] = "up";
  EXPECT_THROW(config_from_json(doc), ConfigError);
}

TEST(Config, AssemblyRejectsMissingParts) {
  DroneConfig quad = crazyflie_config();
  quad.components.pop_back();
  EXPECT_THROW(make_drone(quad), ConfigError);
  DroneConfig wing = fixedwing_config();
  wing.components.erase(wing.components.begin() + 3);
  EXPECT_THROW(make_drone(wing), ConfigError);
  DroneConfig rocket = rocket_config();
  rocket.components.erase(rocket.components.begin());
  EXPECT_THROW(make_drone(rocket), ConfigError);
}

TEST(QuadXDrone, FullThrottleNetForce) {
  Aviary aviary({240, 120, 30}, 1);
  const int id = aviary.add(make_drone(noiseless(crazyflie_config())));
  aviary.drone(id).set_state([] {
    RigidBodyState s;
    s.position = Vec3(0, 0, 1000);
    return s;
  }());
  aviary.set_mode(id, FlightMode::kRaw);
  aviary.set_setpoint(id, std::vector<double>{1, 1, 1, 1});
  for (int i = 0; i < 60; ++i) aviary.step();
  const double v0 = aviary.drone(id).state().velocity.z();
  aviary.step();
  const double accel = (aviary.drone(id).state().velocity.z() - v0) * 30.0;
  EXPECT_NEAR(accel, (8.0 - 1.0) * kGravity, 1e-6);
}

TEST(QuadXDrone, RawPassthroughAndDisarm) {
  Aviary aviary;
  const int id = aviary.add(make_drone(crazyflie_config()));
  aviary.set_mode(id, FlightMode::kRaw);
  aviary.set_setpoint(id, std::vector<double>{0.5, 0.5, 0.5, 0.5});
  aviary.step();
  const auto& quad = static_cast<const QuadX&>(aviary.drone(id));
  EXPECT_EQ(quad.throttles(), (Throttles{0.5, 0.5, 0.5, 0.5}));
  aviary.set_armed(id, false);
  aviary.step();
  EXPECT_EQ(quad.throttles(), (Throttles{0, 0, 0, 0}));
  EXPECT_THROW(aviary.set_setpoint(id, std::vector<double>{0.1, 0.2, 0.3}), ContractError);
  EXPECT_THROW(aviary.set_setpoint(id, std::vector<double>{0.1, 0.2, 0.3, std::nan("")}), ContractError);
  EXPECT_THROW(aviary.set_mode(7, FlightMode::kRates), LookupError);
  EXPECT_THROW(aviary.drone(-1), LookupError);
}

TEST(QuadXDrone, HoverHoldDriftsLessThanTenCentimetres) {
  for (const auto& cfg : {crazyflie_config(), generic_quadx_config()}) {
    Aviary aviary({240, 120, 30}, 5);
    const int id = aviary.add(make_drone(cfg));
    aviary.set_mode(id, FlightMode::kPosition);
    aviary.set_setpoint(id, std::vector<double>{0.0, 0.0, 0.0, 1.0});
    // Spin up first, then measure drift from the settled point.
    for (int i = 0; i < 60; ++i) aviary.step();
    const Vec3 start(0, 0, 1);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      aviary.step();
      worst = std::max(worst, (aviary.drone(id).state().position - start).norm());
    }
    EXPECT_LT(worst, 0.1) << cfg.name;
  }
}

TEST(FixedwingDrone, AileronReachesLimit) {
  Aviary aviary;
  const int id = aviary.add(make_drone(fixedwing_config()));
  aviary.set_setpoint(id, std::vector<double>{1.0, 0.0, 0.0, 0.5});
  for (int i = 0; i < 30; ++i) aviary.step();
  const auto& fw = static_cast<const Fixedwing&>(aviary.drone(id));
  EXPECT_NEAR(fw.surface_states()[1].deflection, deg_to_rad(30.0), 1e-9);
  EXPECT_NEAR(fw.surface_states()[2].deflection, -deg_to_rad(30.0), 1e-9);
  EXPECT_THROW(aviary.set_mode(id, FlightMode::kPosition), ContractError);
}

TEST(FixedwingDrone, TrimmedFlightKeepsPitchBounded) {
  Aviary aviary;
  const int id = aviary.add(make_drone(fixedwing_config()));
  aviary.set_setpoint(id, std::vector<double>{0.0, 0.0, 0.0, 0.6});
  for (int i = 0; i < 3 * 30; ++i) {
    aviary.step();
    ASSERT_LT(std::abs(aviary.drone(id).state().orientation.pitch), kPi / 4) << i;
  }
}

TEST(RocketDrone, FuelUseFollowsIgnition) {
  Aviary aviary;
  const int id = aviary.add(make_drone(rocket_config()));
  const auto& rocket = static_cast<const Rocket&>(aviary.drone(id));
  const double full = rocket.booster_state().fuel;
  for (int i = 0; i < 10; ++i) aviary.step();
  EXPECT_EQ(rocket.booster_state().fuel, full);

  aviary.set_setpoint(id, std::vector<double>{0, 0, 0, 1, 1, 0, 0});
  double prev = rocket.booster_state().fuel;
  for (int i = 0; i < 10; ++i) {
    aviary.step();
    EXPECT_LT(rocket.booster_state().fuel, prev);
    prev = rocket.booster_state().fuel;
  }
  EXPECT_GT(rocket.mass_properties().mass, 25.6);
}

TEST(RocketDrone, GimbalTiltStaysWithinLimits) {
  Gen gen(34);
  Aviary aviary;
  const int id = aviary.add(make_drone(rocket_config()));
  const auto& flying = static_cast<const Rocket&>(aviary.drone(id));
  const GimbalParams p = flying.gimbal().params();
  const double bound = std::acos(std::cos(p.limit_a) * std::cos(p.limit_b));
  for (int i = 0; i < 200; ++i) {
    aviary.set_setpoint(id, std::vector<double>{0, 0, 0, 0, 0, gen.uniform(-1.5, 1.5), gen.uniform(-1.5, 1.5)});
    aviary.step();
    const double angle = std::acos(std::clamp(flying.thrust_direction().dot(p.axis_a.cross(p.axis_b)), -1.0, 1.0));
    EXPECT_LE(angle, bound + 1e-12);
  }
}

TEST(Scheduler, Ratios) {
  EXPECT_EQ(schedule({240, 120, 30}), (Schedule{2, 4}));
  EXPECT_EQ(schedule({240, 240, 240}), (Schedule{1, 1}));
  EXPECT_THROW(schedule({240, 100, 30}), ConfigError);
  EXPECT_THROW(schedule({240, 120, 50}), ConfigError);
  EXPECT_THROW(schedule({120, 240, 30}), ConfigError);
  EXPECT_THROW(Aviary({240, 100, 30}), ConfigError);
}

TEST(Scheduler, InstrumentedCountsOverThousandSteps) {
  Aviary aviary({240, 120, 30}, 0);
  auto owned = std::make_unique<CountingDrone>(1e6);
  CountingDrone* d = owned.get();
  aviary.add(std::move(owned));
  for (int i = 1; i <= 1000; ++i) {
    aviary.step();
    ASSERT_EQ(d->physics, 8 * i);
    ASSERT_EQ(d->controls, 4 * i);
  }
  EXPECT_EQ(aviary.physics_ticks(), 8000);
  EXPECT_EQ(aviary.control_ticks(), 4000);
  EXPECT_EQ(aviary.agent_steps(), 1000);
  EXPECT_DOUBLE_EQ(aviary.elapsed(), 8000.0 / 240.0);
}

TEST(AviaryEvents, FarApartIsQuietAndBelowGroundContactsImmediately) {
  Aviary aviary;
  aviary.add(std::make_unique<CountingDrone>(10.0));
  auto far = std::make_unique<CountingDrone>(10.0);
  RigidBodyState s = far->state();
  s.position.x() = 50.0;
  far->set_state(s);
  aviary.add(std::move(far));
  EXPECT_TRUE(aviary.step().empty());

  Aviary low;
  low.add(std::make_unique<CountingDrone>(-1.0));
  const auto events = low.step();
  ASSERT_FALSE(events.empty());
  EXPECT_TRUE(events.front().ground());
  EXPECT_EQ(events.front().tick, 1);
  EXPECT_EQ(low.drone(0).state().position.z(), 0.5);
}

TEST(AviaryEvents, OverlappingDronesCollide) {
  Aviary aviary;
  aviary.add(std::make_unique<CountingDrone>(10.0));
  aviary.add(std::make_unique<CountingDrone>(10.5));
  const auto events = aviary.step();
  ASSERT_EQ(events.size(), 8u);
  EXPECT_EQ(events[0], (ContactEvent{0, 1, 1, 0.0}));
  EXPECT_EQ(aviary.contact_log().size(), 8u);
}

TEST(AviaryEvents, DivergenceCarriesDroneId) {
  Aviary aviary;
  aviary.add(std::make_unique<CountingDrone>(10.0));
  aviary.add(std::make_unique<CountingDrone>(10.0, true));
  try {
    aviary.step();
    FAIL() << "expected divergence";
  } catch (const SimulationDiverged& e) {
    EXPECT_EQ(e.drone_id(), 1);
  }
}

TEST(AviaryDeterminism, SameSeedSameStates) {
  auto run = [](std::uint64_t seed) {
    Aviary aviary({240, 120, 30}, seed);
    aviary.add(make_drone(crazyflie_config()));
    aviary.add(make_drone(generic_quadx_config()));
    aviary.drone(1).set_state([] {
      RigidBodyState s;
      s.position = Vec3(3, 0, 1);
      return s;
    }());
    aviary.set_mode(0, FlightMode::kPosition);
    aviary.set_setpoint(0, std::vector<double>{1.0, 1.0, 0.5, 1.5});
    aviary.set_setpoint(1, std::vector<double>{0.2, -0.1, 0.0, 0.6});
    for (int i = 0; i < 90; ++i) aviary.step();
    return std::array<RigidBodyState, 2>{aviary.drone(0).state(), aviary.drone(1).state()};
  };
  EXPECT_EQ(run(9), run(9));
  EXPECT_NE(run(9)[0], run(10)[0]);
}
