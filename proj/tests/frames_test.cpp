#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "flyt/frames.hpp"
#include "flyt/rigid_body.hpp"
#include "test_support.hpp"

using namespace flyt;
using flyt::testing::Gen;

namespace {

// Independent construction: compose elementary rotations with Eigen's
// angle-axis type. Body-to-ground is Rz(yaw) Ry(pitch) Rx(roll).
RotationMatrix reference_ground_to_body(const EulerAngles& a) {
  const Eigen::Matrix3d body_to_world = (Eigen::AngleAxisd(a.yaw, Vec3::UnitZ()) *
                                         Eigen::AngleAxisd(a.pitch, Vec3::UnitY()) *
                                         Eigen::AngleAxisd(a.roll, Vec3::UnitX()))
                                            .toRotationMatrix();
  return body_to_world.transpose();
}

// Rotation of basis vectors by a unit quaternion.
RotationMatrix reference_axis_rotation(const Vec3& axis, double angle) {
  const Eigen::Quaterniond q(Eigen::AngleAxisd(angle, axis));
  RotationMatrix r;
  for (int i = 0; i < 3; ++i) r.col(i) = q * Vec3::Unit(i);
  return r;
}

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;

double kinetic_energy(const Vec3& w, const Vec3& j) { return 0.5 * w.dot(j.cwiseProduct(w)); }

// Classical RK4 on the torque-free Euler equations.
Vec3 rk4_free_rotation(Vec3 w, const Vec3& j, double dt, int steps) {
  auto f = [&](const Vec3& x) { return Vec3((-x.cross(j.cwiseProduct(x))).cwiseQuotient(j)); };
  for (int i = 0; i < steps; ++i) {
    const Vec3 k1 = f(w);
    const Vec3 k2 = f(w + 0.5 * dt * k1);
    const Vec3 k3 = f(w + 0.5 * dt * k2);
    const Vec3 k4 = f(w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

}  // namespace

TEST(Frames, IdentityAtZeroAngles) {
  EXPECT_TRUE(ground_to_body({0, 0, 0}).isApprox(RotationMatrix::Identity(), 0.0));
  EXPECT_TRUE(body_to_ground({0, 0, 0}).isApprox(RotationMatrix::Identity(), 0.0));
}

TEST(Frames, QuarterTurnYaw) {
  RotationMatrix expected;
  expected << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  EXPECT_LT((ground_to_body({0, 0, kPi / 2}) - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((body_to_ground({0, 0, kPi / 2}) - expected.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Frames, MatchesComposedElementaryRotations) {
  Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const EulerAngles a = gen.euler();
    EXPECT_LT((ground_to_body(a) - reference_ground_to_body(a)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Frames, OrthonormalForFixedTriple) {
  const RotationMatrix r = ground_to_body({0.3, -0.2, 1.1});
  EXPECT_LT((r.transpose() * r - RotationMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Frames, RandomTriplesOrthonormalAndRoundTrip) {
  Gen gen(12);
  for (int i = 0; i < 1000; ++i) {
    const EulerAngles a = gen.euler();
    const Vec3 v = gen.vec(-10, 10);
    const RotationMatrix r = ground_to_body(a);
    EXPECT_LT((r.transpose() * r - RotationMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-9);
    EXPECT_LT((body_to_ground(a) * r * v - v).norm(), 1e-9 * std::max(1.0, v.norm()));
    EXPECT_LT((body_to_ground(a) * ground_to_body(a) - RotationMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Frames, EulerExtractionInvertsMatrix) {
  Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    EulerAngles a = gen.euler();
    a.pitch = gen.uniform(-1.5, 1.5);
    const EulerAngles back = euler_from_ground_to_body(ground_to_body(a));
    EXPECT_NEAR(back.roll, a.roll, 1e-9);
    EXPECT_NEAR(back.pitch, a.pitch, 1e-9);
    EXPECT_NEAR(back.yaw, a.yaw, 1e-9);
  }
}

TEST(Frames, WrapAngleRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  Gen gen(14);
  for (int i = 0; i < 1000; ++i) {
    const double x = gen.uniform(-100, 100);
    const double w = wrap_angle(x);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(x - w, 2 * kPi), 0.0, 1e-12);
  }
}

TEST(Rodrigues, SkewMatrixOfXAxis) {
  Eigen::Matrix3d expected;
  expected << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  EXPECT_EQ(skew(Vec3::UnitX()), expected);
  EXPECT_EQ(AxisRotation(Vec3::UnitX()).w(), expected);
}

TEST(Rodrigues, ZeroAngleAndQuarterTurn) {
  EXPECT_EQ(rodrigues(Vec3::UnitZ(), 0.0), RotationMatrix::Identity());
  RotationMatrix quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LT((rodrigues(Vec3::UnitZ(), kPi / 2) - quarter).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((reference_axis_rotation(Vec3::UnitZ(), kPi / 2) - quarter).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rodrigues, MatchesQuaternionOracle) {
  Gen gen(15);
  for (int i = 0; i < 500; ++i) {
    const Vec3 axis = gen.unit();
    const double angle = gen.uniform(-10, 10);
    EXPECT_LT((rodrigues(axis, angle) - reference_axis_rotation(axis, angle)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Rodrigues, FixesAxisAndFullTurnsAreIdentity) {
  Gen gen(16);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 axis = gen.unit();
    EXPECT_LT((rodrigues(axis, gen.uniform(-10, 10)) * axis - axis).norm(), 1e-9);
    for (int n = -2; n <= 2; ++n) {
      EXPECT_LT((rodrigues(axis, 2 * kPi * n) - RotationMatrix::Identity()).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Rodrigues, RejectsNonUnitAxis) {
  EXPECT_THROW(rodrigues(Vec3(1, 1, 0), 0.3), ContractError);
  EXPECT_THROW(rodrigues(Vec3(1 + 1e-8, 0, 0), 0.3), ContractError);
  EXPECT_NO_THROW(rodrigues(Vec3(1 + 1e-10, 0, 0), 0.3));
}

TEST(RigidBody, FreeFallSingleStep) {
  const double dt = 1.0 / 240.0;
  RigidBodyState s;
  s.position = Vec3(0, 0, 10);
  const RigidBodyState n = step_body(s, {1.0, Vec3::Ones()}, {}, dt);
  EXPECT_DOUBLE_EQ(n.velocity.z(), -9.81 * dt);
  EXPECT_DOUBLE_EQ(n.position.z(), 10 - 9.81 * dt * dt);
  EXPECT_EQ(n.orientation, s.orientation);
}

TEST(RigidBody, FreeFallAccumulatesGravityExactly) {
  const double dt = 1.0 / 240.0;
  RigidBodyState s;
  s.position = Vec3(0, 0, 100);
  double vz = 0.0;
  for (int i = 0; i < 480; ++i) {
    s = step_body(s, {2.5, Vec3(1, 2, 3)}, {}, dt);
    vz = vz + -9.81 * dt;
  }
  EXPECT_EQ(s.velocity.z(), vz);
  EXPECT_NEAR(s.velocity.z(), -9.81 * 480 * dt, 1e-12);
}

TEST(RigidBody, HoverForceBalance) {
  RigidBodyState s;
  s.position = Vec3(1, 2, 3);
  const MassProperties m{0.75, Vec3(0.1, 0.2, 0.3)};
  const std::vector<AppliedLoad> loads{{Vec3(0, 0, 0.75 * 9.81), Vec3::Zero(), Vec3::Zero()}};
  const RigidBodyState n = step_body(s, m, loads, 1.0 / 240.0);
  EXPECT_LE((n.position - s.position).norm(), 1e-12);
  EXPECT_LE(n.velocity.norm(), 1e-12);
  EXPECT_LE(n.angular_velocity.norm(), 1e-12);
}

TEST(RigidBody, OffCentreForceProducesTorque) {
  const std::vector<AppliedLoad> loads{{Vec3(0, 0, 2), Vec3::Zero(), Vec3(0.5, 0, 0)}};
  const NetLoad net = accumulate(loads);
  // r x F = (0.5, 0, 0) x (0, 0, 2) = (0, -1, 0)
  EXPECT_EQ(net.torque, Vec3(0, -1, 0));
  EXPECT_EQ(net.force, Vec3(0, 0, 2));
}

TEST(RigidBody, SpinningAsymmetricBodyConservesEnergy) {
  const Vec3 j(0.02, 0.05, 0.09);
  RigidBodyState s;
  s.position = Vec3(0, 0, 50);
  s.angular_velocity = Vec3(1.5, -0.7, 2.0);
  const double e0 = kinetic_energy(s.angular_velocity, j);
  for (int i = 0; i < 240; ++i) s = step_body(s, {1.0, j}, {}, 1.0 / 240.0);
  const Vec3 reference = rk4_free_rotation(Vec3(1.5, -0.7, 2.0), j, 1.0 / 24000.0, 24000);
  EXPECT_NEAR(kinetic_energy(reference, j), e0, 1e-9 * e0);
  EXPECT_NEAR(kinetic_energy(s.angular_velocity, j), e0, 1e-3 * e0);
}

TEST(RigidBody, SymmetricBodyKeepsSpinRate) {
  RigidBodyState s;
  s.position = Vec3(0, 0, 1000);
  s.angular_velocity = Vec3(0.3, -1.2, 0.8);
  const double w0 = s.angular_velocity.norm();
  for (int i = 0; i < 1000; ++i) s = step_body(s, {1.0, Vec3::Constant(0.04)}, {}, 1.0 / 240.0);
  EXPECT_NEAR(s.angular_velocity.norm(), w0, 1e-9);
}

TEST(RigidBody, RotationMatchesConstantRateOracle) {
  // Constant yaw rate with no torque: yaw advances by rate * t.
  RigidBodyState s;
  s.position = Vec3(0, 0, 100);
  s.angular_velocity = Vec3(0, 0, 0.5);
  for (int i = 0; i < 240; ++i) s = step_body(s, {1.0, Vec3::Ones()}, {}, 1.0 / 240.0);
  EXPECT_NEAR(s.orientation.yaw, 0.5, 1e-12);
  EXPECT_NEAR(s.orientation.roll, 0.0, 1e-12);
}

TEST(RigidBody, IdenticalInputsGiveIdenticalStates) {
  Gen gen(17);
  std::vector<std::vector<AppliedLoad>> schedule;
  for (int i = 0; i < 300; ++i) {
    schedule.push_back({{gen.vec(-5, 5), gen.vec(-0.1, 0.1), gen.vec(-0.2, 0.2)}});
  }
  auto roll_out = [&]() {
    RigidBodyState s;
    s.position = Vec3(0, 0, 100);
    for (const auto& loads : schedule) s = step_body(s, {0.5, Vec3(0.01, 0.02, 0.03)}, loads, 1.0 / 240.0);
    return s;
  };
  EXPECT_EQ(roll_out(), roll_out());
}

TEST(RigidBody, DivergenceAndContractErrors) {
  RigidBodyState s;
  const std::vector<AppliedLoad> bad{{Vec3(std::nan(""), 0, 0), Vec3::Zero(), Vec3::Zero()}};
  EXPECT_THROW(step_body(s, {1.0, Vec3::Ones()}, bad, 0.01), SimulationDiverged);
  EXPECT_THROW(step_body(s, {1.0, Vec3::Ones()}, {}, 0.0), ContractError);
  EXPECT_THROW(step_body(s, {-1.0, Vec3::Ones()}, {}, 0.01), ContractError);
  EXPECT_THROW(step_body(s, {1.0, Vec3(1, 0, 1)}, {}, 0.01), ContractError);
}

TEST(GroundContact, NoPenetrationLeavesStateAlone) {
  RigidBodyState s;
  s.position = Vec3(0, 0, 5);
  const GroundContact g = resolve_ground_contact(s, 0.1);
  EXPECT_FALSE(g.contacted);
  EXPECT_EQ(g.state, s);
}

TEST(GroundContact, PenetrationClampsAndReportsSpeed) {
  RigidBodyState s;
  s.position = Vec3(0, 0, 0.05);
  s.velocity = Vec3(0, 0, -2);
  const GroundContact g = resolve_ground_contact(s, 0.1);
  EXPECT_TRUE(g.contacted);
  EXPECT_EQ(g.state.position.z(), 0.1);
  EXPECT_EQ(g.state.velocity.z(), 0.0);
  EXPECT_EQ(g.impact_speed, 2.0);
}

TEST(GroundContact, BoundaryIsNotContact) {
  RigidBodyState s;
  s.position = Vec3(0, 0, 0.1);
  EXPECT_FALSE(resolve_ground_contact(s, 0.1).contacted);
  EXPECT_THROW(resolve_ground_contact(s, 0.0), ContractError);
}

TEST(GroundContact, UpwardVelocityKept) {
  RigidBodyState s;
  s.position = Vec3(0, 0, 0.0);
  s.velocity = Vec3(1, 0, 0.5);
  const GroundContact g = resolve_ground_contact(s, 0.2);
  EXPECT_EQ(g.state.velocity, Vec3(1, 0, 0.5));
  EXPECT_NEAR(g.impact_speed, std::sqrt(1.25), 1e-15);
}

TEST(Collisions, FixedExamples) {
  RigidBodyState a, b, c;
  b.position = Vec3(10, 0, 0);
  EXPECT_TRUE(detect_collisions(std::vector{a, b}, std::vector{0.5, 0.5}).empty());
  b.position = Vec3(0.8, 0, 0);
  EXPECT_EQ(detect_collisions(std::vector{a, b}, std::vector{0.5, 0.5}), (std::vector<CollisionPair>{{0, 1}}));
  b.position = Vec3::Zero();
  EXPECT_EQ(detect_collisions(std::vector{a, b, c}, std::vector{0.1, 0.1, 0.1}),
            (std::vector<CollisionPair>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_THROW(detect_collisions(std::vector{a, b}, std::vector{0.1}), ContractError);
}

TEST(Collisions, MatchesBruteForceOnRandomConfigurations) {
  Gen gen(18);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen.uniform(0, 10));
    std::vector<RigidBodyState> states(n);
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) {
      states[i].position = gen.vec(-3, 3);
      radii[i] = gen.uniform(0.1, 1.5);
    }
    PairSet expected;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Vec3 d = states[i].position - states[j].position;
        const double reach = radii[i] + radii[j];
        if (i < j && d.squaredNorm() < reach * reach) expected.insert({i, j});
      }
    }
    const auto got = detect_collisions(states, radii);
    EXPECT_EQ(PairSet(got.begin(), got.end()), expected);
  }
}
