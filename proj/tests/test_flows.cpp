#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prequant/errors.hpp"
#include "prequant/flows.hpp"
#include "prequant/sampling.hpp"

using namespace prequant;

TEST(Integrate, CoordinateLiftMatchesClosedForm) {
  const ModelInstance m = make_model("cpn:3");
  Sampler rng(5);
  for (int j = 0; j < 3; ++j) {
    const LiftedField lifted = lift_field(m.bundle, m.action, LatticeVector::basis(3, j));
    for (int i = 0; i < 4; ++i) {
      const Point p = rng.point(m.bundle->total_space());
      for (double t : {0.3, 1.0}) {
        const Vec q = integrate_flow(lifted.field, p.ambient(), t);
        EXPECT_LT((Eigen::VectorXd(q) - oracle::coordinate_lift_flow(p.ambient(), oracle::rotated_coordinate(false, j), t)).norm(), 1e-9);
      }
    }
  }
}

TEST(Integrate, RejectsBadConfig) {
  const ModelInstance m = make_model("s2:1");
  FlowConfig cfg;
  cfg.step = 0.0;
  Vec z(4);
  z << 1, 0, 0, 0;
  EXPECT_ANY_THROW(integrate_flow(m.bundle->reeb_field(), z, 1.0, cfg));
  cfg.step = 1e-3;
  cfg.max_time = 0.5;
  EXPECT_ANY_THROW(integrate_flow(m.bundle->reeb_field(), z, 1.0, cfg));
}

TEST(Integrate, TrajectorySegments) {
  const ModelInstance m = make_model("s2:2");
  Vec z(4);
  z << 0.6, 0, 0.8, 0;
  const auto traj = integrate_trajectory(m.bundle->reeb_field(), z, 1.0, 4);
  ASSERT_EQ(traj.size(), 5u);
  for (int k = 0; k <= 4; ++k)
    EXPECT_LT((Eigen::VectorXd(traj[k]) - oracle::circle(z, k / 4.0, 2)).norm(), 1e-10);
}

TEST(ClosureDefect, ZeroForNormalizedAndShiftForOffsets) {
  const ModelInstance m = make_model("s2:3");
  Sampler rng(17);
  const Point p = rng.point(m.bundle->total_space());
  const LiftedField lifted = lift_field(m.bundle, m.action, LatticeVector::basis(1, 0));
  EXPECT_LT(circular_distance(closure_defect(*m.bundle, lifted, p), Phase(0.0)), 1e-8);
  for (double c : {0.25, 0.5, 0.8, 1.3}) {
    const LiftedField shifted = lift_field(m.bundle, m.action, LatticeVector::basis(1, 0), c);
    EXPECT_LT(circular_distance(closure_defect(*m.bundle, shifted, p), Phase(c)), 1e-8) << c;
  }
}

TEST(ClosureDefect, NonLatticeSourceThrows) {
  const ModelInstance m = make_model("s2:1");
  const std::vector<double> half{0.5};
  const LiftedField lifted = lift_field(m.bundle, m.action, half);
  Vec z(4);
  z << 0.6, 0, 0.8, 0;
  EXPECT_THROW(closure_defect(*m.bundle, lifted, z), DomainError);
}

TEST(Holonomy, EquatorPhase) {
  // Horizontal transport around the equator picks up the omega-area of the
  // southern hemisphere: n / 2 mod 1.
  for (int n : {1, 2, 3}) {
    const ModelInstance m = make_s2_bundle(n);
    Vec east(3);
    east << 1, 0, 0;
    const LoopSpec loop = LoopSpec::from_flow(m.action.generators[0], east, 2000);
    Vec z(4);
    z << 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0;
    const HolonomyResult r = holonomy(*m.bundle, loop, z);
    EXPECT_LT(circular_distance(r.phase, Phase(n / 2.0)), 1e-8) << n;
    EXPECT_LT(r.transport_residual, 1e-8);
  }
}

TEST(Holonomy, LatitudeMatchesCapArea) {
  const ModelInstance m = make_s2_bundle(1);
  const double h = 0.4;
  Vec b(3);
  b << std::sqrt(1 - h * h), 0, h;
  const LoopSpec loop = LoopSpec::from_flow(m.action.generators[0], b, 2000);
  // a point over b: Hopf preimage with z1 real
  Vec z(4);
  const double c0 = std::sqrt((1 + h) / 2), c1 = std::sqrt((1 - h) / 2);
  z << c0, 0, c1, 0;
  const HolonomyResult r = holonomy(*m.bundle, loop, z);
  EXPECT_LT(circular_distance(r.phase, Phase(oracle::s2_cap_omega(1, h))), 1e-7);
}

TEST(Holonomy, OpenLoopThrows) {
  const ModelInstance m = make_s2_bundle(1);
  Vec a(3), b(3);
  a << 1, 0, 0;
  b << 0, 1, 0;
  const PathSpec path = PathSpec::interpolating(m.bundle->base_space(), a, b, Vec::Zero(3));
  const LoopSpec loop{m.bundle->base_space(), path.eval, {}};
  Vec z(4);
  z << 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0;
  EXPECT_THROW(holonomy(*m.bundle, loop, z), InputError);
}

TEST(Holonomy, ConstantLoopIsTrivial) {
  const ModelInstance m = make_model("cpn:2");
  Sampler rng(3);
  const Point p = rng.point(m.bundle->total_space());
  const LoopSpec loop = LoopSpec::constant(m.bundle->base_space(), m.bundle->project(p.ambient()));
  EXPECT_LT(circular_distance(holonomy(*m.bundle, loop, p).phase, Phase(0.0)), 1e-12);
}

TEST(DiskIntegral, MeridianPathGivesCapArea) {
  for (int n : {1, 3}) {
    const ModelInstance m = make_s2_bundle(n);
    Vec south(3), target(3);
    south << 0, 0, -1;
    const double h = 0.3;
    target << std::sqrt(1 - h * h), 0, h;
    const PathSpec path = PathSpec::interpolating(m.bundle->base_space(), south, target, Vec::Zero(3));
    const double d = disk_integral(*m.bundle, m.action, LatticeVector::basis(1, 0), path, 16);
    EXPECT_NEAR(d, oracle::s2_cap_omega(n, h), 1e-7);
    const double d2 = disk_integral(*m.bundle, m.action, LatticeVector{{2}}, path, 16);
    EXPECT_NEAR(d2, 2 * oracle::s2_cap_omega(n, h), 1e-7);
  }
}

TEST(DiskIntegral, ConstantPathIsZero) {
  const ModelInstance m = make_model("cpn:2");
  const PathSpec path = PathSpec::constant(m.bundle->base_space(), m.action.fixed_point.ambient());
  EXPECT_NEAR(disk_integral(*m.bundle, m.action, LatticeVector{{1, 1}}, path, 16), 0.0, 1e-12);
}

TEST(DiskIntegral, Preconditions) {
  const ModelInstance m = make_s2_bundle(1);
  Vec north(3), east(3);
  north << 0, 0, 1;
  east << 1, 0, 0;
  const PathSpec bad = PathSpec::interpolating(m.bundle->base_space(), east, north, Vec::Zero(3));
  EXPECT_THROW(disk_integral(*m.bundle, m.action, LatticeVector::basis(1, 0), bad, 16), PreconditionError);
  const PathSpec ok = PathSpec::constant(m.bundle->base_space(), m.action.fixed_point.ambient());
  EXPECT_THROW(disk_integral(*m.bundle, m.action, LatticeVector::basis(1, 0), ok, 8), InputError);
}
