#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prequant/errors.hpp"
#include "prequant/models.hpp"
#include "prequant/sampling.hpp"

using namespace prequant;

TEST(ModelIds, Validation) {
  EXPECT_NO_THROW(validate_model_id("s2:1"));
  EXPECT_NO_THROW(validate_model_id("cpn:3"));
  try {
    validate_model_id("s2:0");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("level must be >= 1"), std::string::npos);
  }
  EXPECT_THROW(validate_model_id("cpn:4"), InputError);
  EXPECT_THROW(validate_model_id("cpn:0"), InputError);
  EXPECT_THROW(validate_model_id("t2:1"), InputError);
  EXPECT_THROW(validate_model_id("s2:"), InputError);
  EXPECT_THROW(validate_model_id("s2:1x"), InputError);
}

TEST(Hopf, ProjectionMatchesClosedForm) {
  for (int n : {1, 2, 5}) {
    const ModelInstance m = make_s2_bundle(n);
    Sampler rng(n);
    for (int i = 0; i < 20; ++i) {
      const Point p = rng.point(m.bundle->total_space());
      const Eigen::Vector3d x = oracle::hopf(p.ambient());
      EXPECT_LT((Eigen::Vector3d(m.bundle->project(p.ambient())) - x).norm(), 1e-14);
    }
  }
}

TEST(Models, Dimensions) {
  EXPECT_EQ(make_model("s2:4").bundle->total_dim(), 3);
  EXPECT_EQ(make_model("s2:4").bundle->base_dim(), 2);
  EXPECT_EQ(make_model("cpn:3").bundle->total_dim(), 7);
  EXPECT_EQ(make_model("cpn:3").action.rank, 3);
  EXPECT_EQ(make_model("cpn:2").bundle->id(), "cpn:2");
}

TEST(CircleAction, PeriodOneAndFiberPhase) {
  for (const char* id : {"s2:1", "s2:3", "cpn:2"}) {
    const ModelInstance m = make_model(id);
    const int level = m.bundle->level();
    Sampler rng(1);
    for (int i = 0; i < 10; ++i) {
      const Point p = rng.point(m.bundle->total_space());
      const double theta = rng.uniform(0.0, 1.0);
      const Vec q = m.bundle->circle_act(theta, p.ambient());
      const Eigen::VectorXd expected = oracle::circle(p.ambient(), theta, level);
      EXPECT_LT((Eigen::VectorXd(q) - expected).norm(), 1e-14) << id;
      EXPECT_LT(m.bundle->total_space()->distance(m.bundle->circle_act(1.0, p.ambient()), p.ambient()), 1e-12);
      EXPECT_LT(circular_distance(fiber_phase(*m.bundle, p.ambient(), q), Phase(theta)), 1e-12) << id;
    }
  }
}

TEST(FiberPhase, DifferentFibersThrow) {
  const ModelInstance m = make_model("s2:1");
  Vec a(4), b(4);
  a << 1, 0, 0, 0;
  b << 0, 0, 1, 0;
  EXPECT_THROW(fiber_phase(*m.bundle, a, b), DomainError);
}

TEST(Connection, ReebNormalizationAndCurvature) {
  for (const char* id : {"s2:2", "cpn:1", "cpn:3"}) {
    const ModelInstance m = make_model(id);
    Sampler rng(8);
    for (int i = 0; i < 10; ++i) {
      const Point p = rng.point(m.bundle->total_space());
      const Vec& z = p.ambient();
      EXPECT_NEAR(m.bundle->alpha(z, m.bundle->reeb(z)), 1.0, 1e-13);
      // d alpha = pi^* omega on horizontal vectors
      const Vec u = cplx::complex_orthogonal(z, rng.gaussian(z.size()));
      const Vec v = cplx::complex_orthogonal(z, rng.gaussian(z.size()));
      EXPECT_NEAR(m.bundle->dalpha(z, u, v),
                  m.bundle->omega(m.bundle->project(z), m.bundle->push_forward(z, u), m.bundle->push_forward(z, v)),
                  1e-12)
          << id;
    }
  }
}

TEST(Curvature, TotalOmegaAreaIsLevel) {
  // The cap below height h has omega-area n (h + 1) / 2, the normalized moment.
  for (int n : {1, 3}) {
    const ModelInstance m = make_s2_bundle(n);
    for (double h : {-0.5, 0.0, 0.9, 1.0}) {
      Vec x(3);
      x << std::sqrt(1.0 - h * h), 0.0, h;
      EXPECT_NEAR(m.action.moment(0, x), oracle::s2_cap_omega(n, h), 1e-7);
    }
  }
}

TEST(HorizontalLift, ProjectsBack) {
  for (const char* id : {"s2:3", "cpn:2"}) {
    const ModelInstance m = make_model(id);
    Sampler rng(12);
    for (int i = 0; i < 10; ++i) {
      const Point p = rng.point(m.bundle->total_space());
      const Vec b = m.bundle->project(p.ambient());
      const Point bp(m.bundle->base_space(), b);
      const Tangent v = rng.tangent(bp);
      const Vec h = m.bundle->horizontal_lift(p.ambient(), b, v.vec());
      EXPECT_NEAR(m.bundle->alpha(p.ambient(), h), 0.0, 1e-12);
      const Vec back = m.bundle->push_forward(p.ambient(), h);
      EXPECT_LT((back - v.vec()).norm(), 1e-10) << id;
    }
  }
}

TEST(MomentMap, NormalizedAtFixedPoint) {
  for (const char* id : {"s2:2", "cpn:2", "cpn:3"}) {
    const ModelInstance m = make_model(id);
    EXPECT_TRUE(m.action.normalized);
    for (int i = 0; i < m.action.rank; ++i) EXPECT_NEAR(m.action.moment(i, m.action.fixed_point.ambient()), 0.0, 1e-15);
  }
  const ModelInstance eq = make_s2_equivariant_action(3);
  EXPECT_FALSE(eq.action.normalized);
  Vec north(3);
  north << 0, 0, 1;
  EXPECT_NEAR(eq.action.moment(0, north), 1.5, 1e-15);
}

TEST(MomentMap, HamiltonianConvention) {
  // d Phi^X = iota(X_B) omega, checked by finite differences on random tangents.
  for (const char* id : {"s2:2", "cpn:2"}) {
    const ModelInstance m = make_model(id);
    Sampler rng(21);
    for (int i = 0; i < 10; ++i) {
      const Point b = rng.point(m.bundle->base_space());
      const Tangent v = rng.tangent(b);
      for (int k = 0; k < m.action.rank; ++k) {
        const double eps = 1e-5;
        const auto& space = *m.bundle->base_space();
        const double dphi = (m.action.moment(k, space.retract(b.ambient() + eps * v.vec())) -
                             m.action.moment(k, space.retract(b.ambient() - eps * v.vec()))) /
                            (2.0 * eps);
        const double iota = m.bundle->omega(b.ambient(), m.action.generators[k].at(b.ambient()), v.vec());
        EXPECT_NEAR(dphi, iota, 1e-8) << id;
      }
    }
  }
}
