#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <vector>

#include <Eigen/LU>

#include "oracles.hpp"
#include "prequant/errors.hpp"
#include "prequant/geometry.hpp"
#include "prequant/models.hpp"
#include "prequant/sampling.hpp"

using namespace prequant;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ManifoldPtr s3() { return std::make_shared<Sphere>(3); }

} // namespace

TEST(Point, RejectsOffManifold) {
  EXPECT_THROW(Point(s3(), vec({1.0, 0.0, 0.1, 0.0})), InputError);
  EXPECT_NO_THROW(Point(s3(), vec({1.0, 0.0, 0.0, 0.0})));
  const Point p = Point::on(s3(), vec({2.0, 0.0, 0.0, 0.0}));
  EXPECT_NEAR(p.ambient().norm(), 1.0, 1e-15);
}

TEST(Tangent, RejectsNormalComponent) {
  const Point p(s3(), vec({1.0, 0.0, 0.0, 0.0}));
  EXPECT_THROW(Tangent(p, vec({1.0, 0.0, 0.0, 0.0})), InputError);
  EXPECT_NO_THROW(Tangent(p, vec({0.0, 1.0, 0.0, 0.0})));
}

TEST(ProjectiveSpace, DistanceIgnoresPhase) {
  auto cp2 = std::make_shared<ProjectiveSpace>(2);
  Sampler rng(3);
  for (int i = 0; i < 10; ++i) {
    const Point p = rng.point(cp2);
    const Vec q = cplx::scale(p.ambient(), std::polar(1.0, 0.7 + i));
    EXPECT_LT(cp2->distance(p.ambient(), q), 1e-14);
    EXPECT_LT((cp2->canonical(q) - p.ambient()).norm(), 1e-12);
  }
}

TEST(LensSpace, ZnIdentification) {
  auto lens = std::make_shared<Sphere>(3, 3);
  const Vec p = vec({0.6, 0.0, 0.0, 0.8});
  const Vec q = cplx::scale(p, std::polar(1.0, 2.0 * kPi / 3.0));
  EXPECT_LT(lens->distance(p, q), 1e-14);
  EXPECT_GT(lens->distance(p, cplx::scale(p, std::polar(1.0, 0.5))), 0.1);
}

TEST(Pfaffian, KnownValues) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 1) = 2.0;
  m(2, 3) = 3.0;
  m(1, 0) = -2.0;
  m(3, 2) = -3.0;
  EXPECT_DOUBLE_EQ(pfaffian(m), 6.0);
  Sampler rng(7);
  Eigen::MatrixXd a(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  const Eigen::MatrixXd skew = a - a.transpose();
  EXPECT_NEAR(std::pow(pfaffian(skew), 2), skew.determinant(), 1e-10);
}

TEST(ContactVolume, HopfOrthonormalFrame) {
  const ModelInstance m = make_model("s2:1");
  const Point p(m.bundle->total_space(), vec({1.0, 0.0, 0.0, 0.0}));
  const std::vector<Tangent> basis{Tangent(p, vec({0, 1, 0, 0})), Tangent(p, vec({0, 0, 1, 0})),
                                   Tangent(p, vec({0, 0, 0, 1}))};
  EXPECT_NEAR(contact_volume_check(*m.bundle, p, basis), 1.0 / (2.0 * kPi * kPi), 1e-12);

  const ModelInstance m3 = make_model("s2:3");
  const Point p3(m3.bundle->total_space(), vec({1.0, 0.0, 0.0, 0.0}));
  const std::vector<Tangent> basis3{Tangent(p3, vec({0, 1, 0, 0})), Tangent(p3, vec({0, 0, 1, 0})),
                                    Tangent(p3, vec({0, 0, 0, 1}))};
  EXPECT_NEAR(contact_volume_check(*m3.bundle, p3, basis3), 9.0 / (2.0 * kPi * kPi), 1e-11);
}

TEST(ContactVolume, MatchesPermutationSum) {
  for (const char* id : {"s2:2", "cpn:2"}) {
    const ModelInstance m = make_model(id);
    Sampler rng(11);
    const Point p = rng.point(m.bundle->total_space());
    const int count = m.bundle->total_dim();
    std::vector<Tangent> basis;
    for (int i = 0; i < count; ++i) basis.push_back(rng.tangent(p));
    const double lib = contact_volume(m.bundle->alpha_form(), m.bundle->dalpha_form(), p, basis);
    const int level = m.bundle->level();
    auto alpha = [&](int i) {
      const auto& v = basis[i].vec();
      std::complex<double> h = 0.0;
      for (int j = 0; j < v.size() / 2; ++j) h += std::conj(oracle::z(p.ambient(), j)) * oracle::z(v, j);
      return level / (2.0 * oracle::pi) * h.imag();
    };
    auto beta = [&](int a, int b) {
      std::complex<double> h = 0.0;
      for (int j = 0; j < basis[a].vec().size() / 2; ++j)
        h += std::conj(oracle::z(basis[a].vec(), j)) * oracle::z(basis[b].vec(), j);
      return level / oracle::pi * h.imag();
    };
    EXPECT_NEAR(lib, oracle::wedge_by_permutations(alpha, beta, count), 1e-10 * std::max(1.0, std::fabs(lib))) << id;
  }
}

TEST(ContactVolume, DegenerateInputs) {
  const ModelInstance m = make_model("s2:1");
  const Point p(m.bundle->total_space(), vec({1.0, 0.0, 0.0, 0.0}));
  const Tangent t(p, vec({0, 1, 0, 0}));
  const std::vector<Tangent> repeated{t, t, Tangent(p, vec({0, 0, 1, 0}))};
  EXPECT_DOUBLE_EQ(contact_volume(m.bundle->alpha_form(), m.bundle->dalpha_form(), p, repeated), 0.0);
  const std::vector<Tangent> short_list{t, t};
  EXPECT_THROW(contact_volume(m.bundle->alpha_form(), m.bundle->dalpha_form(), p, short_list), InputError);
}

TEST(ExteriorDerivative, AgreesWithClosedFormCurvature) {
  const ModelInstance m = make_model("cpn:2");
  Sampler rng(5);
  const OneForm alpha = m.bundle->alpha_form();
  for (int i = 0; i < 10; ++i) {
    const Point p = rng.point(m.bundle->total_space());
    const Tangent u = rng.tangent(p);
    const Tangent v = rng.tangent(p);
    EXPECT_NEAR(exterior_derivative(alpha, p, u, v), m.bundle->dalpha(p.ambient(), u.vec(), v.vec()), 1e-6);
  }
}

TEST(LieDerivative, ReebPreservesAlpha) {
  const ModelInstance m = make_model("s2:3");
  Sampler rng(9);
  for (int i = 0; i < 10; ++i) {
    const Point p = rng.point(m.bundle->total_space());
    const Tangent v = rng.tangent(p);
    EXPECT_LT(std::fabs(lie_derivative_oneform(m.bundle->reeb_field(), m.bundle->alpha_form(), p, v)), 1e-6);
  }
}

TEST(LieDerivative, ScaledReebOnNonInvariantForm) {
  // L_X (x_0 dx_1) for the rotation X = (-x_1, x_0) in the (x_0, x_1) plane of S^3.
  auto sphere = s3();
  const VectorField rot(sphere, [](const Vec& x) {
    Vec out = Vec::Zero(4);
    out[0] = -x[1];
    out[1] = x[0];
    return out;
  });
  const OneForm form(sphere, [](const Vec& x, const Vec& v) { return x[0] * v[1]; });
  Sampler rng(2);
  for (int i = 0; i < 10; ++i) {
    const Point p = rng.point(sphere);
    const Tangent v = rng.tangent(p);
    const Vec& x = p.ambient();
    // d/dt of x0(t) v1(t) with x' = Rx, v' = Rv: -x1 v1 + x0 v0.
    const double expected = -x[1] * v.vec()[1] + x[0] * v.vec()[0];
    LieDerivativeOptions opts;
    opts.richardson = true;
    EXPECT_NEAR(lie_derivative_oneform(rot, form, p, v, opts), expected, 1e-8);
  }
}

TEST(LieBracket, CoordinateRotationsCommute) {
  const ModelInstance m = make_model("cpn:2");
  Sampler rng(4);
  const VectorField a = m.action.generators[0];
  const VectorField b = m.action.generators[1];
  for (int i = 0; i < 5; ++i) {
    const Point p = rng.point(m.bundle->base_space());
    EXPECT_LT(lie_bracket(a, b, p).norm(), 1e-7);
  }
}

TEST(LieBracket, NonCommutingRotations) {
  // Rotations of R^3 about e_3 and e_1: [X_3, X_1] is a rotation about e_2 (up to sign).
  auto s2 = std::make_shared<Sphere>(2);
  const VectorField x3(s2, [](const Vec& x) { return vec({-x[1], x[0], 0.0}); });
  const VectorField x1(s2, [](const Vec& x) { return vec({0.0, -x[2], x[1]}); });
  const Point p(s2, vec({0.6, 0.0, 0.8}));
  const Tangent br = lie_bracket(x3, x1, p);
  const Eigen::Vector3d about_e2(p.ambient()[2], 0.0, -p.ambient()[0]);
  EXPECT_NEAR(std::fabs(Eigen::Vector3d(br.vec()).dot(about_e2)), about_e2.squaredNorm(), 1e-8);
}
