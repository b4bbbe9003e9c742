#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "confspec/error.hpp"
#include "confspec/sphere_geometry.hpp"

namespace confspec {
namespace {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v / v.norm();
}

Vec random_ball(std::mt19937_64& rng, int dim, double max_radius) {
  std::uniform_real_distribution<double> uniform(0.0, max_radius);
  return random_unit(rng, dim) * uniform(rng);
}

// Orthonormal basis of the tangent space x^perp.
Mat tangent_frame(const Vec& x) {
  const int dim = static_cast<int>(x.size());
  Mat frame(dim, dim - 1);
  int filled = 0;
  for (int axis = 0; axis < dim && filled < dim - 1; ++axis) {
    Vec e = Vec::Zero(dim);
    e[axis] = 1.0;
    e -= e.dot(x) * x;
    for (int k = 0; k < filled; ++k) e -= e.dot(frame.col(k)) * frame.col(k);
    if (e.norm() < 1e-3) continue;
    frame.col(filled++) = e / e.norm();
  }
  return frame;
}

TEST(Moebius, OriginIsIdentity) {
  std::mt19937_64 rng(1);
  const Vec zero = Vec::Zero(3);
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_unit(rng, 3);
    EXPECT_LE((moebius_apply(zero, x) - x).norm(), 1e-15);
    EXPECT_DOUBLE_EQ(moebius_conformal_factor(zero, x), 1.0);
  }
}

TEST(Moebius, HandComputedImage) {
  const BallPoint xi(make_vec({0.5, 0.0, 0.0}));
  const UnitVector x(make_vec({0.0, 1.0, 0.0}));
  const UnitVector y = moebius_apply(xi, x);
  EXPECT_NEAR(y[0], 0.8, 1e-15);
  EXPECT_NEAR(y[1], 0.6, 1e-15);
  EXPECT_NEAR(y[2], 0.0, 1e-15);
  const UnitVector back = moebius_apply(BallPoint(make_vec({-0.5, 0.0, 0.0})), y);
  EXPECT_NEAR((back.coords() - x.coords()).norm(), 0.0, 1e-15);
}

TEST(Moebius, PolesAlongXiAreFixed) {
  const Vec xi = make_vec({0.5, 0.0, 0.0});
  const Vec e1 = make_vec({1.0, 0.0, 0.0});
  EXPECT_LE((moebius_apply(xi, e1) - e1).norm(), 1e-15);
  EXPECT_LE((moebius_apply(xi, Vec(-e1)) + e1).norm(), 1e-15);
}

TEST(Moebius, ConformalFactorAtAntipodeOfXi) {
  const BallPoint xi(make_vec({0.5, 0.0, 0.0}));
  EXPECT_NEAR(moebius_conformal_factor(xi, UnitVector(make_vec({-1.0, 0.0, 0.0}))), 3.0, 1e-15);
}

TEST(Moebius, ImageStaysOnSphereAndInverts) {
  std::mt19937_64 rng(2);
  for (int dim = 3; dim <= 8; ++dim) {
    for (int i = 0; i < 10000; ++i) {
      const Vec xi = random_ball(rng, dim, 0.99);
      const Vec x = random_unit(rng, dim);
      const Vec y = moebius_apply(xi, x);
      ASSERT_NEAR(y.norm(), 1.0, 1e-12);
      ASSERT_LE((moebius_apply(Vec(-xi), y) - x).norm(), 1e-10);
    }
  }
}

TEST(Moebius, JacobianIsScaledOrthogonal) {
  std::mt19937_64 rng(3);
  const double h = 1e-5;
  for (int dim = 3; dim <= 8; ++dim) {
    for (int i = 0; i < 2000; ++i) {
      const Vec xi = random_ball(rng, dim, 0.9);
      const Vec x = random_unit(rng, dim);
      const Mat frame = tangent_frame(x);
      Mat jac(dim, dim - 1);
      for (int k = 0; k < dim - 1; ++k) {
        const Vec plus = std::cos(h) * x + std::sin(h) * frame.col(k);
        const Vec minus = std::cos(h) * x - std::sin(h) * frame.col(k);
        jac.col(k) = (moebius_apply(xi, plus) - moebius_apply(xi, minus)) / (2.0 * h);
      }
      const double rho = moebius_conformal_factor(xi, x);
      const Mat gram = jac.transpose() * jac / (rho * rho);
      const double defect = (gram - Mat::Identity(dim - 1, dim - 1)).cwiseAbs().maxCoeff();
      ASSERT_LE(defect, 1e-6) << "dim " << dim << " sample " << i;
    }
  }
}

TEST(Moebius, AreaIsPreservedOnFineQuadrature) {
  // Midpoint rule in (z, azimuth) with the pole at -xi / |xi| resolved by the
  // substitution z = -1 + 2 s^4, which concentrates nodes where rho peaks.
  const Vec xi = make_vec({0.0, 0.0, 0.6});
  const int nz = 4000;
  const int nphi = 8;
  double total = 0.0;
  for (int i = 0; i < nz; ++i) {
    const double s = (i + 0.5) / nz;
    const double z = -1.0 + 2.0 * std::pow(s, 4);
    const double dz = 8.0 * std::pow(s, 3) / nz;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < nphi; ++j) {
      const double a = 2.0 * M_PI * (j + 0.5) / nphi;
      const Vec x = make_vec({r * std::cos(a), r * std::sin(a), z});
      const double rho = moebius_conformal_factor(xi, x);
      total += rho * rho * dz * 2.0 * M_PI / nphi;
    }
  }
  EXPECT_NEAR(total / (4.0 * M_PI), 1.0, 1e-6);
}

TEST(BallPoint, RejectsBoundary) {
  EXPECT_THROW(BallPoint(make_vec({1.0, 0.0, 0.0})), Error);
  EXPECT_NO_THROW(BallPoint(make_vec({0.999, 0.0, 0.0})));
  const BallPoint clamped = BallPoint::clamped(make_vec({3.0, 4.0, 0.0}), 0.5);
  EXPECT_NEAR(clamped.norm(), 0.5, 1e-15);
}

TEST(UnitVectorType, RejectsZero) { EXPECT_THROW(UnitVector(Vec::Zero(3)), Error); }

TEST(Reflect, Examples) {
  const UnitVector p(make_vec({0.0, 0.0, 1.0}));
  EXPECT_LE((reflect(p, p).coords() + p.coords()).norm(), 0.0);
  const UnitVector y = reflect(p, UnitVector(make_vec({0.6, 0.0, 0.8})));
  EXPECT_NEAR(y[0], 0.6, 1e-15);
  EXPECT_NEAR(y[2], -0.8, 1e-15);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Vec q = random_unit(rng, 5);
    const Vec x = random_unit(rng, 5);
    EXPECT_LE((reflect(q, reflect(q, x)) - x).norm(), 1e-14);
  }
}

TEST(Cap, Membership) {
  std::mt19937_64 rng(5);
  const Vec p = make_vec({0.0, 0.0, 1.0});
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_unit(rng, 3);
    EXPECT_EQ(cap_contains(p, 0.0, x), x.dot(p) > kCapBoundaryBand);
  }
  for (double t : {-0.99, -0.5, 0.0, 0.5, 0.99}) EXPECT_TRUE(cap_contains(p, t, p));
  const Vec far = make_vec({std::sin(0.5), 0.0, std::cos(0.5)});
  EXPECT_FALSE(cap_contains(p, -0.999, far));
  EXPECT_TRUE(cap_contains(p, 0.0, far));
}

TEST(Cap, ReflectionExamples) {
  std::mt19937_64 rng(6);
  const Vec p = make_vec({0.0, 0.0, 1.0});
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_unit(rng, 3);
    EXPECT_LE((cap_reflect(p, 0.0, x) - reflect(p, x)).norm(), 0.0);
  }
  const SphericalCap cap(UnitVector(p), 0.3);
  const UnitVector y = cap_reflect(cap, UnitVector(make_vec({0.0, 0.0, -1.0})));
  EXPECT_TRUE(cap_contains(cap, y));
}

TEST(Cap, ReflectionPropertiesAcrossDimensions) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(-0.95, 0.95);
  for (int dim = 3; dim <= 8; ++dim) {
    for (int i = 0; i < 10000; ++i) {
      const Vec p = random_unit(rng, dim);
      const double t = t_dist(rng);
      const Vec x = random_unit(rng, dim);
      const Vec y = cap_reflect(p, t, x);
      ASSERT_LE((cap_reflect(p, t, y) - x).norm(), 1e-10);
      const double dx = cap_boundary_distance(p, t, x);
      const double dy = cap_boundary_distance(p, t, y);
      if (std::abs(dx) > 1e-9) ASSERT_LT(dx * dy, 0.0);

      // A point on the boundary sphere: pull back a point of the equator.
      Vec equator = random_unit(rng, dim);
      equator -= equator.dot(p) * p;
      equator /= equator.norm();
      const Vec boundary = moebius_apply(Vec(-t * p), equator);
      ASSERT_LE(std::abs(cap_boundary_distance(p, t, boundary)), 1e-12);
      ASSERT_LE((cap_reflect(p, t, boundary) - boundary).norm(), 1e-10);
    }
  }
}

TEST(Fold, Examples) {
  const Vec p = make_vec({0.0, 0.0, 1.0});
  const Vec south = make_vec({0.0, 0.0, -1.0});
  EXPECT_LE((fold(p, 0.0, south) - p).norm(), 1e-15);
  const Vec inside = make_vec({0.6, 0.0, 0.8});
  EXPECT_EQ(fold(p, 0.4, inside), inside);
}

TEST(Fold, IdempotentIntoClosedCap) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t_dist(-0.9, 0.9);
  for (int dim = 3; dim <= 8; ++dim) {
    for (int i = 0; i < 2000; ++i) {
      const Vec p = random_unit(rng, dim);
      const double t = t_dist(rng);
      const Vec x = random_unit(rng, dim);
      const Vec y = fold(p, t, x);
      ASSERT_GE(cap_boundary_distance(p, t, y), -1e-10);
      ASSERT_LE((fold(p, t, y) - y).norm(), 1e-10);
      ASSERT_LE((fold(p, t, cap_reflect(p, t, x)) - y).norm(), 1e-9);
    }
  }
}

TEST(FoldIdentities, HoldAtRandomSamples) {
  std::mt19937_64 rng(9);
  for (int dim = 3; dim <= 8; ++dim) {
    for (int i = 0; i < 10000; ++i) {
      const UnitVector p(random_unit(rng, dim));
      const UnitVector x(random_unit(rng, dim));
      const BallPoint xi(random_ball(rng, dim, 0.99));
      ASSERT_LE(fold_identity_check(p, x, xi).max(), 1e-12) << "dim " << dim;
    }
  }
}

TEST(FoldIdentities, ExactOnBasisVectors) {
  const FoldIdentityResiduals r =
      fold_identity_check(UnitVector::basis(3, 0), UnitVector::basis(3, 1), BallPoint::origin(3));
  EXPECT_EQ(r.max(), 0.0);
}

TEST(FoldIdentities, MoebiusCommutesWithReflectionForOrthogonalXi) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 1000; ++i) {
    const Vec p = random_unit(rng, 4);
    Vec xi = random_ball(rng, 4, 0.9);
    xi -= xi.dot(p) * p;
    const Vec x = random_unit(rng, 4);
    EXPECT_LE((moebius_apply(xi, reflect(p, x)) - reflect(p, moebius_apply(xi, x))).norm(), 1e-13);
  }
}

}  // namespace
}  // namespace confspec
