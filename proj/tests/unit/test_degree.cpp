#include <cmath>

#include <gtest/gtest.h>

#include "confspec/degree.hpp"
#include "confspec/error.hpp"
#include "confspec/surface_mesh.hpp"

namespace confspec {
namespace {

TEST(SignedArea, OctantTriangle) {
  const Eigen::Vector3d a(1, 0, 0), b(0, 1, 0), c(0, 0, 1);
  EXPECT_NEAR(signed_spherical_area(a, b, c), M_PI / 2.0, 1e-14);
  EXPECT_NEAR(signed_spherical_area(a, c, b), -M_PI / 2.0, 1e-14);
}

TEST(Degree, Identity) {
  const SurfaceMesh mesh = icosphere(3);
  const DegreeEstimate d = degree_estimate(identity_immersion(mesh).images(), mesh);
  EXPECT_EQ(d.degree, 1);
  EXPECT_NEAR(d.raw, 1.0, 1e-12);
  EXPECT_FALSE(d.non_integral);
}

TEST(Degree, Antipodal) {
  const SurfaceMesh mesh = icosphere(3);
  const Eigen::MatrixXd values = -identity_immersion(mesh).images();
  EXPECT_EQ(degree_estimate(values, mesh).degree, -1);
}

TEST(Degree, ComplexSquaring) {
  const SurfaceMesh mesh = icosphere(4);
  const DegreeEstimate d = degree_estimate(complex_squaring_immersion(mesh).images(), mesh);
  EXPECT_EQ(d.degree, 2);
}

TEST(Degree, ConstantMapIsZero) {
  const SurfaceMesh mesh = icosphere(2);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(3, mesh.vertex_count());
  values.row(2).setOnes();
  EXPECT_EQ(degree_estimate(values, mesh).degree, 0);
}

TEST(Degree, StableUnderRefinement) {
  for (int level : {4, 5}) {
    const SurfaceMesh mesh = icosphere(level);
    EXPECT_EQ(degree_estimate(complex_squaring_immersion(mesh).images(), mesh).degree, 2);
    EXPECT_EQ(degree_estimate(identity_immersion(mesh).images(), mesh).degree, 1);
  }
}

TEST(Degree, WildMapIsFlagged) {
  // A map that sends vertex v to a pseudo-random point cannot sum to an integer.
  const SurfaceMesh mesh = icosphere(1);
  Eigen::MatrixXd values(3, mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Eigen::Vector3d y(std::sin(7.1 * v), std::cos(3.3 * v + 1.0), std::sin(1.7 * v + 0.4));
    values.col(v) = y.normalized();
  }
  const DegreeEstimate raw = degree_estimate_raw(values, mesh);
  if (raw.non_integral) {
    EXPECT_THROW(degree_estimate(values, mesh), Error);
  } else {
    EXPECT_NO_THROW(degree_estimate(values, mesh));
  }
}

}  // namespace
}  // namespace confspec
