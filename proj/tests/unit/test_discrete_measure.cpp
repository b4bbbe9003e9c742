#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "confspec/discrete_measure.hpp"
#include "confspec/error.hpp"
#include "confspec/sphere_geometry.hpp"

namespace confspec {
namespace {

Eigen::MatrixXd basis_atoms(int count) {
  return Eigen::MatrixXd::Identity(3, 3).leftCols(count);
}

TEST(Measure, TotalMass) {
  Eigen::MatrixXd atoms(3, 4);
  atoms << 1, -1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0;
  const DiscreteMeasure mu(atoms, Eigen::VectorXd::Ones(4));
  EXPECT_DOUBLE_EQ(total_mass(mu), 4.0);
}

TEST(Measure, EmptyIsRejected) {
  try {
    DiscreteMeasure(Eigen::MatrixXd(3, 0), Eigen::VectorXd(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMeasure);
  }
}

TEST(Measure, NonPositiveWeightsAreRejected) {
  EXPECT_THROW(DiscreteMeasure(basis_atoms(2), Eigen::Vector2d(1.0, 0.0)), Error);
  EXPECT_THROW(DiscreteMeasure(basis_atoms(2), Eigen::Vector3d(1.0, 1.0, 1.0)), Error);
}

TEST(Measure, IcosphereMassIsSphereArea) {
  const SurfaceMesh mesh = icosphere(4);
  const DiscreteMeasure mu = DiscreteMeasure::from_mesh(mesh, identity_immersion(mesh));
  EXPECT_NEAR(total_mass(mu) / (4.0 * M_PI), 1.0, 0.01);
}

TEST(CenterOfMass, Examples) {
  Eigen::MatrixXd pair(3, 2);
  pair << 1, -1, 0, 0, 0, 0;
  EXPECT_LE(center_of_mass(DiscreteMeasure(pair, Eigen::Vector2d(1, 1))).norm(), 0.0);
  const Vec single = center_of_mass(DiscreteMeasure(basis_atoms(1), Eigen::VectorXd::Ones(1)));
  EXPECT_EQ(single[0], 1.0);
  const Vec three = center_of_mass(DiscreteMeasure(basis_atoms(3), Eigen::VectorXd::Ones(3)));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(three[i], 1.0 / 3.0, 1e-15);
}

TEST(CenterOfMass, NormAtMostOne) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::MatrixXd atoms(4, 7);
    Eigen::VectorXd w(7);
    for (int i = 0; i < 7; ++i) {
      Eigen::Vector4d x(normal(rng), normal(rng), normal(rng), normal(rng));
      atoms.col(i) = x.normalized();
      w[i] = weight(rng);
    }
    EXPECT_LT(center_of_mass(DiscreteMeasure(atoms, w)).norm(), 1.0);
  }
  Eigen::MatrixXd same(3, 3);
  same.colwise() = Eigen::Vector3d(0, 0.6, 0.8);
  EXPECT_NEAR(center_of_mass(DiscreteMeasure(same, Eigen::Vector3d(1, 2, 3))).norm(), 1.0, 1e-15);
}

TEST(Pushforward, IdentityAndReflection) {
  const SurfaceMesh mesh = icosphere(2);
  ImmersionSamples phi = identity_immersion(mesh);
  Eigen::MatrixXd tilted = phi.images();
  for (int v = 0; v < tilted.cols(); ++v) tilted.col(v) = moebius_apply(Vec(Eigen::Vector3d(0.3, 0, 0.2)), Vec(tilted.col(v)));
  const DiscreteMeasure mu(tilted, DiscreteMeasure::from_mesh(mesh, phi).weights());

  const DiscreteMeasure same = pushforward([](const Vec& x) { return x; }, mu);
  EXPECT_EQ(same.atoms(), mu.atoms());
  EXPECT_EQ(same.weights(), mu.weights());

  const Vec p = Vec(Eigen::Vector3d(1, 2, 2) / 3.0);
  const DiscreteMeasure reflected = pushforward([&](const Vec& x) { return reflect(p, x); }, mu);
  EXPECT_EQ(total_mass(reflected), total_mass(mu));
  EXPECT_LE((center_of_mass(reflected) - reflect(p, center_of_mass(mu))).norm(), 1e-14);

  const DiscreteMeasure folded = pushforward([&](const Vec& x) { return fold(p, 0.2, x); }, mu);
  for (int i = 0; i < folded.size(); ++i) {
    EXPECT_GE(cap_boundary_distance(p, 0.2, Vec(folded.atoms().col(i))), -1e-12);
  }
}

TEST(Admissible, Examples) {
  EXPECT_FALSE(hersch_admissible(DiscreteMeasure(basis_atoms(2), Eigen::Vector2d(1, 1))));
  EXPECT_TRUE(hersch_admissible(DiscreteMeasure(basis_atoms(3), Eigen::Vector3d(1, 1, 1))));
  EXPECT_FALSE(hersch_admissible(DiscreteMeasure(basis_atoms(1), Eigen::VectorXd::Ones(1))));
}

TEST(Admissible, CoincidentAtomsAreMerged) {
  Eigen::MatrixXd atoms(3, 4);
  atoms << 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
  atoms(1, 1) = 1e-13;
  atoms.col(1).normalize();
  const DiscreteMeasure mu(atoms, Eigen::Vector4d(1, 1, 1, 1));
  EXPECT_DOUBLE_EQ(max_point_mass(mu), 2.0);
  EXPECT_FALSE(hersch_admissible(mu));
  atoms(1, 1) = 1e-6;
  atoms.col(1).normalize();
  EXPECT_TRUE(hersch_admissible(DiscreteMeasure(atoms, Eigen::Vector4d(1, 1, 1, 1))));
}

TEST(Admissible, PermutationInvariant) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  Eigen::MatrixXd palette(3, 4);
  palette << 1, 0, 0, -1, 0, 1, 0, 0, 0, 0, 1, 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 6;
    Eigen::MatrixXd atoms(3, n);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
      atoms.col(i) = palette.col(pick(rng));
      w[i] = weight(rng);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Eigen::MatrixXd shuffled(3, n);
    Eigen::VectorXd sw(n);
    for (int i = 0; i < n; ++i) {
      shuffled.col(i) = atoms.col(order[i]);
      sw[i] = w[order[i]];
    }
    const DiscreteMeasure a(atoms, w);
    const DiscreteMeasure b(shuffled, sw);
    EXPECT_EQ(hersch_admissible(a), hersch_admissible(b));
    EXPECT_NEAR(max_point_mass(a), max_point_mass(b), 1e-14);
  }
}

}  // namespace
}  // namespace confspec
