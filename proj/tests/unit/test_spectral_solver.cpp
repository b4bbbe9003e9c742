#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "confspec/conformal_factor.hpp"
#include "confspec/error.hpp"
#include "confspec/spectral_solver.hpp"
#include "confspec/surface_mesh.hpp"

namespace confspec {
namespace {

// Smallest nonzero 4 pi^2 |k*|^2 over the dual lattice, with its multiplicity.
std::pair<double, int> dual_lattice_first(const Lattice& lattice) {
  Eigen::Matrix2d b;
  b.col(0) = lattice.b1;
  b.col(1) = lattice.b2;
  const Eigen::Matrix2d dual = b.inverse().transpose();
  std::vector<double> values;
  for (int i = -6; i <= 6; ++i) {
    for (int j = -6; j <= 6; ++j) {
      if (i == 0 && j == 0) continue;
      values.push_back(4.0 * M_PI * M_PI * (dual * Eigen::Vector2d(i, j)).squaredNorm());
    }
  }
  std::sort(values.begin(), values.end());
  int count = 0;
  for (double v : values) count += std::abs(v - values.front()) < 1e-9 * values.front();
  return {values.front(), count};
}

TEST(DualLatticeOracle, KnownValues) {
  const auto square = dual_lattice_first(Lattice::square());
  EXPECT_NEAR(square.first, 4.0 * M_PI * M_PI, 1e-12);
  EXPECT_EQ(square.second, 4);
  const auto eq = dual_lattice_first(Lattice::equilateral());
  EXPECT_NEAR(eq.first, 16.0 * M_PI * M_PI / 3.0, 1e-11);
  EXPECT_EQ(eq.second, 6);
}

TEST(Assemble, ConstantsInKernelAndLumpedTrace) {
  const std::vector<SurfaceMesh> meshes = {icosphere(3), flat_torus(Lattice::equilateral(), 24),
                                           klein_bottle_revolution(32, 32), projective_plane(3)};
  for (const SurfaceMesh& mesh : meshes) {
    const FemMatrices fem = assemble(mesh);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.vertex_count());
    EXPECT_LE((fem.stiffness * ones).cwiseAbs().maxCoeff(), 1e-10) << mesh.provenance();
    EXPECT_NEAR(Eigen::VectorXd(fem.mass.diagonal()).sum(), mesh.total_area(), 1e-10 * mesh.total_area());
    EXPECT_NEAR(fem.volume, mesh.total_area(), 1e-12 * mesh.total_area());
    const SparseMatrix asym = fem.stiffness - SparseMatrix(fem.stiffness.transpose());
    EXPECT_EQ(asym.norm(), 0.0);
  }
}

TEST(Assemble, StiffnessIsConformallyInvariant) {
  const SurfaceMesh mesh = icosphere(3);
  const SurfaceMesh scaled = apply_conformal_factor(mesh, random_fourier_factor(mesh, {7, 4, 1.0}));
  const FemMatrices a = assemble(mesh);
  const FemMatrices b = assemble(scaled);
  EXPECT_LE(SparseMatrix(a.stiffness - b.stiffness).coeffs().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT(std::abs(a.volume - b.volume), 1e-3);
}

TEST(Assemble, ConsistentMassHasSameTotal) {
  const SurfaceMesh mesh = icosphere(2);
  const FemMatrices fem = assemble(mesh, MassKind::kConsistent);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.vertex_count());
  EXPECT_NEAR(ones.dot(fem.mass * ones), mesh.total_area(), 1e-10);
}

TEST(Eigenpairs, RoundSphere) {
  const SurfaceMesh mesh = icosphere(5);
  const SpectralSummary s = eigenpairs(assemble(mesh), 4);
  EXPECT_NEAR(s.eigenvalues[1] / 2.0, 1.0, 0.005);
  EXPECT_EQ(s.multiplicity(1), 3);
  EXPECT_LE(std::abs(s.eigenvalues[0]), 1e-8 * s.eigenvalues[1]);
  EXPECT_NEAR(normalized(s)[1] / (8.0 * M_PI), 1.0, 0.01);
}

TEST(Eigenpairs, SquareTorus) {
  const SurfaceMesh mesh = flat_torus(Lattice::square(), 64);
  const SpectralSummary s = eigenpairs(assemble(mesh), 5);
  const auto oracle = dual_lattice_first(Lattice::square());
  EXPECT_NEAR(s.eigenvalues[1] / oracle.first, 1.0, 0.005);
  EXPECT_EQ(s.multiplicity(1), oracle.second);
}

TEST(Eigenpairs, EquilateralTorus) {
  const SurfaceMesh mesh = flat_torus(Lattice::equilateral(), 48);
  const SpectralSummary s = eigenpairs(assemble(mesh), 7);
  EXPECT_NEAR(s.eigenvalues[1] / (16.0 * M_PI * M_PI / 3.0), 1.0, 0.005);
  EXPECT_EQ(s.multiplicity(1), 6);
  EXPECT_NEAR(normalized(s)[1] / (8.0 * M_PI * M_PI * std::sqrt(3.0) / 3.0), 1.0, 0.01);
}

TEST(Eigenpairs, MassOrthonormalBothPaths) {
  const SurfaceMesh small = icosphere(2);
  const SurfaceMesh large = icosphere(4);
  for (const SurfaceMesh* mesh : {&small, &large}) {
    const FemMatrices fem = assemble(*mesh);
    const SpectralSummary s = eigenpairs(fem, 6);
    const Eigen::MatrixXd gram = s.eigenvectors.transpose() * (fem.mass * s.eigenvectors);
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-8) << s.method;
    for (int j = 0; j < 7; ++j) {
      EXPECT_NEAR(rayleigh_quotient(fem.stiffness, fem.mass, s.eigenvectors.col(j)), s.eigenvalues[j],
                  1e-10 * std::max(1.0, s.eigenvalues[j]));
    }
  }
}

TEST(Eigenpairs, DenseAndIterativeAgree) {
  const FemMatrices fem = assemble(icosphere(3));
  EigenOptions dense;
  dense.dense_limit = 100000;
  EigenOptions sparse;
  sparse.dense_limit = 0;
  const SpectralSummary a = eigenpairs(fem, 8, dense);
  const SpectralSummary b = eigenpairs(fem, 8, sparse);
  EXPECT_NE(a.method, b.method);
  for (int j = 1; j <= 8; ++j) EXPECT_NEAR(a.eigenvalues[j], b.eigenvalues[j], 1e-8 * a.eigenvalues[j]);
}

TEST(Eigenpairs, SphereConvergesAtSecondOrder) {
  const double e4 = std::abs(eigenpairs(assemble(icosphere(4)), 3).eigenvalues[1] - 2.0);
  const double e5 = std::abs(eigenpairs(assemble(icosphere(5)), 3).eigenvalues[1] - 2.0);
  EXPECT_GT(e4 / e5, 3.0);
}

TEST(Eigenpairs, PermutationInvariant) {
  const SurfaceMesh mesh = apply_conformal_factor(icosphere(3), random_fourier_factor(icosphere(3), {2, 4, 0.8}));
  std::vector<int> order(mesh.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(3);
  std::shuffle(order.begin(), order.end(), rng);
  const SpectralSummary a = eigenpairs(assemble(mesh), 6);
  const SpectralSummary b = eigenpairs(assemble(mesh.permuted(order)), 6);
  for (int j = 1; j <= 6; ++j) EXPECT_NEAR(a.eigenvalues[j], b.eigenvalues[j], 1e-9 * a.eigenvalues[j]);
}

TEST(Eigenpairs, PreconditionsAreChecked) {
  const FemMatrices fem = assemble(icosphere(0));
  EXPECT_THROW(eigenpairs(fem, 1), Error);
  EXPECT_THROW(eigenpairs(fem, 12), Error);
}

TEST(Rayleigh, CoordinateFunctionOnSphere) {
  const SurfaceMesh mesh = icosphere(5);
  const FemMatrices fem = assemble(mesh);
  const Eigen::VectorXd z = mesh.positions().row(2).transpose();
  EXPECT_NEAR(rayleigh_quotient(fem.stiffness, fem.mass, z), 2.0, 0.01);
}

TEST(Rayleigh, MinMaxHoldsForRandomFunctions) {
  const SurfaceMesh mesh = apply_conformal_factor(icosphere(3), random_fourier_factor(icosphere(3), {5, 4, 1.0}));
  const FemMatrices fem = assemble(mesh);
  const SpectralSummary s = eigenpairs(fem, 4);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd f(mesh.vertex_count());
    for (int i = 0; i < f.size(); ++i) f[i] = normal(rng);
    for (int j = 0; j < 2; ++j) {
      const Eigen::VectorXd e = s.eigenvectors.col(j);
      f -= e.dot(fem.mass * f) * e;
    }
    EXPECT_GE(rayleigh_quotient(fem.stiffness, fem.mass, f), s.eigenvalues[2] * (1.0 - 1e-12));
  }
  EXPECT_THROW(rayleigh_quotient(fem.stiffness, fem.mass, Eigen::VectorXd::Zero(mesh.vertex_count())), Error);
}

TEST(Clusters, GroupsByRelativeGap) {
  Eigen::VectorXd v(6);
  v << 0.0, 2.0, 2.0 + 1e-9, 2.0 + 2e-9, 6.0, 6.1;
  const std::vector<EigenCluster> c = cluster_eigenvalues(v, 1e-6);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[1].first, 1);
  EXPECT_EQ(c[1].size, 3);
}

TEST(MatrixMarket, WritesCoordinateFile) {
  const FemMatrices fem = assemble(icosphere(1));
  const auto path = std::filesystem::temp_directory_path() / "confspec_stiffness.mtx";
  export_matrix_market(fem.stiffness, path.string());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("%%MatrixMarket matrix coordinate", 0), 0u);
  EXPECT_NE(header.find("real"), std::string::npos);
  std::filesystem::remove(path);
  EXPECT_THROW(export_matrix_market(fem.stiffness, "/nonexistent/dir/x.mtx"), Error);
}

}  // namespace
}  // namespace confspec
