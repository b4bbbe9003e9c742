#pragma once

// P1 finite elements for the Laplace-Beltrami operator on a SurfaceMesh and the
// generalized eigenproblem K v = lambda M v.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "confspec/surface_mesh.hpp"

namespace confspec {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class MassKind { kLumped, kConsistent };

struct FemMatrices {
  // Cotangent stiffness built from the reference lengths. In two dimensions the
  // Dirichlet energy is conformally invariant, so K does not see the factor.
  SparseMatrix stiffness;
  // Mass matrix of the metric e^{2u} g0.
  SparseMatrix mass;
  MassKind mass_kind = MassKind::kLumped;
  double volume = 0.0;
};

// Throws Error(kNonFiniteEntry) if any assembled entry is not finite.
FemMatrices assemble(const SurfaceMesh& mesh, MassKind mass_kind = MassKind::kLumped);

struct EigenOptions {
  // Problems with at most this many vertices go to a dense solver.
  int dense_limit = 800;
  double residual_tolerance = 1e-10;
  int max_iterations = 2000;
  std::uint64_t seed = 0x5eed;
  // Eigenvalues closer than this (relative) form one cluster.
  double cluster_gap = 1e-6;
};

struct EigenCluster {
  int first = 0;
  int size = 0;
  double mean = 0.0;
};

struct SpectralSummary {
  // lambda_0 <= ... <= lambda_k
  Eigen::VectorXd eigenvalues;
  // One M-orthonormal column per eigenvalue.
  Eigen::MatrixXd eigenvectors;
  double volume = 0.0;
  std::vector<EigenCluster> clusters;
  int iterations = 0;
  double max_residual = 0.0;
  std::string method;

  // Number of eigenvalues in the cluster containing index j.
  int multiplicity(int j) const;
};

// Lowest k + 1 eigenpairs. Throws Error(kPreconditionViolation) for k < 2 or
// k + 1 > number of vertices, Error(kSolverFailure) without convergence.
SpectralSummary eigenpairs(const FemMatrices& fem, int k, const EigenOptions& options = {});

// lambda_j * volume (m = 2)
Eigen::VectorXd normalized(const SpectralSummary& summary);

// f^T K f / f^T M f. Throws Error(kZeroFunction) when f^T M f vanishes.
double rayleigh_quotient(const SparseMatrix& K, const SparseMatrix& M, const Eigen::VectorXd& f);

// Groups sorted eigenvalues whose relative gap is below `gap`.
std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXd& values, double gap);

// Matrix Market coordinate format. Throws Error(kIoError).
void export_matrix_market(const SparseMatrix& matrix, const std::string& path);

}  // namespace confspec
