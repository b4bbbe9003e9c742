#include "confspec/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/SparseExtra>

#include "confspec/error.hpp"

namespace confspec {

namespace {

using Triplet = Eigen::Triplet<double>;

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      // Strictly larger with a little slack so ties resolve to the lowest index.
      if (std::abs(vectors(i, j)) > best * (1.0 + 1e-9)) {
        best = std::abs(vectors(i, j));
        arg = i;
      }
    }
    if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

double residual_norm(const FemMatrices& fem, const Eigen::VectorXd& v, double lambda, double scale) {
  const Eigen::VectorXd Mv = fem.mass * v;
  const Eigen::VectorXd r = fem.stiffness * v - lambda * Mv;
  return r.norm() / (scale * Mv.norm());
}

SpectralSummary dense_solve(const FemMatrices& fem, int k) {
  const Eigen::MatrixXd K(fem.stiffness);
  const Eigen::MatrixXd M(fem.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::kSolverFailure, "dense eigensolver failed");
  SpectralSummary s;
  s.eigenvalues = es.eigenvalues().head(k + 1);
  s.eigenvectors = es.eigenvectors().leftCols(k + 1);
  s.method = "dense";
  return s;
}

SpectralSummary subspace_solve(const FemMatrices& fem, int k, const EigenOptions& options) {
  const Eigen::Index n = fem.stiffness.rows();
  const int want = k + 1;
  const int block = static_cast<int>(std::min<Eigen::Index>(n, std::max(2 * want, want + 8)));
  const double shift = 1.0 / fem.volume;

  SparseMatrix shifted = fem.stiffness + shift * fem.mass;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolverFailure, "factorization of the shifted operator failed");
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = normal(rng);
  X.col(0).setOnes();

  Eigen::VectorXd theta;
  Eigen::MatrixXd ritz;
  SpectralSummary s;
  s.method = "shift-invert subspace";
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::MatrixXd Y = ldlt.solve(fem.mass * X);
    const Eigen::MatrixXd MY = fem.mass * Y;
    Eigen::MatrixXd Kr = Y.transpose() * (fem.stiffness * Y);
    Eigen::MatrixXd Mr = Y.transpose() * MY;
    Kr = 0.5 * (Kr + Kr.transpose()).eval();
    Mr = 0.5 * (Mr + Mr.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kr, Mr);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::kSolverFailure, "Rayleigh-Ritz step failed");
    }
    theta = es.eigenvalues();
    X = Y * es.eigenvectors();

    const double scale = std::max(std::abs(theta[want - 1]), shift);
    double worst = 0.0;
    for (int j = 0; j < want; ++j) {
      worst = std::max(worst, residual_norm(fem, X.col(j), theta[j], scale));
    }
    s.iterations = it;
    s.max_residual = worst;
    if (worst <= options.residual_tolerance) {
      s.eigenvalues = theta.head(want);
      s.eigenvectors = X.leftCols(want);
      return s;
    }
  }
  throw Error(ErrorCode::kSolverFailure,
              "subspace iteration did not converge, residual " + std::to_string(s.max_residual));
}

}  // namespace

int SpectralSummary::multiplicity(int j) const {
  for (const auto& c : clusters) {
    if (j >= c.first && j < c.first + c.size) return c.size;
  }
  return 1;
}

FemMatrices assemble(const SurfaceMesh& mesh, MassKind mass_kind) {
  const int n = mesh.vertex_count();
  std::vector<Triplet> kt;
  std::vector<Triplet> mt;
  kt.reserve(static_cast<std::size_t>(mesh.triangle_count()) * 9);
  mt.reserve(static_cast<std::size_t>(mesh.triangle_count()) * (mass_kind == MassKind::kLumped ? 3 : 9));
  double volume = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    const EdgeLengths& l = mesh.reference_lengths()[t];
    const double area0 = triangle_area(l);
    for (int c = 0; c < 3; ++c) {
      const int i = tri[(c + 1) % 3];
      const int j = tri[(c + 2) % 3];
      const double a = l[(c + 1) % 3];
      const double b = l[(c + 2) % 3];
      const double cot = (a * a + b * b - l[c] * l[c]) / (4.0 * area0);
      const double w = 0.5 * cot;
      kt.emplace_back(i, j, -w);
      kt.emplace_back(j, i, -w);
      kt.emplace_back(i, i, w);
      kt.emplace_back(j, j, w);
    }
    const double area = mesh.metric_area(t);
    volume += area;
    if (mass_kind == MassKind::kLumped) {
      for (int v : tri) mt.emplace_back(v, v, area / 3.0);
    } else {
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) mt.emplace_back(tri[a], tri[b], area / (a == b ? 6.0 : 12.0));
    }
  }
  FemMatrices fem;
  fem.stiffness.resize(n, n);
  fem.mass.resize(n, n);
  fem.stiffness.setFromTriplets(kt.begin(), kt.end());
  fem.mass.setFromTriplets(mt.begin(), mt.end());
  fem.mass_kind = mass_kind;
  fem.volume = volume;
  for (const SparseMatrix* m : {&fem.stiffness, &fem.mass}) {
    for (Eigen::Index i = 0; i < m->nonZeros(); ++i) {
      if (!std::isfinite(m->valuePtr()[i])) {
        throw Error(ErrorCode::kNonFiniteEntry, "assembled matrix has a non-finite entry");
      }
    }
  }
  return fem;
}

std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXd& values, double gap) {
  std::vector<EigenCluster> clusters;
  const Eigen::Index n = values.size();
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && std::abs(values[j] - values[j - 1]) <= gap * std::max(std::abs(values[j]), std::abs(values[j - 1]))) {
      ++j;
    }
    EigenCluster c;
    c.first = static_cast<int>(i);
    c.size = static_cast<int>(j - i);
    c.mean = values.segment(i, j - i).mean();
    clusters.push_back(c);
    i = j;
  }
  return clusters;
}

SpectralSummary eigenpairs(const FemMatrices& fem, int k, const EigenOptions& options) {
  const Eigen::Index n = fem.stiffness.rows();
  if (k < 2 || k + 1 > n) {
    throw Error(ErrorCode::kPreconditionViolation, "need 2 <= k < number of vertices");
  }
  SpectralSummary s = n <= options.dense_limit ? dense_solve(fem, k) : subspace_solve(fem, k, options);
  // M-orthonormalize explicitly; Ritz vectors are orthonormal only up to rounding.
  Eigen::MatrixXd G = s.eigenvectors.transpose() * (fem.mass * s.eigenvectors);
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (G + G.transpose()));
  if (llt.info() == Eigen::Success) {
    s.eigenvectors = llt.matrixU().solve<Eigen::OnTheRight>(s.eigenvectors);
  }
  fix_signs(s.eigenvectors);
  s.volume = fem.volume;
  s.clusters = cluster_eigenvalues(s.eigenvalues, options.cluster_gap);
  if (s.method == "dense") {
    const double scale = std::max(std::abs(s.eigenvalues[k]), 1.0 / fem.volume);
    for (int j = 0; j <= k; ++j) {
      s.max_residual = std::max(s.max_residual, residual_norm(fem, s.eigenvectors.col(j), s.eigenvalues[j], scale));
    }
  }
  return s;
}

Eigen::VectorXd normalized(const SpectralSummary& summary) { return summary.eigenvalues * summary.volume; }

double rayleigh_quotient(const SparseMatrix& K, const SparseMatrix& M, const Eigen::VectorXd& f) {
  const double den = f.dot(M * f);
  if (!(den > 0.0)) throw Error(ErrorCode::kZeroFunction, "Rayleigh quotient of the zero function");
  return f.dot(K * f) / den;
}

void export_matrix_market(const SparseMatrix& matrix, const std::string& path) {
  if (!Eigen::saveMarket(matrix, path)) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
}

}  // namespace confspec
