#pragma once

// Folded, renormalized trial functions for lambda_2 and the inequality chain
//   lambda_2 vol <= E(f_C) = 2 area(folded map) <= 4 V_c   (m = 2).
//
// All functions take an immersion phi sampled at mesh vertices. The cap
// search assumes phi is already renormalized (center of mass at the origin),
// see renormalized_immersion.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "confspec/degree.hpp"
#include "confspec/hersch_solver.hpp"
#include "confspec/spectral_solver.hpp"
#include "confspec/sphere_geometry.hpp"
#include "confspec/surface_mesh.hpp"

namespace confspec {

// phi_xi o phi with xi the renormalization point of the mesh measure phi_* dv_g.
ImmersionSamples renormalized_immersion(const SurfaceMesh& mesh, const ImmersionSamples& phi);

// sum_v m_v phi(v) f1(v), lumped masses of the mesh metric.
Vec moment_against_f1(const SurfaceMesh& mesh, const ImmersionSamples& phi, const Eigen::VectorXd& f1);

struct FirstEigenfunction {
  int index = 1;
  Eigen::VectorXd values;
  Vec moment;
};

// Among the eigenvectors of the lambda_1 cluster, the one with the largest
// moment norm; ties go to the lower index.
FirstEigenfunction choose_f1(const SpectralSummary& summary, const SurfaceMesh& mesh,
                             const ImmersionSamples& phi);

struct FoldedTrial {
  explicit FoldedTrial(RenormalizationResult r) : renormalization(std::move(r)) {}

  // (n+1) x V, column v is phi_{xi_C}(F_C(phi(v))).
  Eigen::MatrixXd values;
  RenormalizationResult renormalization;
  // ||sum_v m_v f_C(v)||
  double mean_residual = 0.0;
};

// Throws Error(kNotAdmissible) when the folded measure is not Hersch admissible.
FoldedTrial folded_trial(const SurfaceMesh& mesh, const ImmersionSamples& phi, const SphericalCap& cap);

// psi(p, t) = sum_v m_v phi_{xi_C}(F_C(phi(v))) f1(v)
Vec psi(const SurfaceMesh& mesh, const ImmersionSamples& phi, const Eigen::VectorXd& f1,
        const SphericalCap& cap);

struct CapSearchOptions {
  // Nelder-Mead evaluation budget for each refinement start.
  int budget = 400;
  int starts = 3;
  // Random grid directions when the sphere is not S^2.
  int random_directions = 200;
  int t_steps = 16;
  int newton_iterations = 40;
  std::uint64_t seed = 1;
};

struct CapLandscapeSample {
  Vec p;
  double t = 0.0;
  double psi_norm = 0.0;
};

struct CapSearchResult {
  CapSearchResult(SphericalCap c, BallPoint x) : cap(std::move(c)), xi(std::move(x)) {}

  SphericalCap cap;
  BallPoint xi;
  double psi_norm = 0.0;
  double tolerance = 0.0;
  bool success = false;
  double mean_residual = 0.0;
  // psi at the returned cap, one entry per coordinate.
  Vec moment_residual;
  int evaluations = 0;
  std::vector<CapLandscapeSample> landscape;
};

// tol_psi = 1e-6 * vol * max |f1|
double psi_tolerance(const SurfaceMesh& mesh, const Eigen::VectorXd& f1);

// Searches caps C_(p,t), t in [0, 1), for psi(p, t) = 0. The search runs over
// z = (1 - t) p in the closed unit ball. Throws Error(kPreconditionViolation)
// when the moment of phi against f1 vanishes, Error(kSearchFailure) when no
// cap reaches the tolerance (the landscape is attached to the message).
CapSearchResult cap_search(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                           const Eigen::VectorXd& f1, const CapSearchOptions& options = {});

// As cap_search but returns the best cap with success = false instead of throwing.
CapSearchResult cap_search_best_effort(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                       const Eigen::VectorXd& f1, const CapSearchOptions& options = {});

// Degree of p -> psi(p, 0) / |psi(p, 0)| over an icosphere of directions (n = 2 only).
DegreeEstimate hemisphere_degree(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                 const Eigen::VectorXd& f1, int subdivisions = 2);

struct FoldSplit {
  // Dirichlet energy of the folded map phi_xi o F_C o phi.
  double folded_energy = 0.0;
  // Twice the energy of phi_xi o phi over phi^{-1}(C).
  double twice_inside_energy = 0.0;
  double relative_gap = 0.0;
};

// Both energies with triangles straddling the boundary of C split 4-way up to
// `depth` times. Sub-triangles are similar to their parent, so the parent's
// cotangent weights apply unchanged. The two sides agree for phi = id on S^2.
FoldSplit fold_split(const SurfaceMesh& mesh, const ImmersionSamples& phi, const SphericalCap& cap,
                     const BallPoint& xi, int depth = 3);

struct BoundReport {
  double volume = 0.0;
  double lambda2_fem = 0.0;
  double lambda2_bar_fem = 0.0;
  // sum_i f_i^T K f_i / sum_i f_i^T M f_i for the projected trial functions.
  double rayleigh_bound = 0.0;
  // Energy of the unprojected trial functions, and half of it.
  double trial_energy = 0.0;
  double folded_area = 0.0;
  double vc_estimate = 0.0;
  // 2^{2/m} m V_c^{2/m} at m = 2
  double theorem_rhs = 0.0;
  // Relative M-norm removed by projecting off {1, f1}.
  double projection_magnitude = 0.0;
  double mean_residual = 0.0;
  double moment_residual = 0.0;
  bool folded = false;
  bool chain_ok = false;
};

inline constexpr double kMinMaxSlack = 1e-8;
inline constexpr double kVolumeSlack = 0.02;

// With a cap, the trial functions are the folded ones; without, the
// coordinates of phi itself (zero-moment branch). The trial functions are
// projected M-orthogonally off the constants and f1 before the Rayleigh
// quotient, so lambda_2 <= rayleigh_bound holds exactly by min-max.
BoundReport lambda2_upper_bound(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                const FemMatrices& fem, const SpectralSummary& summary,
                                const FirstEigenfunction& f1, const std::optional<SphericalCap>& cap,
                                double vc_estimate);

}  // namespace confspec
