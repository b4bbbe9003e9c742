#pragma once

// Weighted atomic measures on S^n. Atoms are stored column-wise.

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "confspec/surface_mesh.hpp"
#include "confspec/vec.hpp"

namespace confspec {

// Atoms closer than this (Euclidean) are treated as one point.
inline constexpr double kAtomCoincidence = 1e-12;

class DiscreteMeasure {
 public:
  // Throws Error(kEmptyMeasure) with no atoms, Error(kPreconditionViolation)
  // on size mismatch or non-positive weights.
  DiscreteMeasure(Eigen::MatrixXd atoms, Eigen::VectorXd weights);

  // phi_* of the lumped vertex masses of the mesh metric.
  static DiscreteMeasure from_mesh(const SurfaceMesh& mesh, const ImmersionSamples& phi);

  const Eigen::MatrixXd& atoms() const { return atoms_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }
  int ambient_dim() const { return static_cast<int>(atoms_.rows()); }

 private:
  Eigen::MatrixXd atoms_;
  Eigen::VectorXd weights_;
};

double total_mass(const DiscreteMeasure& mu);

// (1 / mu(S^n)) * sum w_i x_i
Vec center_of_mass(const DiscreteMeasure& mu);

using SphereMap = std::function<Vec(const Vec&)>;

// Maps atoms, keeps weights.
DiscreteMeasure pushforward(const SphereMap& f, const DiscreteMeasure& mu);

// Largest total weight sitting at a single point, atoms within kAtomCoincidence merged.
double max_point_mass(const DiscreteMeasure& mu);

// mu({y}) < mu(S^n) / 2 for every y.
bool hersch_admissible(const DiscreteMeasure& mu);

}  // namespace confspec
