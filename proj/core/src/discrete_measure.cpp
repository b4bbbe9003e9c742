#include "confspec/discrete_measure.hpp"

#include <algorithm>
#include <numeric>

#include "confspec/error.hpp"

namespace confspec {

DiscreteMeasure::DiscreteMeasure(Eigen::MatrixXd atoms, Eigen::VectorXd weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (weights_.size() == 0) throw Error(ErrorCode::kEmptyMeasure, "measure has no atoms");
  if (atoms_.cols() != weights_.size()) {
    throw Error(ErrorCode::kPreconditionViolation, "atoms and weights differ in length");
  }
  if (atoms_.rows() < 2 || atoms_.rows() > kMaxAmbientDim) {
    throw Error(ErrorCode::kPreconditionViolation, "unsupported ambient dimension");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw Error(ErrorCode::kPreconditionViolation, "weights must be positive and finite");
    }
  }
}

DiscreteMeasure DiscreteMeasure::from_mesh(const SurfaceMesh& mesh, const ImmersionSamples& phi) {
  if (phi.vertex_count() != mesh.vertex_count()) {
    throw Error(ErrorCode::kPreconditionViolation, "immersion samples do not match the mesh");
  }
  return DiscreteMeasure(phi.images(), mesh.lumped_vertex_mass());
}

double total_mass(const DiscreteMeasure& mu) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < mu.weights().size(); ++i) m += mu.weights()[i];
  return m;
}

Vec center_of_mass(const DiscreteMeasure& mu) {
  Vec c = Vec::Zero(mu.ambient_dim());
  for (int i = 0; i < mu.size(); ++i) c += mu.weights()[i] * mu.atoms().col(i);
  return c / total_mass(mu);
}

DiscreteMeasure pushforward(const SphereMap& f, const DiscreteMeasure& mu) {
  Eigen::MatrixXd atoms(mu.ambient_dim(), mu.size());
  for (int i = 0; i < mu.size(); ++i) {
    const Vec y = f(Vec(mu.atoms().col(i)));
    if (y.size() != mu.ambient_dim()) {
      throw Error(ErrorCode::kPreconditionViolation, "pushforward map changes dimension");
    }
    atoms.col(i) = y;
  }
  return DiscreteMeasure(std::move(atoms), mu.weights());
}

double max_point_mass(const DiscreteMeasure& mu) {
  const int n = mu.size();
  const auto& x = mu.atoms();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (x(0, a) != x(0, b)) return x(0, a) < x(0, b);
    return a < b;
  });
  // Union-find over pairs within the coincidence radius; only atoms whose
  // first coordinates are that close can qualify.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && x(0, order[j]) - x(0, order[i]) <= kAtomCoincidence; ++j) {
      if ((x.col(order[i]) - x.col(order[j])).norm() <= kAtomCoincidence) {
        parent[find(order[i])] = find(order[j]);
      }
    }
  }
  std::vector<double> mass(n, 0.0);
  for (int i = 0; i < n; ++i) mass[find(i)] += mu.weights()[i];
  return *std::max_element(mass.begin(), mass.end());
}

bool hersch_admissible(const DiscreteMeasure& mu) {
  return max_point_mass(mu) < 0.5 * total_mass(mu);
}

}  // namespace confspec
