#pragma once

// Named presets for log conformal factors u, evaluated at mesh vertices.

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "confspec/surface_mesh.hpp"

namespace confspec {

struct BumpFactor {
  Eigen::Vector3d center{0.0, 0.0, 1.0};
  double width = 0.5;
  double amplitude = 1.0;
};

struct RandomFourierFactor {
  std::uint64_t seed = 0;
  int modes = 4;
  double amplitude = 1.0;
};

// u(x) = amplitude * exp(-theta^2 / (2 width^2)), theta the geodesic distance
// to the centre. Needs positions on the unit sphere; on RP^2 the bump is
// symmetrized over the antipodal pair.
Eigen::VectorXd bump_factor(const SurfaceMesh& mesh, const BumpFactor& bump);

// Seeded sum of low-frequency waves normalized so that max |u| <= amplitude.
// Sphere: plane waves cos(k <d, x> + theta) restricted to S^2 (even waves on RP^2).
// Torus: lattice Fourier modes cos(2 pi (a s + b t) + theta).
Eigen::VectorXd random_fourier_factor(const SurfaceMesh& mesh, const RandomFourierFactor& spec);

}  // namespace confspec
