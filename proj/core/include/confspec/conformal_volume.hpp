#pragma once

// Pulled-back volumes of an immersion composed with Moebius maps, and a search
// for their supremum over the ball.

#include <cstdint>
#include <vector>

#include "confspec/sphere_geometry.hpp"
#include "confspec/surface_mesh.hpp"

namespace confspec {

struct QuadratureOptions {
  // Sub-triangles are split while max/min of rho^2 over their corners exceeds this.
  double rho_ratio = 1.5;
  // ... or while an image edge is longer than this times the smallest |y + xi|
  // at a corner, which catches peaks of rho^2 hidden inside a triangle.
  double scale_ratio = 0.25;
  int max_depth = 18;
};

// Area of (phi_xi o phi)^* g_{S^n}. Each triangle of the image is integrated as
// its chordal area times the corner average of rho_xi^2, refined adaptively by
// midpoint subdivision projected back to the sphere. At xi = 0 no refinement
// happens and the result is the plain pullback area.
double volume_under_moebius(const SurfaceMesh& mesh, const ImmersionSamples& phi, const BallPoint& xi,
                            const QuadratureOptions& options = {});

// Pullback area of phi (xi = 0).
double pullback_area(const SurfaceMesh& mesh, const ImmersionSamples& phi);

struct LandscapeSample {
  Vec xi;
  double value = 0.0;
};

struct ConformalVolumeOptions {
  // Evaluation budget of every local refinement.
  int budget = 300;
  int restarts = 3;
  double max_radius = 1.0 - 1e-3;
  std::vector<double> radii = {0.2, 0.4, 0.6, 0.8, 0.9, 0.97, 0.99, 0.999};
  // Random directions added to the +-axes when n > 2.
  int random_directions = 48;
  std::uint64_t seed = 1;
  QuadratureOptions quadrature;
};

struct ConformalVolumeEstimate {
  // Best value found. A lower bound for the supremum, not the supremum itself.
  double value = 0.0;
  BallPoint argmax_xi = BallPoint::origin(3);
  double value_at_origin = 0.0;
  bool boundary_supremum = false;
  bool budget_exhausted = false;
  int evaluations = 0;
  std::vector<LandscapeSample> samples;

  double grid_min() const;
  double grid_max() const;
};

ConformalVolumeEstimate estimate_vc(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                    const ConformalVolumeOptions& options = {});

// Directions used for the grid: icosphere level-1 vertices on S^2, otherwise
// the +-axes followed by seeded random unit vectors.
std::vector<Vec> search_directions(int ambient_dim, int random_count, std::uint64_t seed);

}  // namespace confspec
