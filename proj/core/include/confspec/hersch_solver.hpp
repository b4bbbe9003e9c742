#pragma once

// Renormalization of measures on S^n: the point xi of the open ball for which
// the pushforward under phi_xi has its center of mass at the origin.

#include <utility>

#include "confspec/discrete_measure.hpp"
#include "confspec/sphere_geometry.hpp"

namespace confspec {

enum class RenormalizationStatus { kConverged, kMaxIterations };

struct RenormalizationOptions {
  // Absolute tolerance is relative_tolerance * total mass.
  double relative_tolerance = 1e-10;
  int max_iterations = 200;
  double jacobian_step = 1e-6;
  int fixed_point_steps = 50;
};

struct RenormalizationResult {
  explicit RenormalizationResult(BallPoint point) : xi(std::move(point)) {}

  BallPoint xi;
  double residual_norm = 0.0;
  int iterations = 0;
  // ||xi|| > 1 - 1e-6
  bool near_boundary = false;
  RenormalizationStatus status = RenormalizationStatus::kConverged;

  bool converged() const { return status == RenormalizationStatus::kConverged; }
};

inline constexpr double kNearBoundaryRadius = 1.0 - 1e-6;

// G(xi) = sum_i w_i phi_xi(x_i)
Vec renormalization_residual(const DiscreteMeasure& mu, const Vec& xi);

// Throws Error(kNotAdmissible) unless hersch_admissible(mu). Failure to reach
// the tolerance is reported through status, with the best iterate returned.
RenormalizationResult renormalize(const DiscreteMeasure& mu,
                                  const RenormalizationOptions& options = {});

// pushforward(phi_xi, mu) for xi = renormalize(mu).xi
DiscreteMeasure renormalized_pushforward(const DiscreteMeasure& mu,
                                         const RenormalizationOptions& options = {});

}  // namespace confspec
