#include "confspec/hersch_solver.hpp"

#include <cmath>

#include <Eigen/LU>

#include "confspec/error.hpp"

namespace confspec {

namespace {

constexpr double kMaxNorm = 1.0 - kBoundaryEpsilon;

Vec clamp(const Vec& xi) {
  const double n = xi.norm();
  return n <= kMaxNorm ? xi : Vec(xi * (kMaxNorm / n));
}

Mat jacobian(const DiscreteMeasure& mu, const Vec& xi, double h) {
  const int d = static_cast<int>(xi.size());
  Mat J(d, d);
  for (int j = 0; j < d; ++j) {
    Vec plus = xi;
    Vec minus = xi;
    plus[j] += h;
    minus[j] -= h;
    // Keep the stencil inside the ball; fall back to a one-sided difference.
    double span = 2.0 * h;
    if (plus.norm() > kMaxNorm) {
      plus = xi;
      span = h;
    }
    if (minus.norm() > kMaxNorm) {
      minus = xi;
      span = h;
    }
    J.col(j) = (renormalization_residual(mu, plus) - renormalization_residual(mu, minus)) / span;
  }
  return J;
}

}  // namespace

Vec renormalization_residual(const DiscreteMeasure& mu, const Vec& xi) {
  Vec g = Vec::Zero(mu.ambient_dim());
  const auto& atoms = mu.atoms();
  const auto& w = mu.weights();
  const double a = 1.0 - xi.squaredNorm();
  Vec s(mu.ambient_dim());
  for (int i = 0; i < mu.size(); ++i) {
    s = atoms.col(i) + xi;
    g += w[i] * (xi + (a / s.squaredNorm()) * s);
  }
  return g;
}

RenormalizationResult renormalize(const DiscreteMeasure& mu, const RenormalizationOptions& options) {
  if (!hersch_admissible(mu)) {
    throw Error(ErrorCode::kNotAdmissible, "a single point carries at least half of the mass");
  }
  const double mass = total_mass(mu);
  const double tol = options.relative_tolerance * mass;

  Vec xi = clamp(-center_of_mass(mu));
  Vec g = renormalization_residual(mu, xi);
  double gnorm = g.norm();
  int iter = 0;

  auto fixed_point = [&] {
    for (int k = 0; k < options.fixed_point_steps && gnorm > tol; ++k) {
      xi = clamp(Vec(xi - 0.5 * g / mass));
      g = renormalization_residual(mu, xi);
      gnorm = g.norm();
    }
  };

  while (gnorm > tol && iter < options.max_iterations) {
    ++iter;
    const Mat J = jacobian(mu, xi, options.jacobian_step);
    Eigen::PartialPivLU<Mat> lu(J);
    Vec step = -lu.solve(g);
    bool improved = false;
    if (step.allFinite()) {
      double alpha = 1.0;
      for (int k = 0; k < 40; ++k) {
        const Vec trial = clamp(Vec(xi + alpha * step));
        const Vec gt = renormalization_residual(mu, trial);
        const double nt = gt.norm();
        if (nt < gnorm) {
          xi = trial;
          g = gt;
          gnorm = nt;
          improved = true;
          break;
        }
        alpha *= 0.5;
      }
    }
    if (!improved) {
      const double before = gnorm;
      fixed_point();
      if (!(gnorm < before)) break;
    }
  }

  RenormalizationResult r(BallPoint::clamped(xi));
  r.residual_norm = gnorm;
  r.iterations = iter;
  r.near_boundary = xi.norm() > kNearBoundaryRadius;
  r.status = gnorm <= tol ? RenormalizationStatus::kConverged : RenormalizationStatus::kMaxIterations;
  return r;
}

DiscreteMeasure renormalized_pushforward(const DiscreteMeasure& mu,
                                         const RenormalizationOptions& options) {
  const RenormalizationResult r = renormalize(mu, options);
  const Vec xi = r.xi.coords();
  return pushforward([&](const Vec& x) { return moebius_apply(xi, x); }, mu);
}

}  // namespace confspec
