#pragma once

// Derivative-free local minimization.

#include <functional>

#include <Eigen/Core>

namespace confspec {

struct NelderMeadOptions {
  double initial_step = 0.1;
  // Stops when the simplex characteristic size falls below this.
  double size_tolerance = 1e-8;
  int max_evaluations = 400;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Minimizes f from x0. The returned point is the best one evaluated, so a
// larger evaluation budget never gives a worse value.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options = {});

}  // namespace confspec
