#pragma once

#include <Eigen/Core>

#include "confspec/surface_mesh.hpp"

namespace confspec {

struct DegreeEstimate {
  int degree = 0;
  // (1 / 4 pi) * sum of signed spherical areas of the image triangles.
  double raw = 0.0;
  // |raw - degree| > 0.1
  bool non_integral = false;
};

// Signed area of the spherical triangle (a, b, c): L'Huilier's formula for the
// spherical excess, sign from det[a, b, c].
double signed_spherical_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                             const Eigen::Vector3d& c);

// Degree of a map S^2 -> S^2 sampled at the vertices of an oriented sphere
// mesh (values is 3 x V). Never throws on a wild map; inspect non_integral.
DegreeEstimate degree_estimate_raw(const Eigen::MatrixXd& values, const SurfaceMesh& mesh);

// As above but throws Error(kNonIntegralDegree) when the estimate is more than
// 0.1 away from every integer.
DegreeEstimate degree_estimate(const Eigen::MatrixXd& values, const SurfaceMesh& mesh);

}  // namespace confspec
