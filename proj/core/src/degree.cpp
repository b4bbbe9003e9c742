#include "confspec/degree.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "confspec/error.hpp"

namespace confspec {

namespace {

double arc(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

double signed_spherical_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                             const Eigen::Vector3d& c) {
  const double x = arc(b, c);
  const double y = arc(c, a);
  const double z = arc(a, b);
  const double s = 0.5 * (x + y + z);
  const double prod = std::tan(0.5 * s) * std::tan(0.5 * (s - x)) * std::tan(0.5 * (s - y)) *
                      std::tan(0.5 * (s - z));
  const double excess = 4.0 * std::atan(std::sqrt(prod > 0.0 ? prod : 0.0));
  const double orientation = a.dot(b.cross(c));
  return orientation < 0.0 ? -excess : excess;
}

DegreeEstimate degree_estimate_raw(const Eigen::MatrixXd& values, const SurfaceMesh& mesh) {
  if (values.rows() != 3 || values.cols() != mesh.vertex_count()) {
    throw Error(ErrorCode::kPreconditionViolation, "degree needs a 3 x V sample of S^2 -> S^2");
  }
  if (mesh.topology() != Topology::kSphere) {
    throw Error(ErrorCode::kPreconditionViolation, "degree domain must be an oriented S^2 mesh");
  }
  double total = 0.0;
  for (const auto& t : mesh.triangles()) {
    total += signed_spherical_area(values.col(t[0]).normalized(), values.col(t[1]).normalized(),
                                   values.col(t[2]).normalized());
  }
  DegreeEstimate d;
  d.raw = total / (4.0 * std::numbers::pi);
  d.degree = static_cast<int>(std::lround(d.raw));
  d.non_integral = std::abs(d.raw - d.degree) > 0.1;
  return d;
}

DegreeEstimate degree_estimate(const Eigen::MatrixXd& values, const SurfaceMesh& mesh) {
  const DegreeEstimate d = degree_estimate_raw(values, mesh);
  if (d.non_integral) {
    throw Error(ErrorCode::kNonIntegralDegree,
                "degree estimate " + std::to_string(d.raw) + " is not near an integer");
  }
  return d;
}

}  // namespace confspec
