#include "confspec/conformal_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "confspec/error.hpp"

namespace confspec {

namespace {

double geodesic(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

Eigen::VectorXd bump_factor(const SurfaceMesh& mesh, const BumpFactor& bump) {
  if (mesh.positions().rows() != 3) {
    throw Error(ErrorCode::kPreconditionViolation, "bump factor needs positions on S^2");
  }
  if (!(bump.width > 0.0)) throw Error(ErrorCode::kPreconditionViolation, "bump width must be > 0");
  const Eigen::Vector3d c = bump.center.normalized();
  const bool symmetric = mesh.topology() == Topology::kProjectivePlane;
  Eigen::VectorXd u(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Eigen::Vector3d x = mesh.positions().col(v).normalized();
    auto profile = [&](const Eigen::Vector3d& y) {
      const double th = geodesic(y, c);
      return std::exp(-th * th / (2.0 * bump.width * bump.width));
    };
    double value = profile(x);
    if (symmetric) value = std::max(value, profile(-x));
    u[v] = bump.amplitude * value;
  }
  return u;
}

Eigen::VectorXd random_fourier_factor(const SurfaceMesh& mesh, const RandomFourierFactor& spec) {
  if (spec.modes < 1) throw Error(ErrorCode::kPreconditionViolation, "need at least one mode");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = mesh.vertex_count();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  double weight_sum = 0.0;

  if (mesh.topology() == Topology::kSphere || mesh.topology() == Topology::kProjectivePlane) {
    if (mesh.positions().rows() != 3) {
      throw Error(ErrorCode::kPreconditionViolation, "sphere factor needs positions in R^3");
    }
    const bool even = mesh.topology() == Topology::kProjectivePlane;
    for (int j = 0; j < spec.modes; ++j) {
      Eigen::Vector3d d(gauss(rng), gauss(rng), gauss(rng));
      d.normalize();
      const double k = 1.0 + j % 3;
      const double a = unit(rng);
      const double th = even ? 0.0 : phase(rng);
      weight_sum += std::abs(a);
      for (int v = 0; v < n; ++v) {
        u[v] += a * std::cos(k * d.dot(mesh.positions().col(v).normalized()) + th);
      }
    }
  } else if (mesh.topology() == Topology::kTorus && mesh.lattice()) {
    Eigen::Matrix2d basis;
    basis.col(0) = mesh.lattice()->b1;
    basis.col(1) = mesh.lattice()->b2;
    const Eigen::MatrixXd st = basis.inverse() * mesh.positions();
    std::uniform_int_distribution<int> freq(-2, 2);
    for (int j = 0; j < spec.modes; ++j) {
      int fa = 0, fb = 0;
      while (fa == 0 && fb == 0) {
        fa = freq(rng);
        fb = freq(rng);
      }
      const double a = unit(rng);
      const double th = phase(rng);
      weight_sum += std::abs(a);
      for (int v = 0; v < n; ++v) {
        u[v] += a * std::cos(2.0 * std::numbers::pi * (fa * st(0, v) + fb * st(1, v)) + th);
      }
    }
  } else {
    throw Error(ErrorCode::kPreconditionViolation,
                "random-fourier factor supports sphere, rp2 and lattice tori");
  }
  if (weight_sum > 0.0) u *= spec.amplitude / weight_sum;
  return u;
}

}  // namespace confspec
