#include "confspec/sphere_geometry.hpp"

#include <cmath>
#include <utility>

#include "confspec/error.hpp"

namespace confspec {

UnitVector::UnitVector(const Vec& coords) : coords_(coords) {
  const double n = coords_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kPreconditionViolation, "UnitVector from zero or non-finite vector");
  }
  if (std::abs(n - 1.0) > kUnitTolerance) coords_ /= n;
}

UnitVector UnitVector::basis(int dim, int axis) {
  Vec e = Vec::Zero(dim);
  e[axis] = 1.0;
  return UnitVector(e);
}

BallPoint::BallPoint(const Vec& coords) : coords_(coords) {
  const double n = coords_.norm();
  if (!std::isfinite(n) || n > 1.0 - kBoundaryEpsilon) {
    throw Error(ErrorCode::kPreconditionViolation, "BallPoint outside the open ball");
  }
}

BallPoint BallPoint::origin(int dim) { return BallPoint(Vec::Zero(dim), Unchecked{}); }

BallPoint BallPoint::clamped(const Vec& coords, double max_norm) {
  if (max_norm > 1.0 - kBoundaryEpsilon) max_norm = 1.0 - kBoundaryEpsilon;
  const double n = coords.norm();
  if (!std::isfinite(n)) throw Error(ErrorCode::kPreconditionViolation, "non-finite ball point");
  if (n <= max_norm) return BallPoint(coords, Unchecked{});
  return BallPoint(coords * (max_norm / n), Unchecked{});
}

SphericalCap::SphericalCap(UnitVector center, double t) : center_(std::move(center)), t_(t) {
  if (!(t > -1.0 && t < 1.0)) {
    throw Error(ErrorCode::kPreconditionViolation, "cap parameter t must lie in (-1, 1)");
  }
}

Vec moebius_apply(const Vec& xi, const Vec& x) {
  const Vec s = x + xi;
  const double scale = (1.0 - xi.squaredNorm()) / s.squaredNorm();
  return xi + scale * s;
}

UnitVector moebius_apply(const BallPoint& xi, const UnitVector& x) {
  return UnitVector(moebius_apply(xi.coords(), x.coords()));
}

double moebius_conformal_factor(const Vec& xi, const Vec& x) {
  return (1.0 - xi.squaredNorm()) / (x + xi).squaredNorm();
}

double moebius_conformal_factor(const BallPoint& xi, const UnitVector& x) {
  return moebius_conformal_factor(xi.coords(), x.coords());
}

Vec reflect(const Vec& p, const Vec& x) { return x - 2.0 * x.dot(p) * p; }

UnitVector reflect(const UnitVector& p, const UnitVector& x) {
  return UnitVector(reflect(p.coords(), x.coords()));
}

double cap_boundary_distance(const Vec& p, double t, const Vec& x) {
  if (t == 0.0) return x.dot(p);
  return moebius_apply(Vec(t * p), x).dot(p);
}

double cap_boundary_distance(const SphericalCap& cap, const UnitVector& x) {
  return cap_boundary_distance(cap.center().coords(), cap.t(), x.coords());
}

bool cap_contains(const Vec& p, double t, const Vec& x) {
  return cap_boundary_distance(p, t, x) > kCapBoundaryBand;
}

bool cap_contains(const SphericalCap& cap, const UnitVector& x) {
  return cap_contains(cap.center().coords(), cap.t(), x.coords());
}

Vec cap_reflect(const Vec& p, double t, const Vec& x) {
  if (t == 0.0) return reflect(p, x);
  const Vec shift = t * p;
  return moebius_apply(Vec(-shift), reflect(p, moebius_apply(shift, x)));
}

UnitVector cap_reflect(const SphericalCap& cap, const UnitVector& x) {
  return UnitVector(cap_reflect(cap.center().coords(), cap.t(), x.coords()));
}

Vec fold(const Vec& p, double t, const Vec& x) {
  if (t == 0.0) {
    const double d = x.dot(p);
    return d > kCapBoundaryBand ? x : Vec(x - 2.0 * d * p);
  }
  const Vec shift = t * p;
  const Vec pulled = moebius_apply(shift, x);
  const double d = pulled.dot(p);
  if (d > kCapBoundaryBand) return x;
  return moebius_apply(Vec(-shift), Vec(pulled - 2.0 * d * p));
}

UnitVector fold(const SphericalCap& cap, const UnitVector& x) {
  return UnitVector(fold(cap.center().coords(), cap.t(), x.coords()));
}

FoldIdentityResiduals fold_identity_check(const UnitVector& p, const UnitVector& x,
                                          const BallPoint& xi) {
  const Vec& pc = p.coords();
  const Vec& xc = x.coords();
  FoldIdentityResiduals r;
  const Vec lhs_fold = fold(pc, 0.0, xc);
  const Vec rhs_fold = reflect(pc, fold(Vec(-pc), 0.0, xc));
  r.fold_reflection = (lhs_fold - rhs_fold).lpNorm<Eigen::Infinity>();

  const Vec lhs_moebius = moebius_apply(xi.coords(), reflect(pc, xc));
  const Vec rhs_moebius = reflect(pc, moebius_apply(reflect(pc, xi.coords()), xc));
  r.moebius_reflection = (lhs_moebius - rhs_moebius).lpNorm<Eigen::Infinity>();
  return r;
}

}  // namespace confspec
