#pragma once

// Pointwise geometry of the unit sphere S^n in R^{n+1}: Moebius automorphisms
// phi_xi, hyperplane reflections, spherical caps C_(p,t), cap reflections and
// folding maps.
//
// Every operation comes in two flavours. The typed overloads (UnitVector,
// BallPoint, SphericalCap) validate their arguments and are what callers
// should normally use. The raw overloads on Vec skip validation and are meant
// for inner loops over mesh vertices that already hold unit vectors.

#include <Eigen/Core>

#include "confspec/vec.hpp"

namespace confspec {

// Tolerance for renormalizing unit vectors.
inline constexpr double kUnitTolerance = 1e-12;
// Iterates and ball points are kept at norm <= 1 - kBoundaryEpsilon.
inline constexpr double kBoundaryEpsilon = 1e-9;
// Points whose pulled-back inner product with the cap centre is within this
// band are on the cap boundary and count as outside.
inline constexpr double kCapBoundaryBand = 1e-12;

class UnitVector {
 public:
  // Renormalizes. Throws Error(kPreconditionViolation) for zero or non-finite input.
  explicit UnitVector(const Vec& coords);

  static UnitVector basis(int dim, int axis);

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }

 private:
  Vec coords_;
};

class BallPoint {
 public:
  // Throws Error(kPreconditionViolation) unless ||coords|| <= 1 - kBoundaryEpsilon.
  explicit BallPoint(const Vec& coords);

  static BallPoint origin(int dim);
  // Radially projects onto the ball of radius max_norm when outside it.
  static BallPoint clamped(const Vec& coords, double max_norm = 1.0 - kBoundaryEpsilon);

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double norm() const { return coords_.norm(); }

 private:
  struct Unchecked {};
  BallPoint(const Vec& coords, Unchecked) : coords_(coords) {}
  Vec coords_;
};

class SphericalCap {
 public:
  // Throws Error(kPreconditionViolation) unless t lies in (-1, 1).
  SphericalCap(UnitVector center, double t);

  const UnitVector& center() const { return center_; }
  double t() const { return t_; }

 private:
  UnitVector center_;
  double t_;
};

// phi_xi(x) = xi + (1 - |xi|^2) / |x + xi|^2 * (x + xi)
Vec moebius_apply(const Vec& xi, const Vec& x);
UnitVector moebius_apply(const BallPoint& xi, const UnitVector& x);

// Pointwise scale of phi_xi: phi_xi^* g = rho^2 g with rho = (1 - |xi|^2) / |x + xi|^2.
double moebius_conformal_factor(const Vec& xi, const Vec& x);
double moebius_conformal_factor(const BallPoint& xi, const UnitVector& x);

// R_p(x) = x - 2 <x, p> p
Vec reflect(const Vec& p, const Vec& x);
UnitVector reflect(const UnitVector& p, const UnitVector& x);

// Signed membership coordinate <phi_{tp}(x), p>: positive inside C_(p,t), zero on
// its boundary sphere.
double cap_boundary_distance(const Vec& p, double t, const Vec& x);
double cap_boundary_distance(const SphericalCap& cap, const UnitVector& x);

bool cap_contains(const Vec& p, double t, const Vec& x);
bool cap_contains(const SphericalCap& cap, const UnitVector& x);

// tau_C = phi_{-tp} o R_p o phi_{tp}
Vec cap_reflect(const Vec& p, double t, const Vec& x);
UnitVector cap_reflect(const SphericalCap& cap, const UnitVector& x);

// F_C(x) = x on C, tau_C(x) elsewhere.
Vec fold(const Vec& p, double t, const Vec& x);
UnitVector fold(const SphericalCap& cap, const UnitVector& x);

struct FoldIdentityResiduals {
  // max |F_(p,0)(x) - R_p(F_(-p,0)(x))|
  double fold_reflection = 0.0;
  // max |phi_xi(R_p x) - R_p(phi_{R_p xi}(x))|
  double moebius_reflection = 0.0;

  double max() const { return fold_reflection > moebius_reflection ? fold_reflection : moebius_reflection; }
};

FoldIdentityResiduals fold_identity_check(const UnitVector& p, const UnitVector& x,
                                          const BallPoint& xi);

}  // namespace confspec
