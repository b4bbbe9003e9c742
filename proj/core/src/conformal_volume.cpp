#include "confspec/conformal_volume.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "confspec/error.hpp"
#include "confspec/optimize.hpp"
#include "confspec/parallel.hpp"

namespace confspec {

namespace {

double chord_area(const Vec& a, const Vec& b, const Vec& c) {
  return triangle_area({(b - c).norm(), (c - a).norm(), (a - b).norm()});
}

struct Corner {
  Vec y;
  double rho2;
  // |y + xi|, the length scale on which rho varies near y.
  double scale;
};

class Integrator {
 public:
  Integrator(const Vec& xi, const QuadratureOptions& options)
      : xi_(xi), options_(options), refine_(xi.squaredNorm() > 0.0) {}

  Corner corner(const Vec& y) const {
    const double r = moebius_conformal_factor(xi_, y);
    return {y, r * r, (y + xi_).norm()};
  }

  double integrate(const Corner& a, const Corner& b, const Corner& c, int depth) const {
    const double hi = std::max({a.rho2, b.rho2, c.rho2});
    const double lo = std::min({a.rho2, b.rho2, c.rho2});
    const double edge = std::max({(a.y - b.y).norm(), (b.y - c.y).norm(), (c.y - a.y).norm()});
    const double scale = std::min({a.scale, b.scale, c.scale});
    const bool resolved = hi <= options_.rho_ratio * lo && edge <= options_.scale_ratio * scale;
    if (!refine_ || depth >= options_.max_depth || resolved) {
      return chord_area(a.y, b.y, c.y) * (a.rho2 + b.rho2 + c.rho2) / 3.0;
    }
    const Corner ab = midpoint(a, b);
    const Corner bc = midpoint(b, c);
    const Corner ca = midpoint(c, a);
    return integrate(a, ab, ca, depth + 1) + integrate(ab, b, bc, depth + 1) +
           integrate(ca, bc, c, depth + 1) + integrate(ab, bc, ca, depth + 1);
  }

 private:
  Corner midpoint(const Corner& p, const Corner& q) const {
    Vec m = p.y + q.y;
    const double n = m.norm();
    // Antipodal corners have no midpoint; keep the chord midpoint.
    if (n > 1e-12) m /= n;
    return corner(m);
  }

  Vec xi_;
  QuadratureOptions options_;
  bool refine_;
};

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Larger value wins; exact ties go to the lexicographically smaller xi.
bool better(const LandscapeSample& a, const LandscapeSample& b) {
  if (a.value != b.value) return a.value > b.value;
  return lex_less(a.xi, b.xi);
}

Vec ball_clamp(const Eigen::VectorXd& y, double radius) {
  Vec v = y;
  const double n = v.norm();
  if (n > radius) v *= radius / n;
  return v;
}

}  // namespace

double volume_under_moebius(const SurfaceMesh& mesh, const ImmersionSamples& phi, const BallPoint& xi,
                            const QuadratureOptions& options) {
  if (phi.vertex_count() != mesh.vertex_count()) {
    throw Error(ErrorCode::kPreconditionViolation, "immersion samples do not match the mesh");
  }
  if (xi.dim() != phi.ambient_dim()) {
    throw Error(ErrorCode::kPreconditionViolation, "xi and immersion live in different dimensions");
  }
  const Integrator integrator(xi.coords(), options);
  const auto& images = phi.images();
  std::vector<Corner> corners;
  corners.reserve(static_cast<std::size_t>(mesh.vertex_count()));
  for (int v = 0; v < mesh.vertex_count(); ++v) corners.push_back(integrator.corner(Vec(images.col(v))));
  double total = 0.0;
  for (const Triangle& t : mesh.triangles()) {
    total += integrator.integrate(corners[t[0]], corners[t[1]], corners[t[2]], 0);
  }
  return total;
}

double pullback_area(const SurfaceMesh& mesh, const ImmersionSamples& phi) {
  return volume_under_moebius(mesh, phi, BallPoint::origin(phi.ambient_dim()));
}

double ConformalVolumeEstimate::grid_min() const {
  double v = value_at_origin;
  for (const auto& s : samples) v = std::min(v, s.value);
  return v;
}

double ConformalVolumeEstimate::grid_max() const {
  double v = value_at_origin;
  for (const auto& s : samples) v = std::max(v, s.value);
  return v;
}

std::vector<Vec> search_directions(int ambient_dim, int random_count, std::uint64_t seed) {
  std::vector<Vec> dirs;
  if (ambient_dim == 3) {
    const SurfaceMesh ico = icosphere(1);
    for (int v = 0; v < ico.vertex_count(); ++v) dirs.emplace_back(Vec(ico.positions().col(v)));
    return dirs;
  }
  for (int a = 0; a < ambient_dim; ++a) {
    for (double sign : {1.0, -1.0}) {
      Vec e = Vec::Zero(ambient_dim);
      e[a] = sign;
      dirs.push_back(e);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < random_count; ++k) {
    Vec d(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) d[i] = normal(rng);
    dirs.push_back(d / d.norm());
  }
  return dirs;
}

ConformalVolumeEstimate estimate_vc(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                    const ConformalVolumeOptions& options) {
  const int dim = phi.ambient_dim();
  const double radius = std::min(options.max_radius, 1.0 - kBoundaryEpsilon);
  auto evaluate = [&](const Vec& xi) {
    return volume_under_moebius(mesh, phi, BallPoint::clamped(xi, radius), options.quadrature);
  };

  std::vector<Vec> points;
  points.push_back(Vec::Zero(dim));
  for (const Vec& d : search_directions(dim, options.random_directions, options.seed)) {
    for (double r : options.radii) points.push_back(ball_clamp(r * d, radius));
  }
  std::vector<LandscapeSample> samples(points.size());
  parallel_for(points.size(), [&](std::size_t i) { samples[i] = {points[i], evaluate(points[i])}; });

  ConformalVolumeEstimate est;
  est.value_at_origin = samples[0].value;
  est.evaluations = static_cast<int>(samples.size());

  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return better(samples[a], samples[b]); });
  LandscapeSample best = samples[order[0]];

  // Independent restarts from the best distinct grid points.
  const int restarts = std::min<int>(options.restarts, static_cast<int>(order.size()));
  std::vector<LandscapeSample> refined(static_cast<std::size_t>(restarts));
  std::vector<int> used(static_cast<std::size_t>(restarts), 0);
  std::vector<char> exhausted(static_cast<std::size_t>(restarts), 0);
  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    NelderMeadOptions nm;
    nm.initial_step = 0.05;
    nm.size_tolerance = 1e-6;
    nm.max_evaluations = options.budget;
    const Eigen::VectorXd start = samples[order[r]].xi;
    const NelderMeadResult res = nelder_mead(
        [&](const Eigen::VectorXd& y) { return -evaluate(ball_clamp(y, radius)); }, start, nm);
    refined[r] = {ball_clamp(res.x, radius), -res.value};
    used[r] = res.evaluations;
    exhausted[r] = res.converged ? 0 : 1;
  });
  for (int r = 0; r < restarts; ++r) {
    est.evaluations += used[static_cast<std::size_t>(r)];
    est.budget_exhausted = est.budget_exhausted || exhausted[static_cast<std::size_t>(r)] != 0;
    if (better(refined[static_cast<std::size_t>(r)], best)) best = refined[static_cast<std::size_t>(r)];
  }

  est.value = best.value;
  est.argmax_xi = BallPoint::clamped(best.xi, radius);
  est.boundary_supremum = best.xi.norm() >= radius * (1.0 - 1e-9);
  est.samples = std::move(samples);
  return est;
}

}  // namespace confspec
