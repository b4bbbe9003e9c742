#include "confspec/bound_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "confspec/discrete_measure.hpp"
#include "confspec/error.hpp"
#include "confspec/optimize.hpp"
#include "confspec/parallel.hpp"

namespace confspec {

namespace {

constexpr double kMaxT = 1.0 - 1e-6;

Eigen::MatrixXd map_columns(const Eigen::MatrixXd& x, const std::function<Vec(const Vec&)>& f) {
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index v = 0; v < x.cols(); ++v) out.col(v) = f(Vec(x.col(v)));
  return out;
}

// z = (1 - t) p  <->  (p, t); z = 0 has no direction and is sent to t = kMaxT.
SphericalCap cap_from_z(const Eigen::VectorXd& z, int dim) {
  Vec zz = z;
  double r = zz.norm();
  if (r > 1.0) {
    zz /= r;
    r = 1.0;
  }
  const double t = std::min(1.0 - r, kMaxT);
  if (r < 1e-300) return SphericalCap(UnitVector::basis(dim, 0), t);
  return SphericalCap(UnitVector(zz), t);
}

double psi_norm_or_inf(const SurfaceMesh& mesh, const ImmersionSamples& phi, const Eigen::VectorXd& f1,
                       const SphericalCap& cap) {
  try {
    return psi(mesh, phi, f1, cap).norm();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotAdmissible) return std::numeric_limits<double>::infinity();
    throw;
  }
}

std::vector<Vec> cap_directions(int dim, int random_count, std::uint64_t seed) {
  std::vector<Vec> dirs;
  if (dim == 3) {
    const SurfaceMesh ico = icosphere(2);
    for (int v = 0; v < ico.vertex_count(); ++v) dirs.emplace_back(Vec(ico.positions().col(v)));
    return dirs;
  }
  for (int a = 0; a < dim; ++a) {
    for (double s : {1.0, -1.0}) {
      Vec e = Vec::Zero(dim);
      e[a] = s;
      dirs.push_back(e);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < random_count; ++k) {
    Vec d(dim);
    for (int i = 0; i < dim; ++i) d[i] = normal(rng);
    dirs.push_back(d / d.norm());
  }
  return dirs;
}

struct Candidate {
  Eigen::VectorXd z;
  double value;
};

// Damped Newton on psi(z) = 0 with a central-difference Jacobian.
Candidate newton_polish(const std::function<Vec(const Eigen::VectorXd&)>& residual, Candidate c,
                        int iterations, double tol) {
  const Eigen::Index d = c.z.size();
  Vec r = residual(c.z);
  c.value = r.norm();
  const double h = 1e-7;
  for (int it = 0; it < iterations && c.value > tol; ++it) {
    Eigen::MatrixXd J(r.size(), d);
    for (Eigen::Index j = 0; j < d; ++j) {
      Eigen::VectorXd zp = c.z;
      Eigen::VectorXd zm = c.z;
      zp[j] += h;
      zm[j] -= h;
      J.col(j) = (residual(zp) - residual(zm)) / (2.0 * h);
    }
    const Eigen::VectorXd step = -Eigen::FullPivLU<Eigen::MatrixXd>(J).solve(Eigen::VectorXd(r));
    if (!step.allFinite()) break;
    bool improved = false;
    double alpha = 1.0;
    for (int k = 0; k < 30; ++k) {
      Eigen::VectorXd trial = c.z + alpha * step;
      if (trial.norm() > 1.0) trial /= trial.norm();
      const Vec rt = residual(trial);
      if (rt.norm() < c.value) {
        c.z = trial;
        r = rt;
        c.value = rt.norm();
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;
  }
  return c;
}

double triangle_energy(const EdgeLengths& l, const Vec& a, const Vec& b, const Vec& c) {
  const double area = triangle_area(l);
  const Vec* corner[3] = {&a, &b, &c};
  double e = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double x = l[(k + 1) % 3];
    const double y = l[(k + 2) % 3];
    const double cot = (x * x + y * y - l[k] * l[k]) / (4.0 * area);
    e += 0.5 * cot * (*corner[(k + 1) % 3] - *corner[(k + 2) % 3]).squaredNorm();
  }
  return e;
}

struct SplitAccumulator {
  const SphericalCap& cap;
  const Vec& xi;
  int depth;
  double folded = 0.0;
  double inside = 0.0;

  // a, b, c are phi images at the corners of a (sub-)triangle with lengths l.
  void add(const EdgeLengths& l, const Vec& a, const Vec& b, const Vec& c, int level) {
    const Vec& p = cap.center().coords();
    const double t = cap.t();
    const double da = cap_boundary_distance(p, t, a);
    const double db = cap_boundary_distance(p, t, b);
    const double dc = cap_boundary_distance(p, t, c);
    const bool all_in = da > kCapBoundaryBand && db > kCapBoundaryBand && dc > kCapBoundaryBand;
    const bool all_out = da <= kCapBoundaryBand && db <= kCapBoundaryBand && dc <= kCapBoundaryBand;
    if (all_in || all_out || level >= depth) {
      const Vec fa = moebius_apply(xi, fold(p, t, a));
      const Vec fb = moebius_apply(xi, fold(p, t, b));
      const Vec fc = moebius_apply(xi, fold(p, t, c));
      folded += triangle_energy(l, fa, fb, fc);
      if (all_out) return;
      const double e = triangle_energy(l, moebius_apply(xi, a), moebius_apply(xi, b), moebius_apply(xi, c));
      if (all_in) {
        inside += e;
      } else {
        // Unresolved straddling leaf: weight by the fraction of corners inside.
        inside += e * ((da > kCapBoundaryBand) + (db > kCapBoundaryBand) + (dc > kCapBoundaryBand)) / 3.0;
      }
      return;
    }
    const EdgeLengths half = {0.5 * l[0], 0.5 * l[1], 0.5 * l[2]};
    const Vec ab = (a + b).normalized();
    const Vec bc = (b + c).normalized();
    const Vec ca = (c + a).normalized();
    add(half, a, ab, ca, level + 1);
    add(half, ab, b, bc, level + 1);
    add(half, ca, bc, c, level + 1);
    // The middle triangle (ab, bc, ca) has sides parallel to (c, a, b) opposite.
    add(half, bc, ca, ab, level + 1);
  }
};

}  // namespace

ImmersionSamples renormalized_immersion(const SurfaceMesh& mesh, const ImmersionSamples& phi) {
  const RenormalizationResult r = renormalize(DiscreteMeasure::from_mesh(mesh, phi));
  const Vec xi = r.xi.coords();
  return ImmersionSamples(map_columns(phi.images(), [&](const Vec& x) { return moebius_apply(xi, x); }));
}

Vec moment_against_f1(const SurfaceMesh& mesh, const ImmersionSamples& phi, const Eigen::VectorXd& f1) {
  if (f1.size() != mesh.vertex_count() || phi.vertex_count() != mesh.vertex_count()) {
    throw Error(ErrorCode::kPreconditionViolation, "f1 and phi must have one value per vertex");
  }
  const Eigen::VectorXd m = mesh.lumped_vertex_mass();
  return Vec(phi.images() * m.cwiseProduct(f1));
}

FirstEigenfunction choose_f1(const SpectralSummary& summary, const SurfaceMesh& mesh,
                             const ImmersionSamples& phi) {
  int first = 1;
  int size = 1;
  for (const auto& c : summary.clusters) {
    if (c.first <= 1 && 1 < c.first + c.size) {
      first = std::max(c.first, 1);
      size = c.first + c.size - first;
    }
  }
  FirstEigenfunction best;
  double best_norm = -1.0;
  for (int j = first; j < first + size; ++j) {
    const Eigen::VectorXd f = summary.eigenvectors.col(j);
    const Vec m = moment_against_f1(mesh, phi, f);
    if (m.norm() > best_norm * (1.0 + 1e-12)) {
      best_norm = m.norm();
      best.index = j;
      best.values = f;
      best.moment = m;
    }
  }
  return best;
}

FoldedTrial folded_trial(const SurfaceMesh& mesh, const ImmersionSamples& phi, const SphericalCap& cap) {
  const Vec& p = cap.center().coords();
  const double t = cap.t();
  const Eigen::MatrixXd folded = map_columns(phi.images(), [&](const Vec& x) { return fold(p, t, x); });
  const DiscreteMeasure nu(folded, mesh.lumped_vertex_mass());
  FoldedTrial trial(renormalize(nu));
  const Vec xi = trial.renormalization.xi.coords();
  trial.values = map_columns(folded, [&](const Vec& x) { return moebius_apply(xi, x); });
  trial.mean_residual = (trial.values * nu.weights()).norm();
  return trial;
}

Vec psi(const SurfaceMesh& mesh, const ImmersionSamples& phi, const Eigen::VectorXd& f1,
        const SphericalCap& cap) {
  const FoldedTrial trial = folded_trial(mesh, phi, cap);
  return Vec(trial.values * mesh.lumped_vertex_mass().cwiseProduct(f1));
}

double psi_tolerance(const SurfaceMesh& mesh, const Eigen::VectorXd& f1) {
  return 1e-6 * mesh.total_area() * f1.lpNorm<Eigen::Infinity>();
}

CapSearchResult cap_search_best_effort(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                       const Eigen::VectorXd& f1, const CapSearchOptions& options) {
  const int dim = phi.ambient_dim();
  const double tol = psi_tolerance(mesh, f1);
  const Vec moment = moment_against_f1(mesh, phi, f1);
  if (moment.norm() <= 1e-12 * mesh.total_area() * f1.lpNorm<Eigen::Infinity>()) {
    throw Error(ErrorCode::kPreconditionViolation,
                "moment of phi against f1 vanishes; use the unfolded trial functions");
  }

  std::vector<CapLandscapeSample> grid;
  for (const Vec& p : cap_directions(dim, options.random_directions, options.seed)) {
    for (int j = 0; j < options.t_steps; ++j) {
      grid.push_back({p, static_cast<double>(j) / options.t_steps, 0.0});
    }
  }
  parallel_for(grid.size(), [&](std::size_t i) {
    grid[i].psi_norm = psi_norm_or_inf(mesh, phi, f1, SphericalCap(UnitVector(grid[i].p), grid[i].t));
  });
  int evaluations = static_cast<int>(grid.size());

  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a].psi_norm < grid[b].psi_norm; });

  auto residual = [&](const Eigen::VectorXd& z) -> Vec {
    try {
      return psi(mesh, phi, f1, cap_from_z(z, dim));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotAdmissible) throw;
      return Vec::Constant(dim, std::numeric_limits<double>::infinity());
    }
  };

  const int starts = std::min<int>(options.starts, static_cast<int>(grid.size()));
  std::vector<Candidate> found(static_cast<std::size_t>(starts));
  std::vector<int> used(static_cast<std::size_t>(starts), 0);
  parallel_for(static_cast<std::size_t>(starts), [&](std::size_t s) {
    const CapLandscapeSample& g = grid[order[s]];
    const Eigen::VectorXd z0 = (1.0 - g.t) * Eigen::VectorXd(g.p);
    int count = 0;
    auto counted = [&](const Eigen::VectorXd& z) {
      ++count;
      return residual(z);
    };
    NelderMeadOptions nm;
    nm.initial_step = 0.5 / options.t_steps;
    nm.size_tolerance = 1e-10;
    nm.max_evaluations = options.budget;
    const NelderMeadResult res = nelder_mead(
        [&](const Eigen::VectorXd& z) {
          Eigen::VectorXd zz = z;
          if (zz.norm() > 1.0) zz /= zz.norm();
          return counted(zz).squaredNorm();
        },
        z0, nm);
    Eigen::VectorXd z = res.x;
    if (z.norm() > 1.0) z /= z.norm();
    found[s] = newton_polish(counted, {z, std::sqrt(res.value)}, options.newton_iterations, tol);
    used[s] = count;
  });

  std::size_t best = 0;
  for (std::size_t s = 0; s < found.size(); ++s) {
    evaluations += used[s];
    if (found[s].value < found[best].value) best = s;
  }
  const SphericalCap cap = cap_from_z(found[best].z, dim);
  const FoldedTrial trial = folded_trial(mesh, phi, cap);
  const Vec moment_residual(trial.values * mesh.lumped_vertex_mass().cwiseProduct(f1));

  CapSearchResult result(cap, trial.renormalization.xi);
  result.psi_norm = moment_residual.norm();
  result.tolerance = tol;
  result.success = result.psi_norm <= tol;
  result.mean_residual = trial.mean_residual;
  result.moment_residual = moment_residual;
  result.evaluations = evaluations;
  result.landscape = std::move(grid);
  return result;
}

CapSearchResult cap_search(const SurfaceMesh& mesh, const ImmersionSamples& phi, const Eigen::VectorXd& f1,
                           const CapSearchOptions& options) {
  CapSearchResult r = cap_search_best_effort(mesh, phi, f1, options);
  if (!r.success) {
    std::ostringstream msg;
    msg << "no admissible cap within budget: best |psi| = " << r.psi_norm << " > " << r.tolerance
        << "; landscape (p, t, |psi|):";
    for (const auto& s : r.landscape) {
      msg << " [";
      for (Eigen::Index i = 0; i < s.p.size(); ++i) msg << (i ? "," : "") << s.p[i];
      msg << "; " << s.t << "; " << s.psi_norm << "]";
    }
    throw Error(ErrorCode::kSearchFailure, msg.str());
  }
  return r;
}

DegreeEstimate hemisphere_degree(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                 const Eigen::VectorXd& f1, int subdivisions) {
  if (phi.ambient_dim() != 3) {
    throw Error(ErrorCode::kPreconditionViolation, "degree check needs an immersion into S^2");
  }
  const SurfaceMesh directions = icosphere(subdivisions);
  Eigen::MatrixXd values(3, directions.vertex_count());
  parallel_for(static_cast<std::size_t>(directions.vertex_count()), [&](std::size_t v) {
    const auto i = static_cast<Eigen::Index>(v);
    const Vec h = psi(mesh, phi, f1, SphericalCap(UnitVector(Vec(directions.positions().col(i))), 0.0));
    values.col(i) = h / h.norm();
  });
  return degree_estimate_raw(values, directions);
}

FoldSplit fold_split(const SurfaceMesh& mesh, const ImmersionSamples& phi, const SphericalCap& cap,
                     const BallPoint& xi, int depth) {
  SplitAccumulator acc{cap, xi.coords(), depth};
  const auto& y = phi.images();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    acc.add(mesh.reference_lengths()[t], Vec(y.col(tri[0])), Vec(y.col(tri[1])), Vec(y.col(tri[2])), 0);
  }
  FoldSplit s;
  s.folded_energy = acc.folded;
  s.twice_inside_energy = 2.0 * acc.inside;
  s.relative_gap = std::abs(s.folded_energy - s.twice_inside_energy) / s.folded_energy;
  return s;
}

BoundReport lambda2_upper_bound(const SurfaceMesh& mesh, const ImmersionSamples& phi,
                                const FemMatrices& fem, const SpectralSummary& summary,
                                const FirstEigenfunction& f1, const std::optional<SphericalCap>& cap,
                                double vc_estimate) {
  if (summary.eigenvalues.size() < 3) {
    throw Error(ErrorCode::kPreconditionViolation, "spectrum must contain lambda_2");
  }
  Eigen::MatrixXd trial;
  BoundReport report;
  report.volume = fem.volume;
  report.folded = cap.has_value();
  if (cap) {
    FoldedTrial folded = folded_trial(mesh, phi, *cap);
    trial = std::move(folded.values);
  } else {
    trial = phi.images();
  }

  const Eigen::VectorXd mass_ones = fem.mass * Eigen::VectorXd::Ones(mesh.vertex_count());
  const Eigen::VectorXd mass_f1 = fem.mass * f1.values;
  const double f1_norm2 = f1.values.dot(mass_f1);

  double energy = 0.0;
  double proj_energy = 0.0;
  double norm2 = 0.0;
  double proj_norm2 = 0.0;
  Vec mean(trial.rows());
  Vec moment(trial.rows());
  for (Eigen::Index i = 0; i < trial.rows(); ++i) {
    Eigen::VectorXd f = trial.row(i).transpose();
    energy += f.dot(fem.stiffness * f);
    norm2 += f.dot(fem.mass * f);
    mean[i] = f.dot(mass_ones);
    moment[i] = f.dot(mass_f1);
    f.array() -= mean[i] / fem.volume;
    f -= (f.dot(mass_f1) / f1_norm2) * f1.values;
    proj_energy += f.dot(fem.stiffness * f);
    proj_norm2 += f.dot(fem.mass * f);
  }
  if (!(proj_norm2 > 0.0)) throw Error(ErrorCode::kZeroFunction, "projected trial functions vanish");

  report.lambda2_fem = summary.eigenvalues[2];
  report.lambda2_bar_fem = report.lambda2_fem * fem.volume;
  report.rayleigh_bound = proj_energy / proj_norm2;
  report.trial_energy = energy;
  report.folded_area = 0.5 * energy;
  report.vc_estimate = vc_estimate;
  report.theorem_rhs = 4.0 * vc_estimate;
  report.projection_magnitude = 1.0 - proj_norm2 / norm2;
  report.mean_residual = mean.norm();
  report.moment_residual = moment.norm();
  report.chain_ok = report.lambda2_fem <= report.rayleigh_bound * (1.0 + kMinMaxSlack) &&
                    report.rayleigh_bound * fem.volume < report.theorem_rhs * (1.0 + kVolumeSlack);
  return report;
}

}  // namespace confspec
