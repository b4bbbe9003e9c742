#include "confspec/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "confspec/error.hpp"

namespace confspec {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey undirected(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::vector<EdgeKey> sorted_edges(const std::vector<Triangle>& triangles) {
  std::vector<EdgeKey> edges;
  edges.reserve(triangles.size() * 3);
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) edges.push_back(undirected(t[k], t[(k + 1) % 3]));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

std::string to_string(Topology topology) {
  switch (topology) {
    case Topology::kSphere: return "sphere";
    case Topology::kTorus: return "torus";
    case Topology::kKlein: return "klein";
    case Topology::kProjectivePlane: return "rp2";
  }
  return "unknown";
}

Topology topology_from_string(const std::string& name) {
  if (name == "sphere") return Topology::kSphere;
  if (name == "torus") return Topology::kTorus;
  if (name == "klein") return Topology::kKlein;
  if (name == "rp2") return Topology::kProjectivePlane;
  throw Error(ErrorCode::kPreconditionViolation, "unknown topology tag '" + name + "'");
}

bool is_orientable(Topology topology) {
  return topology == Topology::kSphere || topology == Topology::kTorus;
}

Lattice Lattice::square() { return {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)}; }

Lattice Lattice::equilateral() {
  return {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.5, std::sqrt(3.0) / 2.0)};
}

double Lattice::covolume() const { return std::abs(b1.x() * b2.y() - b1.y() * b2.x()); }

bool satisfies_triangle_inequality(const EdgeLengths& l) {
  for (double x : l) {
    if (!(x > 0.0) || !std::isfinite(x)) return false;
  }
  const double slack = 1e-12 * (l[0] + l[1] + l[2]);
  return l[0] < l[1] + l[2] + slack && l[1] < l[0] + l[2] + slack && l[2] < l[0] + l[1] + slack;
}

double triangle_area(const EdgeLengths& l) {
  double a = l[0], b = l[1], c = l[2];
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  const double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return p > 0.0 ? 0.25 * std::sqrt(p) : 0.0;
}

SurfaceMesh::SurfaceMesh(Eigen::MatrixXd positions, std::vector<Triangle> triangles,
                         std::vector<EdgeLengths> reference_lengths, Topology topology,
                         std::string provenance)
    : positions_(std::move(positions)),
      triangles_(std::move(triangles)),
      reference_lengths_(std::move(reference_lengths)),
      log_factor_(Eigen::VectorXd::Zero(positions_.cols())),
      topology_(topology),
      provenance_(std::move(provenance)) {
  validate();
}

void SurfaceMesh::validate() const {
  if (reference_lengths_.size() != triangles_.size()) {
    throw Error(ErrorCode::kPreconditionViolation, "one edge-length triple per triangle required");
  }
  const int n = vertex_count();
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= n) throw Error(ErrorCode::kNonManifold, "triangle references missing vertex");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw Error(ErrorCode::kNonManifold, "degenerate triangle with repeated vertex");
    }
    if (!satisfies_triangle_inequality(reference_lengths_[t])) {
      throw Error(ErrorCode::kTriangleInequalityViolated,
                  "reference lengths of triangle " + std::to_string(t));
    }
    if (!satisfies_triangle_inequality(metric_lengths(static_cast<int>(t)))) {
      throw Error(ErrorCode::kTriangleInequalityViolated,
                  "scaled lengths of triangle " + std::to_string(t));
    }
  }
  const auto edges = sorted_edges(triangles_);
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    if (j - i != 2) {
      throw Error(ErrorCode::kNonManifold, "edge (" + std::to_string(edges[i].first) + "," +
                                               std::to_string(edges[i].second) + ") shared by " +
                                               std::to_string(j - i) + " triangles");
    }
    i = j;
  }
  if (is_orientable(topology_)) {
    std::vector<EdgeKey> directed;
    directed.reserve(triangles_.size() * 3);
    for (const auto& t : triangles_) {
      for (int k = 0; k < 3; ++k) directed.emplace_back(t[k], t[(k + 1) % 3]);
    }
    std::sort(directed.begin(), directed.end());
    if (std::adjacent_find(directed.begin(), directed.end()) != directed.end()) {
      throw Error(ErrorCode::kNonManifold, "inconsistent orientation on an orientable mesh");
    }
  }
}

int SurfaceMesh::edge_count() const {
  auto edges = sorted_edges(triangles_);
  return static_cast<int>(std::unique(edges.begin(), edges.end()) - edges.begin());
}

EdgeLengths SurfaceMesh::metric_lengths(int triangle) const {
  const auto& tri = triangles_[triangle];
  EdgeLengths l = reference_lengths_[triangle];
  for (int k = 0; k < 3; ++k) {
    const double u = 0.5 * (log_factor_[tri[(k + 1) % 3]] + log_factor_[tri[(k + 2) % 3]]);
    if (u != 0.0) l[k] *= std::exp(u);
  }
  return l;
}

double SurfaceMesh::metric_area(int triangle) const { return triangle_area(metric_lengths(triangle)); }

double SurfaceMesh::reference_area(int triangle) const {
  return triangle_area(reference_lengths_[triangle]);
}

double SurfaceMesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < triangle_count(); ++t) a += metric_area(t);
  return a;
}

Eigen::VectorXd SurfaceMesh::lumped_vertex_mass() const {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(vertex_count());
  for (int t = 0; t < triangle_count(); ++t) {
    const double third = metric_area(t) / 3.0;
    for (int v : triangles_[t]) m[v] += third;
  }
  return m;
}

double SurfaceMesh::max_reference_edge() const {
  double h = 0.0;
  for (const auto& l : reference_lengths_) h = std::max({h, l[0], l[1], l[2]});
  return h;
}

SurfaceMesh SurfaceMesh::with_added_log_factor(const Eigen::VectorXd& u) const {
  if (u.size() != vertex_count()) {
    throw Error(ErrorCode::kPreconditionViolation, "conformal factor needs one value per vertex");
  }
  if (!u.allFinite()) throw Error(ErrorCode::kPreconditionViolation, "conformal factor not finite");
  SurfaceMesh out = *this;
  out.log_factor_ = log_factor_ + u;
  for (int t = 0; t < out.triangle_count(); ++t) {
    if (!satisfies_triangle_inequality(out.metric_lengths(t))) {
      throw Error(ErrorCode::kTriangleInequalityViolated,
                  "conformal factor breaks triangle " + std::to_string(t));
    }
  }
  return out;
}

SurfaceMesh SurfaceMesh::with_lattice(const Lattice& lattice) const {
  SurfaceMesh out = *this;
  out.lattice_ = lattice;
  return out;
}

SurfaceMesh SurfaceMesh::permuted(const std::vector<int>& permutation) const {
  const int n = vertex_count();
  if (static_cast<int>(permutation.size()) != n) {
    throw Error(ErrorCode::kPreconditionViolation, "permutation size mismatch");
  }
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) inverse[permutation[i]] = i;
  Eigen::MatrixXd pos(positions_.rows(), n);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    pos.col(i) = positions_.col(permutation[i]);
    u[i] = log_factor_[permutation[i]];
  }
  std::vector<Triangle> tris = triangles_;
  for (auto& t : tris) {
    for (int& v : t) v = inverse[v];
  }
  SurfaceMesh out(std::move(pos), std::move(tris), reference_lengths_, topology_, provenance_);
  out.lattice_ = lattice_;
  return out.with_added_log_factor(u);
}

ImmersionSamples::ImmersionSamples(Eigen::MatrixXd images) : images_(std::move(images)) {
  for (Eigen::Index i = 0; i < images_.cols(); ++i) {
    if (std::abs(images_.col(i).norm() - 1.0) > 1e-10) {
      throw Error(ErrorCode::kPreconditionViolation,
                  "immersion sample " + std::to_string(i) + " is not on the unit sphere");
    }
  }
}

SurfaceMesh icosphere(int subdivisions) {
  if (subdivisions < 0 || subdivisions > 8) {
    throw Error(ErrorCode::kPreconditionViolation, "icosphere subdivisions must lie in [0, 8]");
  }
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> pts = {
      {-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
      {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  for (auto& p : pts) p.normalize();
  std::vector<Triangle> tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& t : tris) {
    if (pts[t[0]].dot(pts[t[1]].cross(pts[t[2]])) < 0.0) std::swap(t[1], t[2]);
  }

  for (int level = 0; level < subdivisions; ++level) {
    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = undirected(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      pts.push_back((pts[a] + pts[b]).normalized());
      const int id = static_cast<int>(pts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]);
      const int bc = mid(t[1], t[2]);
      const int ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }

  Eigen::MatrixXd positions(3, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) positions.col(static_cast<Eigen::Index>(i)) = pts[i];
  std::vector<EdgeLengths> lengths;
  lengths.reserve(tris.size());
  for (const auto& t : tris) {
    lengths.push_back({(pts[t[1]] - pts[t[2]]).norm(), (pts[t[2]] - pts[t[0]]).norm(),
                       (pts[t[0]] - pts[t[1]]).norm()});
  }
  return SurfaceMesh(std::move(positions), std::move(tris), std::move(lengths), Topology::kSphere,
                     "icosphere(subdivisions=" + std::to_string(subdivisions) + ")");
}

ImmersionSamples identity_immersion(const SurfaceMesh& sphere) {
  if (sphere.positions().rows() != 3) {
    throw Error(ErrorCode::kPreconditionViolation, "identity immersion needs positions in R^3");
  }
  Eigen::MatrixXd images = sphere.positions();
  for (Eigen::Index i = 0; i < images.cols(); ++i) images.col(i).normalize();
  return ImmersionSamples(std::move(images));
}

SurfaceMesh flat_torus(const Lattice& lattice, int resolution) {
  if (resolution < 3) throw Error(ErrorCode::kPreconditionViolation, "torus resolution must be >= 3");
  const double scale = lattice.b1.norm() * lattice.b2.norm();
  if (!(lattice.covolume() > 1e-12 * scale)) {
    throw Error(ErrorCode::kDegenerateLattice, "lattice basis vectors are linearly dependent");
  }
  const int n = resolution;
  auto vid = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  Eigen::MatrixXd positions(2, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      positions.col(vid(i, j)) = (static_cast<double>(i) / n) * lattice.b1 +
                                 (static_cast<double>(j) / n) * lattice.b2;
    }
  }
  const double l1 = lattice.b1.norm() / n;
  const double l2 = lattice.b2.norm() / n;
  const double l3 = (lattice.b2 - lattice.b1).norm() / n;
  std::vector<Triangle> tris;
  std::vector<EdgeLengths> lengths;
  tris.reserve(2 * n * n);
  lengths.reserve(2 * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tris.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
      lengths.push_back({l3, l2, l1});
      tris.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
      lengths.push_back({l1, l3, l2});
    }
  }
  SurfaceMesh mesh(std::move(positions), std::move(tris), std::move(lengths), Topology::kTorus,
                   "flat_torus(b1=(" + std::to_string(lattice.b1.x()) + "," +
                       std::to_string(lattice.b1.y()) + "),b2=(" + std::to_string(lattice.b2.x()) +
                       "," + std::to_string(lattice.b2.y()) +
                       "),resolution=" + std::to_string(resolution) + ")");
  return mesh.with_lattice(lattice);
}

SurfaceMesh klein_bottle_revolution(int grid_u, int grid_v) {
  if (grid_u < 16 || grid_v < 16) {
    throw Error(ErrorCode::kPreconditionViolation, "Klein bottle grids must be >= 16");
  }
  const int nu = grid_u;
  const int nv = grid_v;
  const double du = std::numbers::pi / 2.0 / nu;
  const double dv = std::numbers::pi / nv;
  auto vid = [nu, nv](int i, int j) {
    if (j >= nv) {
      j -= nv;
      i = (nu - i % nu) % nu;
    }
    return (i % nu) * nv + j;
  };
  auto length = [du, dv](int i0, int j0, int i1, int j1) {
    const double vm = 0.5 * (j0 + j1) * dv;
    const double c = std::cos(vm);
    const double q = 1.0 + 8.0 * c * c;
    const double w = 9.0 + q * q;
    const double a = w / q;
    const double b = w / (q * q);
    const double eu = (i1 - i0) * du;
    const double ev = (j1 - j0) * dv;
    return std::sqrt(a * eu * eu + b * ev * ev);
  };
  Eigen::MatrixXd positions(2, nu * nv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) positions.col(i * nv + j) = Eigen::Vector2d(i * du, j * dv);
  }
  std::vector<Triangle> tris;
  std::vector<EdgeLengths> lengths;
  tris.reserve(2 * nu * nv);
  lengths.reserve(2 * nu * nv);
  using Corner = std::array<int, 2>;
  auto add = [&](Corner a, Corner b, Corner c) {
    tris.push_back({vid(a[0], a[1]), vid(b[0], b[1]), vid(c[0], c[1])});
    lengths.push_back({length(b[0], b[1], c[0], c[1]), length(c[0], c[1], a[0], a[1]),
                       length(a[0], a[1], b[0], b[1])});
  };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      add({i, j}, {i + 1, j}, {i + 1, j + 1});
      add({i, j}, {i + 1, j + 1}, {i, j + 1});
    }
  }
  return SurfaceMesh(std::move(positions), std::move(tris), std::move(lengths), Topology::kKlein,
                     "klein_bottle_revolution(grid_u=" + std::to_string(grid_u) +
                         ",grid_v=" + std::to_string(grid_v) + ")");
}

SurfaceMesh projective_plane(int subdivisions) {
  if (subdivisions < 1) {
    throw Error(ErrorCode::kPreconditionViolation, "projective plane needs subdivisions >= 1");
  }
  const SurfaceMesh sphere = icosphere(subdivisions);
  const Eigen::MatrixXd& pos = sphere.positions();
  const int n = sphere.vertex_count();

  std::map<std::array<double, 3>, int> index;
  for (int i = 0; i < n; ++i) index.emplace(std::array<double, 3>{pos(0, i), pos(1, i), pos(2, i)}, i);
  std::vector<int> representative(n, -1);
  std::vector<int> compact(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const auto it = index.find({-pos(0, i), -pos(1, i), -pos(2, i)});
    if (it == index.end()) {
      throw Error(ErrorCode::kNonManifold, "icosphere is not antipodally symmetric");
    }
    const int rep = std::min(i, it->second);
    representative[i] = rep;
    if (rep == i) compact[i] = next++;
  }

  Eigen::MatrixXd positions(3, next);
  for (int i = 0; i < n; ++i) {
    if (compact[i] >= 0) positions.col(compact[i]) = pos.col(i);
  }
  std::map<std::array<int, 3>, bool> seen;
  std::vector<Triangle> tris;
  std::vector<EdgeLengths> lengths;
  for (int t = 0; t < sphere.triangle_count(); ++t) {
    Triangle q;
    for (int k = 0; k < 3; ++k) q[k] = compact[representative[sphere.triangles()[t][k]]];
    std::array<int, 3> key = q;
    std::sort(key.begin(), key.end());
    if (!seen.emplace(key, true).second) continue;
    tris.push_back(q);
    lengths.push_back(sphere.reference_lengths()[t]);
  }
  return SurfaceMesh(std::move(positions), std::move(tris), std::move(lengths),
                     Topology::kProjectivePlane,
                     "projective_plane(subdivisions=" + std::to_string(subdivisions) + ")");
}

SurfaceMesh apply_conformal_factor(const SurfaceMesh& mesh, const Eigen::VectorXd& u) {
  return mesh.with_added_log_factor(u);
}

namespace {

Eigen::MatrixXd lattice_coordinates(const SurfaceMesh& mesh, const Lattice& lattice) {
  Eigen::Matrix2d basis;
  basis.col(0) = lattice.b1;
  basis.col(1) = lattice.b2;
  return basis.inverse() * mesh.positions();
}

bool same_lattice(const Lattice& a, const Lattice& b) {
  return (a.b1 - b.b1).norm() < 1e-12 && (a.b2 - b.b2).norm() < 1e-12;
}

}  // namespace

ImmersionSamples equilateral_torus_immersion(const SurfaceMesh& mesh) {
  if (mesh.topology() != Topology::kTorus || !mesh.lattice() ||
      !same_lattice(*mesh.lattice(), Lattice::equilateral())) {
    throw Error(ErrorCode::kWrongLattice, "mesh is not the equilateral flat torus");
  }
  const Eigen::MatrixXd st = lattice_coordinates(mesh, *mesh.lattice());
  const double c = 1.0 / std::sqrt(3.0);
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::MatrixXd images(6, mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    // Shortest dual vectors d1, d2, d1 + d2 pair with lattice coordinates s, t, s + t.
    const double a1 = two_pi * st(0, v);
    const double a2 = two_pi * st(1, v);
    const double a3 = two_pi * (st(0, v) + st(1, v));
    images.col(v) << std::cos(a1), std::sin(a1), std::cos(a2), std::sin(a2), std::cos(a3),
        std::sin(a3);
    images.col(v) *= c;
    images.col(v).normalize();
  }
  return ImmersionSamples(std::move(images));
}

ImmersionSamples square_torus_immersion(const SurfaceMesh& mesh) {
  if (mesh.topology() != Topology::kTorus || !mesh.lattice() ||
      !same_lattice(*mesh.lattice(), Lattice::square())) {
    throw Error(ErrorCode::kWrongLattice, "mesh is not the square flat torus");
  }
  const Eigen::MatrixXd st = lattice_coordinates(mesh, *mesh.lattice());
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::MatrixXd images(4, mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const double a1 = two_pi * st(0, v);
    const double a2 = two_pi * st(1, v);
    images.col(v) << std::cos(a1), std::sin(a1), std::cos(a2), std::sin(a2);
    images.col(v).normalize();
  }
  return ImmersionSamples(std::move(images));
}

ImmersionSamples complex_squaring_immersion(const SurfaceMesh& sphere) {
  const ImmersionSamples id = identity_immersion(sphere);
  Eigen::MatrixXd images(3, sphere.vertex_count());
  for (int v = 0; v < sphere.vertex_count(); ++v) {
    const double x = id.images()(0, v);
    const double y = id.images()(1, v);
    const double z = id.images()(2, v);
    const double d = 1.0 + z * z;
    images.col(v) = Eigen::Vector3d((x * x - y * y) / d, 2.0 * x * y / d, 2.0 * z / d).normalized();
  }
  return ImmersionSamples(std::move(images));
}

}  // namespace confspec
