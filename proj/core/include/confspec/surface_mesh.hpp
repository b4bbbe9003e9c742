#pragma once

// Triangulated closed surfaces carrying an intrinsic metric.
//
// The metric lives in per-triangle edge lengths, not in vertex positions.
// A mesh stores the lengths of a reference metric g0 together with a
// per-vertex log conformal factor u, and the actual metric g = e^{2u} g0 is
// obtained by scaling each edge by e^{(u_i + u_j) / 2}. Positions are kept for
// export, plotting and for evaluating immersions and factor presets; they are
// either points of R^3 or points of a 2-D parameter chart.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace confspec {

enum class Topology { kSphere, kTorus, kKlein, kProjectivePlane };

std::string to_string(Topology topology);
Topology topology_from_string(const std::string& name);
bool is_orientable(Topology topology);

using Triangle = std::array<int, 3>;
// Edge lengths of a triangle; entry k is the length of the edge opposite corner k.
using EdgeLengths = std::array<double, 3>;

struct Lattice {
  Eigen::Vector2d b1;
  Eigen::Vector2d b2;

  static Lattice square();
  static Lattice equilateral();
  double covolume() const;
};

class SurfaceMesh {
 public:
  // Validates closure (every edge shared by exactly two triangles) and the
  // triangle inequality for both the reference and the scaled lengths.
  SurfaceMesh(Eigen::MatrixXd positions, std::vector<Triangle> triangles,
              std::vector<EdgeLengths> reference_lengths, Topology topology,
              std::string provenance);

  int vertex_count() const { return static_cast<int>(positions_.cols()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const;
  int euler_characteristic() const { return vertex_count() - edge_count() + triangle_count(); }

  const Eigen::MatrixXd& positions() const { return positions_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<EdgeLengths>& reference_lengths() const { return reference_lengths_; }
  const Eigen::VectorXd& log_factor() const { return log_factor_; }
  Topology topology() const { return topology_; }
  const std::string& provenance() const { return provenance_; }
  const std::optional<Lattice>& lattice() const { return lattice_; }

  // Lengths of the metric e^{2u} g0.
  EdgeLengths metric_lengths(int triangle) const;
  double metric_area(int triangle) const;
  double reference_area(int triangle) const;
  double total_area() const;
  // One third of the adjacent triangle areas, metric g.
  Eigen::VectorXd lumped_vertex_mass() const;
  double max_reference_edge() const;

  // Returns a copy with u replaced by log_factor + u. Throws
  // Error(kTriangleInequalityViolated) when a scaled triangle degenerates.
  SurfaceMesh with_added_log_factor(const Eigen::VectorXd& u) const;
  SurfaceMesh with_lattice(const Lattice& lattice) const;
  // Relabels vertices: new vertex i is old vertex permutation[i].
  SurfaceMesh permuted(const std::vector<int>& permutation) const;

 private:
  void validate() const;

  Eigen::MatrixXd positions_;
  std::vector<Triangle> triangles_;
  std::vector<EdgeLengths> reference_lengths_;
  Eigen::VectorXd log_factor_;
  Topology topology_;
  std::string provenance_;
  std::optional<Lattice> lattice_;
};

// Per-vertex images of a map M -> S^n, stored column-wise as an (n+1) x V matrix.
class ImmersionSamples {
 public:
  // Throws Error(kPreconditionViolation) if a column is not unit within 1e-10.
  explicit ImmersionSamples(Eigen::MatrixXd images);

  const Eigen::MatrixXd& images() const { return images_; }
  int ambient_dim() const { return static_cast<int>(images_.rows()); }
  int sphere_dim() const { return ambient_dim() - 1; }
  int vertex_count() const { return static_cast<int>(images_.cols()); }

 private:
  Eigen::MatrixXd images_;
};

// Triangle inequality with a relative slack of 1e-12.
bool satisfies_triangle_inequality(const EdgeLengths& l);
// Heron's formula in the numerically stable ordering.
double triangle_area(const EdgeLengths& l);

// Subdivided icosahedron projected to the unit sphere, with chordal edge lengths.
SurfaceMesh icosphere(int subdivisions);
ImmersionSamples identity_immersion(const SurfaceMesh& sphere);

SurfaceMesh flat_torus(const Lattice& lattice, int resolution);

// Metric of revolution g0 = W/Q (du^2 + dv^2 / Q), Q = 1 + 8 cos^2 v, W = 9 + Q^2,
// on 0 <= u < pi/2, 0 <= v < pi, glued as the quotient of the torus
// [0, pi/2) x [0, 2 pi) by (u, v) -> (-u, v + pi).
SurfaceMesh klein_bottle_revolution(int grid_u, int grid_v);

// Antipodal quotient of icosphere(subdivisions).
SurfaceMesh projective_plane(int subdivisions);

// Scales edge lengths by e^{(u_i + u_j)/2}. Composes with any existing factor.
SurfaceMesh apply_conformal_factor(const SurfaceMesh& mesh, const Eigen::VectorXd& u);

// Minimal immersion of the equilateral torus into S^5 by first eigenfunctions.
// Throws Error(kWrongLattice) unless the mesh is built on Lattice::equilateral().
ImmersionSamples equilateral_torus_immersion(const SurfaceMesh& mesh);
// Minimal immersion of the square torus into S^3 (Clifford torus).
ImmersionSamples square_torus_immersion(const SurfaceMesh& mesh);
// Degree-2 branched cover of the Riemann sphere, z -> z^2, on an icosphere.
ImmersionSamples complex_squaring_immersion(const SurfaceMesh& sphere);

}  // namespace confspec
