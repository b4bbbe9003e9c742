#pragma once

// Machine-readable reports (JSON, CSV) and static SVG plots. JSON documents
// carry schema_version and no timings, so identical runs give identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "confspec/bound_lab.hpp"
#include "confspec/bound_tables.hpp"
#include "confspec/conformal_volume.hpp"
#include "confspec/degree.hpp"
#include "confspec/spectral_solver.hpp"
#include "confspec/surface_mesh.hpp"

namespace confspec {

inline constexpr int kSchemaVersion = 1;

std::string spectrum_json(const SurfaceMesh& mesh, const SpectralSummary& summary);

std::string conformal_volume_json(const SurfaceMesh& mesh, const ConformalVolumeEstimate& estimate);

std::string cap_search_json(const SurfaceMesh& mesh, const CapSearchResult& result,
                            const std::optional<DegreeEstimate>& degree);

struct BoundRun {
  BoundReport report;
  SpectralSummary spectrum;
  FirstEigenfunction f1;
  ConformalVolumeEstimate vc;
  std::optional<CapSearchResult> cap;
  std::optional<DegreeEstimate> degree;
  std::optional<FoldSplit> split;
  // lambda2_bar bound from the table row that applies, when one does.
  std::optional<double> table_bound;
  std::string table_row;
};

std::string bound_json(const SurfaceMesh& mesh, const BoundRun& run);

std::string table_json(const std::vector<TableRow>& rows, const std::vector<int>& genera);
std::string table_csv(const std::vector<TableRow>& rows, const std::vector<int>& genera);

// |psi| over the cap grid: min over directions against t, and the directions
// of the best t-slice in (azimuth, polar angle) coordinates.
std::string psi_landscape_svg(const CapSearchResult& result);

// Horizontal bars for lambda2_bar (FEM), rayleigh * vol, the trial energy and
// the theorem right-hand side.
std::string chain_svg(const BoundRun& run);

}  // namespace confspec
