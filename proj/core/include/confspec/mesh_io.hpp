#pragma once

// OFF import/export with a JSON sidecar carrying what OFF cannot: metric edge
// lengths, the log conformal factor, the topology tag and lattice metadata.

#include <filesystem>
#include <optional>

#include "confspec/surface_mesh.hpp"

namespace confspec {

void write_off(const std::filesystem::path& path, const SurfaceMesh& mesh);
void write_mesh_sidecar(const std::filesystem::path& path, const SurfaceMesh& mesh);

// Reads an OFF file and, when given, its sidecar. Without a sidecar the
// reference lengths are the Euclidean lengths of the OFF positions and the
// topology tag is inferred from the Euler characteristic (2 -> sphere,
// 0 -> torus, 1 -> rp2).
SurfaceMesh read_mesh(const std::filesystem::path& off_path,
                      const std::optional<std::filesystem::path>& sidecar_path = std::nullopt);

}  // namespace confspec
