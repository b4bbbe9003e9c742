#pragma once

// Orchestration behind the command-line tool. Every command returns its
// primary document plus named side artifacts instead of touching the file
// system, so the same code paths serve the CLI and the tests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confspec/surface_mesh.hpp"

namespace confspec {

enum class ExitCode : int { kOk = 0, kChainViolation = 1, kUsage = 2, kNumericalFailure = 3 };

struct RunConfig {
  std::string command;
  // sphere | torus | klein | rp2 | file
  std::string surface = "sphere";
  int subdivisions = 4;
  // square | equilateral
  std::string lattice = "equilateral";
  int resolution = 64;
  int grid = 256;
  std::string mesh_path;
  std::string sidecar_path;
  // none | bump[:cx,cy,cz,width,amplitude] | random-fourier[:seed,modes,amplitude]
  std::string factor = "none";
  std::uint64_t seed = 1;
  int budget = 300;
  int eigen_count = 6;
  // json | csv
  std::string format = "json";
  // Genus bounds appended to the table, inclusive range.
  std::optional<std::pair<int, int>> genus_range;
  int degree_subdivisions = 2;
  // When set, spectrum also writes <prefix>_stiffness.mtx, <prefix>_mass.mtx,
  // <prefix>.off and <prefix>.json.
  std::string export_prefix;
};

struct CommandOutput {
  int exit_code = 0;
  std::string document;
  // File suffix -> content, e.g. "landscape.svg".
  std::map<std::string, std::string> artifacts;
  std::string message;
};

// Builds the configured surface with its conformal factor applied.
SurfaceMesh build_surface(const RunConfig& config);

// The canonical immersion that goes with the surface, if there is one:
// identity on the sphere, minimal immersions of the square and equilateral
// tori.
std::optional<ImmersionSamples> canonical_immersion(const RunConfig& config, const SurfaceMesh& mesh);

CommandOutput cmd_spectrum(const RunConfig& config);
CommandOutput cmd_conformal_volume(const RunConfig& config);
CommandOutput cmd_cap_search(const RunConfig& config);
CommandOutput cmd_verify_bound(const RunConfig& config);
CommandOutput cmd_table(const RunConfig& config);

// Dispatches on config.command and maps library errors onto exit codes.
CommandOutput run_command(const RunConfig& config);

}  // namespace confspec
