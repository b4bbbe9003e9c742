#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "confspec/commands.hpp"

namespace fs = std::filesystem;

namespace {

void add_common(CLI::App* sub, confspec::RunConfig& config) {
  sub->add_option("--surface", config.surface, "sphere | torus | klein | rp2 | file")
      ->check(CLI::IsMember({"sphere", "torus", "klein", "rp2", "file"}));
  sub->add_option("--subdiv", config.subdivisions, "icosphere subdivision level (sphere, rp2)");
  sub->add_option("--lattice", config.lattice, "square | equilateral (torus)")
      ->check(CLI::IsMember({"square", "equilateral"}));
  sub->add_option("--resolution", config.resolution, "grid points per lattice direction (torus)");
  sub->add_option("--grid", config.grid, "grid points per direction (klein)");
  sub->add_option("--mesh", config.mesh_path, "OFF mesh (surface file)");
  sub->add_option("--sidecar", config.sidecar_path, "JSON sidecar for --mesh");
  sub->add_option("--factor", config.factor,
                  "none | bump[:cx,cy,cz,width,amplitude] | random-fourier[:seed,modes,amplitude]");
  sub->add_option("--seed", config.seed, "seed for every stochastic choice");
  sub->add_option("--budget", config.budget, "evaluation budget of each local search");
  sub->add_option("--eigen-count", config.eigen_count, "number of nonzero eigenvalues to compute");
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace eigenvalue bounds from conformal volume"};
  app.require_subcommand(1);
  confspec::RunConfig config;
  std::string out_path;
  std::string genus;

  auto* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues of a surface");
  auto* verify = app.add_subcommand("verify-bound", "folded trial functions and the lambda_2 inequality chain");
  auto* vc = app.add_subcommand("conformal-volume", "estimate the conformal volume of the built-in immersion");
  auto* caps = app.add_subcommand("cap-search", "search for a doubly admissible cap");
  auto* table = app.add_subcommand("table", "closed-form bounds for homogeneous spaces");
  for (auto* sub : {spectrum, verify, vc, caps}) add_common(sub, config);
  spectrum->add_option("--export", config.export_prefix, "write stiffness/mass (Matrix Market) and mesh (OFF + JSON)");
  caps->add_option("--degree-subdiv", config.degree_subdivisions, "icosphere level of the degree check");
  verify->add_option("--degree-subdiv", config.degree_subdivisions, "icosphere level of the degree check");
  table->add_option("--genus", genus, "append genus bounds, e.g. 0..5");
  for (auto* sub : {spectrum, verify, vc, caps, table}) {
    sub->add_option("--out", out_path, "output file; side artifacts are written next to it");
    sub->add_option("--format", config.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(confspec::ExitCode::kUsage);
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!genus.empty()) {
    static const std::regex range(R"((\d+)(?:\.\.(\d+))?)");
    std::smatch m;
    if (!std::regex_match(genus, m, range)) {
      std::cerr << "error: --genus expects N or A..B\n";
      return static_cast<int>(confspec::ExitCode::kUsage);
    }
    const int lo = std::stoi(m[1]);
    const int hi = m[2].matched ? std::stoi(m[2]) : lo;
    config.genus_range = std::make_pair(lo, hi);
  }

  const confspec::CommandOutput result = confspec::run_command(config);
  if (!result.message.empty()) std::cerr << "confspec: " << result.message << "\n";

  if (!result.document.empty()) {
    if (out_path.empty()) {
      std::cout << result.document;
    } else {
      const fs::path out(out_path);
      if (!write_file(out, result.document)) {
        std::cerr << "confspec: cannot write " << out << "\n";
        return static_cast<int>(confspec::ExitCode::kUsage);
      }
      for (const auto& [suffix, content] : result.artifacts) {
        fs::path side = out;
        side.replace_extension(suffix);
        if (!write_file(side, content)) std::cerr << "confspec: cannot write " << side << "\n";
      }
    }
  }
  return result.exit_code;
}
