#include "confspec/commands.hpp"

#include <cmath>
#include <sstream>

#include "confspec/bound_lab.hpp"
#include "confspec/bound_tables.hpp"
#include "confspec/conformal_factor.hpp"
#include "confspec/conformal_volume.hpp"
#include "confspec/error.hpp"
#include "confspec/mesh_io.hpp"
#include "confspec/report.hpp"
#include "confspec/spectral_solver.hpp"

namespace confspec {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw UsageError("bad number '" + item + "' in factor spec");
    } catch (const std::logic_error&) {
      throw UsageError("bad number '" + item + "' in factor spec");
    }
  }
  return out;
}

Eigen::VectorXd factor_values(const RunConfig& config, const SurfaceMesh& mesh) {
  const std::string& spec = config.factor;
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));
  if (name == "none") return Eigen::VectorXd::Zero(mesh.vertex_count());
  if (name == "bump") {
    BumpFactor b;
    if (!args.empty()) {
      if (args.size() != 5) throw UsageError("bump takes cx,cy,cz,width,amplitude");
      b.center = Eigen::Vector3d(args[0], args[1], args[2]).normalized();
      b.width = args[3];
      b.amplitude = args[4];
    }
    return bump_factor(mesh, b);
  }
  if (name == "random-fourier") {
    RandomFourierFactor r;
    r.seed = config.seed;
    if (!args.empty()) {
      if (args.size() != 3) throw UsageError("random-fourier takes seed,modes,amplitude");
      r.seed = static_cast<std::uint64_t>(args[0]);
      r.modes = static_cast<int>(args[1]);
      r.amplitude = args[2];
    }
    return random_fourier_factor(mesh, r);
  }
  throw UsageError("unknown conformal factor '" + name + "'");
}

Lattice lattice_from(const RunConfig& config) {
  if (config.lattice == "square") return Lattice::square();
  if (config.lattice == "equilateral") return Lattice::equilateral();
  throw UsageError("unknown lattice '" + config.lattice + "'");
}

struct TableBound {
  std::string row;
  double value;
};

std::optional<TableBound> table_bound_for(const RunConfig& config) {
  if (config.surface == "sphere") return TableBound{"S^2", table_row("S^m").lambda2_bar_bound};
  if (config.surface == "rp2") return TableBound{"RP^2", table_row("RP^m").lambda2_bar_bound};
  if (config.surface == "klein") return TableBound{"K", table_row("K").lambda2_bar_bound};
  if (config.surface == "torus" && config.lattice == "equilateral") {
    return TableBound{"T_eq", table_row("T_eq").lambda2_bar_bound};
  }
  if (config.surface == "torus" && config.lattice == "square") {
    return TableBound{"S^1xS^1", table_row("S^pxS^q").lambda2_bar_bound};
  }
  return std::nullopt;
}

ImmersionSamples require_immersion(const RunConfig& config, const SurfaceMesh& mesh) {
  auto phi = canonical_immersion(config, mesh);
  if (!phi) throw UsageError("surface '" + config.surface + "' has no built-in immersion");
  return *phi;
}

CapSearchOptions cap_options(const RunConfig& config) {
  CapSearchOptions o;
  o.budget = config.budget;
  o.seed = config.seed;
  return o;
}

ConformalVolumeOptions vc_options(const RunConfig& config) {
  ConformalVolumeOptions o;
  o.budget = config.budget;
  o.seed = config.seed;
  return o;
}

}  // namespace

SurfaceMesh build_surface(const RunConfig& config) {
  std::optional<SurfaceMesh> mesh;
  if (config.surface == "sphere") {
    if (config.subdivisions < 0 || config.subdivisions > 8) throw UsageError("--subdiv must be in 0..8");
    mesh = icosphere(config.subdivisions);
  } else if (config.surface == "torus") {
    mesh = flat_torus(lattice_from(config), config.resolution);
  } else if (config.surface == "klein") {
    mesh = klein_bottle_revolution(config.grid, config.grid);
  } else if (config.surface == "rp2") {
    if (config.subdivisions < 1 || config.subdivisions > 8) throw UsageError("--subdiv must be in 1..8");
    mesh = projective_plane(config.subdivisions);
  } else if (config.surface == "file") {
    if (config.mesh_path.empty()) throw UsageError("--surface file needs --mesh");
    mesh = config.sidecar_path.empty() ? read_mesh(config.mesh_path) : read_mesh(config.mesh_path, config.sidecar_path);
  } else {
    throw UsageError("unknown surface '" + config.surface + "'");
  }
  if (config.factor == "none") return *mesh;
  return apply_conformal_factor(*mesh, factor_values(config, *mesh));
}

std::optional<ImmersionSamples> canonical_immersion(const RunConfig& config, const SurfaceMesh& mesh) {
  if (config.surface == "sphere") return identity_immersion(mesh);
  if (config.surface == "torus" && config.lattice == "equilateral") return equilateral_torus_immersion(mesh);
  if (config.surface == "torus" && config.lattice == "square") return square_torus_immersion(mesh);
  return std::nullopt;
}

CommandOutput cmd_spectrum(const RunConfig& config) {
  const SurfaceMesh mesh = build_surface(config);
  const FemMatrices fem = assemble(mesh);
  EigenOptions options;
  options.seed = config.seed;
  const SpectralSummary summary = eigenpairs(fem, std::max(config.eigen_count, 2), options);
  if (!config.export_prefix.empty()) {
    export_matrix_market(fem.stiffness, config.export_prefix + "_stiffness.mtx");
    export_matrix_market(fem.mass, config.export_prefix + "_mass.mtx");
    write_off(config.export_prefix + ".off", mesh);
    write_mesh_sidecar(config.export_prefix + ".json", mesh);
  }
  CommandOutput out;
  out.document = spectrum_json(mesh, summary);
  return out;
}

CommandOutput cmd_conformal_volume(const RunConfig& config) {
  const SurfaceMesh mesh = build_surface(config);
  const ImmersionSamples phi = require_immersion(config, mesh);
  const ConformalVolumeEstimate est = estimate_vc(mesh, phi, vc_options(config));
  CommandOutput out;
  out.document = conformal_volume_json(mesh, est);
  return out;
}

CommandOutput cmd_cap_search(const RunConfig& config) {
  const SurfaceMesh mesh = build_surface(config);
  const ImmersionSamples phi = renormalized_immersion(mesh, require_immersion(config, mesh));
  EigenOptions eo;
  eo.seed = config.seed;
  const SpectralSummary summary = eigenpairs(assemble(mesh), std::max(config.eigen_count, 2), eo);
  const FirstEigenfunction f1 = choose_f1(summary, mesh, phi);
  const CapSearchResult result = cap_search_best_effort(mesh, phi, f1.values, cap_options(config));
  std::optional<DegreeEstimate> degree;
  if (phi.ambient_dim() == 3) degree = hemisphere_degree(mesh, phi, f1.values, config.degree_subdivisions);
  CommandOutput out;
  out.document = cap_search_json(mesh, result, degree);
  out.artifacts["landscape.svg"] = psi_landscape_svg(result);
  if (!result.success) {
    out.exit_code = static_cast<int>(ExitCode::kNumericalFailure);
    out.message = "cap search did not reach the tolerance";
  }
  return out;
}

CommandOutput cmd_verify_bound(const RunConfig& config) {
  const SurfaceMesh mesh = build_surface(config);
  const ImmersionSamples phi = renormalized_immersion(mesh, require_immersion(config, mesh));
  const FemMatrices fem = assemble(mesh);
  EigenOptions eo;
  eo.seed = config.seed;

  BoundRun run;
  run.spectrum = eigenpairs(fem, std::max(config.eigen_count, 2), eo);
  run.f1 = choose_f1(run.spectrum, mesh, phi);
  run.vc = estimate_vc(mesh, phi, vc_options(config));

  const double scale = mesh.total_area() * run.f1.values.lpNorm<Eigen::Infinity>();
  std::optional<SphericalCap> cap;
  if (run.f1.moment.norm() > 1e-12 * scale) {
    run.cap = cap_search_best_effort(mesh, phi, run.f1.values, cap_options(config));
    cap = run.cap->cap;
    run.split = fold_split(mesh, phi, run.cap->cap, run.cap->xi);
    if (phi.ambient_dim() == 3) run.degree = hemisphere_degree(mesh, phi, run.f1.values, config.degree_subdivisions);
  }
  run.report = lambda2_upper_bound(mesh, phi, fem, run.spectrum, run.f1, cap, run.vc.value);
  if (auto tb = table_bound_for(config)) {
    run.table_row = tb->row;
    run.table_bound = tb->value;
  }

  CommandOutput out;
  out.document = bound_json(mesh, run);
  out.artifacts["chain.svg"] = chain_svg(run);
  if (run.cap) out.artifacts["landscape.svg"] = psi_landscape_svg(*run.cap);
  if (run.cap && !run.cap->success) {
    out.exit_code = static_cast<int>(ExitCode::kNumericalFailure);
    out.message = "cap search did not reach the tolerance";
  } else if (!run.report.chain_ok) {
    out.exit_code = static_cast<int>(ExitCode::kChainViolation);
    out.message = "inequality chain violated";
  }
  return out;
}

CommandOutput cmd_table(const RunConfig& config) {
  std::vector<int> genera;
  if (config.genus_range) {
    if (config.genus_range->first < 0 || config.genus_range->second < config.genus_range->first) {
      throw UsageError("--genus expects a range a..b with 0 <= a <= b");
    }
    for (int g = config.genus_range->first; g <= config.genus_range->second; ++g) genera.push_back(g);
  }
  const std::vector<TableRow> rows = table_rows();
  CommandOutput out;
  if (config.format == "json") {
    out.document = table_json(rows, genera);
  } else if (config.format == "csv") {
    out.document = table_csv(rows, genera);
  } else {
    throw UsageError("unknown format '" + config.format + "'");
  }
  return out;
}

CommandOutput run_command(const RunConfig& config) {
  try {
    if (config.format != "json" && config.format != "csv") throw UsageError("unknown format '" + config.format + "'");
    if (config.format == "csv" && config.command != "table") throw UsageError("csv output is only available for table");
    if (config.command == "spectrum") return cmd_spectrum(config);
    if (config.command == "conformal-volume") return cmd_conformal_volume(config);
    if (config.command == "cap-search") return cmd_cap_search(config);
    if (config.command == "verify-bound") return cmd_verify_bound(config);
    if (config.command == "table") return cmd_table(config);
    throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError& e) {
    CommandOutput out;
    out.exit_code = static_cast<int>(ExitCode::kUsage);
    out.message = e.what();
    return out;
  } catch (const Error& e) {
    CommandOutput out;
    switch (e.code()) {
      case ErrorCode::kPreconditionViolation:
      case ErrorCode::kUnknownRow:
      case ErrorCode::kWrongLattice:
      case ErrorCode::kDegenerateLattice:
      case ErrorCode::kIoError:
        out.exit_code = static_cast<int>(ExitCode::kUsage);
        break;
      default:
        out.exit_code = static_cast<int>(ExitCode::kNumericalFailure);
    }
    out.message = e.what();
    return out;
  }
}

}  // namespace confspec
