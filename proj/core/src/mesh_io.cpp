#include "confspec/mesh_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"

#include "confspec/error.hpp"

namespace confspec {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

// Next non-comment token line of an OFF stream.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

void write_off(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  auto out = open_out(path);
  out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.triangle_count() << " 0\n";
  const auto& p = mesh.positions();
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    for (int r = 0; r < 3; ++r) {
      out << (r < p.rows() ? p(r, v) : 0.0) << (r < 2 ? ' ' : '\n');
    }
  }
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_mesh_sidecar(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  json j;
  j["schema_version"] = 1;
  j["topology"] = to_string(mesh.topology());
  j["provenance"] = mesh.provenance();
  j["position_dim"] = mesh.positions().rows();
  json lengths = json::array();
  for (const auto& l : mesh.reference_lengths()) lengths.push_back({l[0], l[1], l[2]});
  j["reference_lengths"] = std::move(lengths);
  j["log_factor"] = std::vector<double>(mesh.log_factor().data(),
                                        mesh.log_factor().data() + mesh.log_factor().size());
  if (mesh.lattice()) {
    j["lattice"] = {{"b1", {mesh.lattice()->b1.x(), mesh.lattice()->b1.y()}},
                    {"b2", {mesh.lattice()->b2.x(), mesh.lattice()->b2.y()}}};
  }
  auto out = open_out(path);
  out << j.dump(1) << '\n';
}

SurfaceMesh read_mesh(const std::filesystem::path& off_path,
                      const std::optional<std::filesystem::path>& sidecar_path) {
  std::ifstream in(off_path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + off_path.string());
  std::string line;
  if (!next_line(in, line) || line.rfind("OFF", 0) != 0) {
    throw Error(ErrorCode::kIoError, off_path.string() + " is not an OFF file");
  }
  std::string rest = line.substr(3);
  if (rest.find_first_not_of(" \t\r") == std::string::npos && !next_line(in, rest)) {
    throw Error(ErrorCode::kIoError, "truncated OFF header");
  }
  int nv = 0, nf = 0;
  std::istringstream(rest) >> nv >> nf;
  if (nv <= 0 || nf <= 0) throw Error(ErrorCode::kIoError, "OFF header has no geometry");

  json side;
  if (sidecar_path) {
    std::ifstream sj(*sidecar_path);
    if (!sj) throw Error(ErrorCode::kIoError, "cannot read " + sidecar_path->string());
    side = json::parse(sj);
  }
  const int dim = side.contains("position_dim") ? side["position_dim"].get<int>() : 3;

  Eigen::MatrixXd pos(dim, nv);
  for (int v = 0; v < nv; ++v) {
    if (!next_line(in, line)) throw Error(ErrorCode::kIoError, "truncated OFF vertex list");
    std::istringstream ls(line);
    double xyz[3] = {0, 0, 0};
    ls >> xyz[0] >> xyz[1] >> xyz[2];
    for (int r = 0; r < dim; ++r) pos(r, v) = xyz[r];
  }
  std::vector<Triangle> tris;
  tris.reserve(nf);
  for (int f = 0; f < nf; ++f) {
    if (!next_line(in, line)) throw Error(ErrorCode::kIoError, "truncated OFF face list");
    std::istringstream ls(line);
    int k = 0;
    Triangle t{};
    ls >> k >> t[0] >> t[1] >> t[2];
    if (k != 3 || !ls) throw Error(ErrorCode::kIoError, "only triangular OFF faces are supported");
    tris.push_back(t);
  }

  std::vector<EdgeLengths> lengths;
  lengths.reserve(tris.size());
  if (side.contains("reference_lengths")) {
    for (const auto& l : side["reference_lengths"]) {
      lengths.push_back({l[0].get<double>(), l[1].get<double>(), l[2].get<double>()});
    }
  } else {
    for (const auto& t : tris) {
      lengths.push_back({(pos.col(t[1]) - pos.col(t[2])).norm(), (pos.col(t[2]) - pos.col(t[0])).norm(),
                         (pos.col(t[0]) - pos.col(t[1])).norm()});
    }
  }

  Topology topology = Topology::kSphere;
  if (side.contains("topology")) {
    topology = topology_from_string(side["topology"].get<std::string>());
  } else {
    std::vector<std::pair<int, int>> edges;
    for (const auto& t : tris) {
      for (int k = 0; k < 3; ++k) {
        edges.emplace_back(std::min(t[k], t[(k + 1) % 3]), std::max(t[k], t[(k + 1) % 3]));
      }
    }
    std::sort(edges.begin(), edges.end());
    const int ne = static_cast<int>(std::unique(edges.begin(), edges.end()) - edges.begin());
    const int chi = nv - ne + nf;
    if (chi == 0) topology = Topology::kTorus;
    if (chi == 1) topology = Topology::kProjectivePlane;
  }
  const std::string provenance =
      side.contains("provenance") ? side["provenance"].get<std::string>() : off_path.filename().string();
  SurfaceMesh mesh(std::move(pos), std::move(tris), std::move(lengths), topology, provenance);
  if (side.contains("lattice")) {
    const auto& l = side["lattice"];
    mesh = mesh.with_lattice({Eigen::Vector2d(l["b1"][0].get<double>(), l["b1"][1].get<double>()),
                              Eigen::Vector2d(l["b2"][0].get<double>(), l["b2"][1].get<double>())});
  }
  if (side.contains("log_factor")) {
    const auto u = side["log_factor"].get<std::vector<double>>();
    if (static_cast<int>(u.size()) != nv) throw Error(ErrorCode::kIoError, "log_factor size mismatch");
    mesh = mesh.with_added_log_factor(Eigen::Map<const Eigen::VectorXd>(u.data(), nv));
  }
  return mesh;
}

}  // namespace confspec
