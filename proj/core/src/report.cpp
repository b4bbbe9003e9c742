#include "confspec/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace confspec {

namespace {

using nlohmann::json;

json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mesh_json(const SurfaceMesh& mesh) {
  return {{"topology", to_string(mesh.topology())},
          {"provenance", mesh.provenance()},
          {"vertices", mesh.vertex_count()},
          {"triangles", mesh.triangle_count()},
          {"euler_characteristic", mesh.euler_characteristic()},
          {"max_reference_edge", mesh.max_reference_edge()}};
}

json document(const std::string& kind, const SurfaceMesh* mesh) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  if (mesh) j["mesh"] = mesh_json(*mesh);
  return j;
}

json spectrum_body(const SpectralSummary& s) {
  json clusters = json::array();
  for (const auto& c : s.clusters) {
    clusters.push_back({{"first", c.first}, {"size", c.size}, {"mean", c.mean}});
  }
  return {{"eigenvalues", vec_json(s.eigenvalues)},
          {"normalized", vec_json(normalized(s))},
          {"volume", s.volume},
          {"clusters", clusters},
          {"method", s.method},
          {"iterations", s.iterations},
          {"max_residual", s.max_residual}};
}

json vc_body(const ConformalVolumeEstimate& e) {
  json samples = json::array();
  for (const auto& s : e.samples) samples.push_back({{"xi", vec_json(s.xi)}, {"value", s.value}});
  return {{"estimate", e.value},
          {"argmax_xi", vec_json(e.argmax_xi.coords())},
          {"argmax_norm", e.argmax_xi.norm()},
          {"value_at_origin", e.value_at_origin},
          {"grid_min", e.grid_min()},
          {"grid_max", e.grid_max()},
          {"boundary_supremum", e.boundary_supremum},
          {"budget_exhausted", e.budget_exhausted},
          {"evaluations", e.evaluations},
          {"samples", samples}};
}

json cap_body(const CapSearchResult& r) {
  json landscape = json::array();
  for (const auto& s : r.landscape) {
    landscape.push_back({{"p", vec_json(s.p)}, {"t", s.t}, {"psi_norm", s.psi_norm}});
  }
  return {{"p", vec_json(r.cap.center().coords())},
          {"t", r.cap.t()},
          {"xi", vec_json(r.xi.coords())},
          {"psi_norm", r.psi_norm},
          {"tolerance", r.tolerance},
          {"success", r.success},
          {"mean_residual", r.mean_residual},
          {"moment_residual", vec_json(r.moment_residual)},
          {"evaluations", r.evaluations},
          {"landscape", landscape}};
}

json degree_body(const DegreeEstimate& d) {
  return {{"degree", d.degree}, {"raw", d.raw}, {"non_integral", d.non_integral}};
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

class Svg {
 public:
  Svg(int w, int h) : w_(w), h_(h) {}

  void rect(double x, double y, double w, double h, const std::string& fill) {
    body_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w) << "\" height=\""
          << fmt(h) << "\" fill=\"" << fill << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0) {
    body_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& fill) {
    body_ << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r) << "\" fill=\"" << fill
          << "\"/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) body_ << fmt(x) << "," << fmt(y) << " ";
    body_ << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12, const std::string& anchor = "start") {
    body_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\" font-size=\"" << size
          << "\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
  }
  std::string str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
        << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  int w_;
  int h_;
  std::ostringstream body_;
};

// Viridis-like ramp, s in [0, 1].
std::string ramp(double s) {
  s = std::clamp(s, 0.0, 1.0);
  const int r = static_cast<int>(68 + s * (253 - 68));
  const int g = static_cast<int>(1 + s * (231 - 1));
  const int b = static_cast<int>(84 + s * (37 - 84));
  std::ostringstream out;
  out << "rgb(" << r << "," << g << "," << b << ")";
  return out.str();
}

}  // namespace

std::string spectrum_json(const SurfaceMesh& mesh, const SpectralSummary& summary) {
  json j = document("spectrum", &mesh);
  j["spectrum"] = spectrum_body(summary);
  return j.dump(2) + "\n";
}

std::string conformal_volume_json(const SurfaceMesh& mesh, const ConformalVolumeEstimate& estimate) {
  json j = document("conformal-volume", &mesh);
  j["conformal_volume"] = vc_body(estimate);
  return j.dump(2) + "\n";
}

std::string cap_search_json(const SurfaceMesh& mesh, const CapSearchResult& result,
                            const std::optional<DegreeEstimate>& degree) {
  json j = document("cap-search", &mesh);
  j["cap_search"] = cap_body(result);
  j["hemisphere_degree"] = degree ? degree_body(*degree) : json(nullptr);
  return j.dump(2) + "\n";
}

std::string bound_json(const SurfaceMesh& mesh, const BoundRun& run) {
  const BoundReport& r = run.report;
  json j = document("verify-bound", &mesh);
  j["bound"] = {{"lambda2_fem", r.lambda2_fem},
                {"lambda2_bar_fem", r.lambda2_bar_fem},
                {"rayleigh_bound", r.rayleigh_bound},
                {"rayleigh_times_volume", r.rayleigh_bound * r.volume},
                {"trial_energy", r.trial_energy},
                {"folded_area", r.folded_area},
                {"vc_estimate", r.vc_estimate},
                {"theorem_rhs", r.theorem_rhs},
                {"volume", r.volume},
                {"projection_magnitude", r.projection_magnitude},
                {"mean_residual", r.mean_residual},
                {"moment_residual", r.moment_residual},
                {"folded", r.folded},
                {"chain_ok", r.chain_ok}};
  j["tolerances"] = {{"min_max_slack", kMinMaxSlack},
                     {"volume_slack", kVolumeSlack},
                     {"psi_tolerance", run.cap ? json(run.cap->tolerance) : json(nullptr)}};
  j["f1"] = {{"index", run.f1.index}, {"moment", vec_json(run.f1.moment)}, {"moment_norm", run.f1.moment.norm()}};
  j["spectrum"] = spectrum_body(run.spectrum);
  j["conformal_volume"] = vc_body(run.vc);
  j["cap_search"] = run.cap ? cap_body(*run.cap) : json(nullptr);
  j["hemisphere_degree"] = run.degree ? degree_body(*run.degree) : json(nullptr);
  if (run.split) {
    j["fold_split"] = {{"folded_energy", run.split->folded_energy},
                       {"twice_inside_energy", run.split->twice_inside_energy},
                       {"relative_gap", run.split->relative_gap}};
  } else {
    j["fold_split"] = nullptr;
  }
  if (run.table_bound) {
    j["table"] = {{"row", run.table_row},
                  {"lambda2_bar_bound", *run.table_bound},
                  {"margin", *run.table_bound - r.lambda2_bar_fem},
                  {"below", r.lambda2_bar_fem < *run.table_bound}};
  } else {
    j["table"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string table_json(const std::vector<TableRow>& rows, const std::vector<int>& genera) {
  json j = document("table", nullptr);
  json a = json::array();
  for (const auto& r : rows) {
    a.push_back({{"name", r.name},
                 {"m", r.m},
                 {"lambda1_bar_bound", r.lambda1_bar_bound},
                 {"lambda2_bar_bound", r.lambda2_bar_bound},
                 {"lambda1_formula", r.lambda1_formula},
                 {"lambda2_formula", r.lambda2_formula}});
  }
  j["rows"] = a;
  json g = json::array();
  for (int genus : genera) {
    g.push_back({{"genus", genus}, {"lambda1_bar_bound", genus_bound(genus, 1)},
                 {"lambda2_bar_bound", genus_bound(genus, 2)}});
  }
  j["genus_bounds"] = g;
  return j.dump(2) + "\n";
}

std::string table_csv(const std::vector<TableRow>& rows, const std::vector<int>& genera) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "name,m,lambda1_bar_bound,lambda2_bar_bound,lambda1_formula,lambda2_formula\n";
  for (const auto& r : rows) {
    out << r.name << ',' << r.m << ',' << r.lambda1_bar_bound << ',' << r.lambda2_bar_bound << ",\""
        << r.lambda1_formula << "\",\"" << r.lambda2_formula << "\"\n";
  }
  for (int genus : genera) {
    out << "genus " << genus << ",2," << genus_bound(genus, 1) << ',' << genus_bound(genus, 2)
        << ",\"8 pi floor((g+3)/2)\",\"16 pi floor((g+3)/2)\"\n";
  }
  return out.str();
}

std::string psi_landscape_svg(const CapSearchResult& result) {
  Svg svg(820, 360);
  svg.text(410, 22, "cap landscape |psi(p, t)|", 15, "middle");
  if (result.landscape.empty()) return svg.str();

  std::map<double, double> best_by_t;
  for (const auto& s : result.landscape) {
    auto it = best_by_t.find(s.t);
    if (it == best_by_t.end() || s.psi_norm < it->second) best_by_t[s.t] = s.psi_norm;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& s : result.landscape) {
    if (std::isfinite(s.psi_norm) && s.psi_norm > 0.0) {
      lo = std::min(lo, s.psi_norm);
      hi = std::max(hi, s.psi_norm);
    }
  }
  if (!(hi > lo)) hi = lo * 10.0 + 1e-300;
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);

  // Left: min over p of |psi| against t.
  const double x0 = 60, y0 = 50, w = 320, h = 260;
  svg.line(x0, y0 + h, x0 + w, y0 + h, "black");
  svg.line(x0, y0, x0, y0 + h, "black");
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : best_by_t) {
    const double y = y0 + h - h * (std::log10(std::max(v, lo)) - llo) / (lhi - llo);
    pts.emplace_back(x0 + w * t, y);
  }
  svg.polyline(pts, "steelblue");
  svg.text(x0 + w / 2, y0 + h + 30, "t", 12, "middle");
  svg.text(x0 - 8, y0 + 10, fmt(hi, 3), 10, "end");
  svg.text(x0 - 8, y0 + h, fmt(lo, 3), 10, "end");
  svg.text(x0 + w / 2, y0 - 8, "min over p of |psi| (log scale)", 12, "middle");

  // Right: directions of the best t-slice.
  double best_t = best_by_t.begin()->first;
  for (const auto& [t, v] : best_by_t) {
    if (v < best_by_t[best_t]) best_t = t;
  }
  const double x1 = 440, w1 = 340;
  svg.rect(x1, y0, w1, h, "#f4f4f4");
  for (const auto& s : result.landscape) {
    if (s.t != best_t) continue;
    const double az = std::atan2(s.p.size() > 1 ? s.p[1] : 0.0, s.p[0]);
    const double polar = std::acos(std::clamp(s.p[s.p.size() - 1], -1.0, 1.0));
    const double shade = std::isfinite(s.psi_norm) ? (std::log10(std::max(s.psi_norm, lo)) - llo) / (lhi - llo) : 1.0;
    svg.circle(x1 + w1 * (az + std::numbers::pi) / (2.0 * std::numbers::pi), y0 + h * polar / std::numbers::pi, 4.0,
               ramp(shade));
  }
  const Vec& p = result.cap.center().coords();
  const double az = std::atan2(p.size() > 1 ? p[1] : 0.0, p[0]);
  const double polar = std::acos(std::clamp(p[p.size() - 1], -1.0, 1.0));
  svg.circle(x1 + w1 * (az + std::numbers::pi) / (2.0 * std::numbers::pi), y0 + h * polar / std::numbers::pi, 6.0,
             "crimson");
  svg.text(x1 + w1 / 2, y0 - 8, "directions at t = " + fmt(best_t, 4) + " (dark = small)", 12, "middle");
  svg.text(x1 + w1 / 2, y0 + h + 30, "azimuth", 12, "middle");
  svg.text(410, y0 + h + 48, "found cap: t = " + fmt(result.cap.t(), 6) + ", |psi| = " + fmt(result.psi_norm, 3), 12,
           "middle");
  return svg.str();
}

std::string chain_svg(const BoundRun& run) {
  const BoundReport& r = run.report;
  std::vector<std::pair<std::string, double>> bars = {
      {"lambda2_bar (FEM)", r.lambda2_bar_fem},
      {"rayleigh x vol", r.rayleigh_bound * r.volume},
      {"trial energy", r.trial_energy},
      {"4 V_c estimate", r.theorem_rhs},
  };
  if (run.table_bound) bars.emplace_back("table bound (" + run.table_row + ")", *run.table_bound);
  double hi = 0.0;
  for (const auto& b : bars) hi = std::max(hi, b.second);
  Svg svg(720, 80 + 44 * static_cast<int>(bars.size()));
  svg.text(360, 24, std::string("inequality chain: ") + (r.chain_ok ? "ok" : "VIOLATED"), 15, "middle");
  const double x0 = 190, w = 460;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double y = 48 + 44.0 * static_cast<double>(i);
    svg.text(x0 - 10, y + 20, bars[i].first, 12, "end");
    svg.rect(x0, y + 6, w * bars[i].second / hi, 22, i == 0 ? "#c0504d" : "#4f81bd");
    svg.text(x0 + w * bars[i].second / hi + 6, y + 22, fmt(bars[i].second, 6), 11);
  }
  return svg.str();
}

}  // namespace confspec
