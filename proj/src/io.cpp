#include "weylarray/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace weylarray::io {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string csv_metadata(const std::string& config_hash) {
  std::ostringstream os;
  os << "# config_hash: " << config_hash << "\n# version: " << kVersion << "\n";
  return os.str();
}

std::string bands_csv(const std::vector<BandTableRow>& rows, const std::string& meta) {
  std::ostringstream os;
  os << meta << "s,band,omega,gamma,in_light_cone\n";
  for (const auto& r : rows)
    os << fmt(r.s) << ',' << r.band << ',' << fmt(r.omega) << ',' << fmt(r.gamma)
       << ',' << (r.in_light_cone ? 1 : 0) << '\n';
  return os.str();
}

std::string dos_csv(const DosHistogram& h, const std::string& meta) {
  std::ostringstream os;
  os << meta << "bin_center,density\n";
  for (size_t b = 0; b < h.counts.size(); ++b) {
    const double center = 0.5 * (h.bin_edges[b] + h.bin_edges[b + 1]);
    os << fmt(center) << ',' << fmt(h.counts[b] / h.bin_width) << '\n';
  }
  return os.str();
}

std::string contours_csv(const std::vector<ContourLine>& lines, const std::string& meta) {
  std::ostringstream os;
  os << meta << "contour_id,kx,ky,kz,band,W_x,W_y,W_z\n";
  int id = 0;
  for (const auto& line : lines) {
    for (const auto& v : line.vertices)
      os << id << ',' << fmt(v.k(0) / M_PI) << ',' << fmt(v.k(1) / M_PI) << ','
         << fmt(v.k(2) / M_PI) << ',' << line.band << ',' << fmt(v.W[0]) << ','
         << fmt(v.W[1]) << ',' << fmt(v.W[2]) << '\n';
    ++id;
  }
  return os.str();
}

std::string phase_diagram_csv(const PhaseDiagram& pd, const std::string& meta) {
  std::ostringstream os;
  os << meta
     << "a_over_lambda,muB,omega_W,dos_window_count,in_light_cone,isolated,ok,error\n";
  for (const auto& c : pd.cells)
    os << fmt(c.a_over_lambda) << ',' << fmt(c.muB) << ',' << fmt(c.omega_w) << ','
       << fmt(c.dos_near_weyl) << ',' << (c.weyl_in_light_cone ? 1 : 0) << ','
       << (c.isolated ? 1 : 0) << ',' << (c.ok ? 1 : 0) << ",\"" << c.error << "\"\n";
  return os.str();
}

std::string arcs_csv(const FermiArcResult& arcs, const std::string& meta) {
  std::ostringstream os;
  os << meta << "contour_id,kx,ky,kz,band,W_x,W_y,W_z,facet,gamma,closed\n";
  int id = 0;
  for (const auto& arc : arcs.arcs) {
    for (const auto& v : arc.vertices)
      os << id << ",0," << fmt(v.k(0) / M_PI) << ',' << fmt(v.k(1) / M_PI) << ','
         << arc.band << ',' << fmt(v.W[0]) << ',' << fmt(v.W[1]) << ',' << fmt(v.W[2])
         << ',' << facet_name(arc.facet) << ',' << fmt(v.gamma) << ','
         << (arc.closed ? 1 : 0) << '\n';
    ++id;
  }
  return os.str();
}

std::string slab_sites_csv(const SlabModel& slab, const std::string& meta) {
  std::ostringstream os;
  os << meta << "site,x,y,z\n";
  for (int i = 0; i < slab.n_sites(); ++i) {
    const Vec3& d = slab.lattice.sublattice[i];
    os << i + 1 << ',' << fmt(d(0)) << ',' << fmt(d(1)) << ',' << fmt(d(2)) << '\n';
  }
  return os.str();
}

namespace {

json meta_json(const std::string& config_hash) {
  return json{{"config_hash", config_hash}, {"version", kVersion}};
}

} // namespace

std::string bands_json(const std::vector<BandTableRow>& rows,
                       const std::string& config_hash) {
  json j;
  j["metadata"] = meta_json(config_hash);
  json data = json::array();
  for (const auto& r : rows)
    data.push_back({{"s", r.s},
                    {"k", {r.k(0) / M_PI, r.k(1) / M_PI, r.k(2) / M_PI}},
                    {"band", r.band},
                    {"omega", r.omega},
                    {"gamma", r.gamma},
                    {"in_light_cone", r.in_light_cone}});
  j["bands"] = std::move(data);
  return j.dump(1) + "\n";
}

std::string weyl_json(const std::vector<WeylNode>& nodes, double a_over_lambda,
                      double muB, const std::string& config_hash) {
  json j;
  j["metadata"] = meta_json(config_hash);
  j["a_over_lambda"] = a_over_lambda;
  j["muB_over_gamma_tilde"] = muB;
  j["found"] = !nodes.empty();
  json arr = json::array();
  for (const auto& n : nodes)
    arr.push_back({{"k_w", {n.k_position(0), n.k_position(1), n.k_position(2)}},
                   {"omega_w", n.weyl_frequency},
                   {"chirality", n.chirality},
                   {"residual_gap", n.residual_gap},
                   {"in_light_cone", n.in_light_cone},
                   {"isolated", n.isolated},
                   {"dos_window_count", n.dos_window_count}});
  j["nodes"] = std::move(arr);
  return j.dump(1) + "\n";
}

std::string phase_diagram_json(const PhaseDiagram& pd, const std::string& config_hash) {
  json j;
  j["metadata"] = meta_json(config_hash);
  j["a_grid"] = pd.a_grid;
  j["muB_grid"] = pd.muB_grid;
  j["window"] = pd.window;
  j["grid_n"] = pd.grid_n;
  j["threshold_frac"] = pd.threshold_frac;
  json cells = json::array();
  for (const auto& c : pd.cells)
    cells.push_back({{"a_over_lambda", c.a_over_lambda},
                     {"muB", c.muB},
                     {"ok", c.ok},
                     {"error", c.error},
                     {"omega_w", c.omega_w},
                     {"k_w", c.k_w},
                     {"dos_window_count", c.dos_near_weyl},
                     {"in_light_cone", c.weyl_in_light_cone},
                     {"isolated", c.isolated}});
  j["cells"] = std::move(cells);
  return j.dump(1) + "\n";
}

std::string error_json(const std::string& command, const std::string& type,
                       const std::string& message) {
  json j{{"command", command}, {"error_type", type}, {"message", message}};
  return j.dump(1) + "\n";
}

std::string convergence_report_json(const ConvergenceReport& rep) {
  json j{{"spread", rep.spread},
         {"real_terms", rep.real_terms},
         {"spectral_terms", rep.spectral_terms},
         {"last_shell_real", rep.last_shell_real},
         {"last_shell_spectral", rep.last_shell_spectral}};
  return j.dump(1) + "\n";
}

} // namespace weylarray::io
