#include "weylarray/runconfig.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "weylarray/io.hpp"

namespace weylarray {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void get_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) {
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
      throw config_error(std::string("bad value for '") + key + "': " + e.what());
    }
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw config_error(std::string(what) + " must be positive");
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object");

  check_keys(j,
             {"lattice", "a_over_lambda", "muB_over_gamma_tilde", "output_dir",
              "seed", "ewald", "bands", "dos", "contours", "weyl", "phase_diagram",
              "slab"},
             "config root");

  RunConfig cfg;
  get_if(j, "lattice", cfg.lattice);
  if (cfg.lattice != "bcc" && cfg.lattice != "cub")
    throw config_error("lattice must be 'bcc' or 'cub'");
  if (!j.contains("a_over_lambda")) throw config_error("a_over_lambda is required");
  get_if(j, "a_over_lambda", cfg.a_over_lambda);
  require_positive(cfg.a_over_lambda, "a_over_lambda");
  get_if(j, "muB_over_gamma_tilde", cfg.muB_over_gamma_tilde);
  get_if(j, "output_dir", cfg.output_dir);
  get_if(j, "seed", cfg.seed);

  if (j.contains("ewald")) {
    const json& e = j.at("ewald");
    check_keys(e, {"splitting", "real_shells", "spectral_shells"}, "ewald");
    get_if(e, "splitting", cfg.ewald.splitting);
    get_if(e, "real_shells", cfg.ewald.real_shells);
    get_if(e, "spectral_shells", cfg.ewald.spectral_shells);
    if (cfg.ewald.splitting < 0.0) throw config_error("ewald.splitting must be >= 0");
    if (cfg.ewald.real_shells < 1 || cfg.ewald.spectral_shells < 1)
      throw config_error("ewald shell counts must be >= 1");
  }

  if (j.contains("bands")) {
    const json& b = j.at("bands");
    check_keys(b, {"path", "samples"}, "bands");
    BandsBlock blk;
    get_if(b, "path", blk.path);
    get_if(b, "samples", blk.samples);
    if (blk.samples < 2) throw config_error("bands.samples must be >= 2");
    cfg.bands = blk;
  }

  if (j.contains("dos")) {
    const json& d = j.at("dos");
    check_keys(d, {"grid_n", "bin_width"}, "dos");
    DosBlock blk;
    get_if(d, "grid_n", blk.grid_n);
    get_if(d, "bin_width", blk.bin_width);
    if (blk.grid_n < 4) throw config_error("dos.grid_n must be >= 4");
    require_positive(blk.bin_width, "dos.bin_width");
    cfg.dos = blk;
  }

  if (j.contains("contours")) {
    const json& c = j.at("contours");
    check_keys(c, {"frequencies", "grid_n"}, "contours");
    ContoursBlock blk;
    get_if(c, "frequencies", blk.frequencies);
    get_if(c, "grid_n", blk.grid_n);
    if (blk.frequencies.empty()) throw config_error("contours.frequencies is required");
    if (blk.grid_n < 8) throw config_error("contours.grid_n must be >= 8");
    cfg.contours = blk;
  }

  if (j.contains("weyl")) {
    const json& w = j.at("weyl");
    check_keys(w,
               {"mode", "scan_samples", "gap_tol", "window", "grid_n",
                "isolation_threshold", "sphere_radius", "sphere_mesh"},
               "weyl");
    WeylBlock blk;
    get_if(w, "mode", blk.mode);
    if (blk.mode != "axis" && blk.mode != "full3d")
      throw config_error("weyl.mode must be 'axis' or 'full3d'");
    get_if(w, "scan_samples", blk.scan_samples);
    get_if(w, "gap_tol", blk.gap_tol);
    get_if(w, "window", blk.window);
    get_if(w, "grid_n", blk.grid_n);
    get_if(w, "isolation_threshold", blk.isolation_threshold);
    get_if(w, "sphere_radius", blk.sphere_radius);
    get_if(w, "sphere_mesh", blk.sphere_mesh);
    require_positive(blk.gap_tol, "weyl.gap_tol");
    require_positive(blk.window, "weyl.window");
    cfg.weyl = blk;
  }

  if (j.contains("phase_diagram")) {
    const json& p = j.at("phase_diagram");
    check_keys(p, {"a_grid", "muB_grid", "grid_n", "window", "threshold"},
               "phase_diagram");
    PhaseDiagramBlock blk;
    get_if(p, "a_grid", blk.a_grid);
    get_if(p, "muB_grid", blk.muB_grid);
    get_if(p, "grid_n", blk.grid_n);
    get_if(p, "window", blk.window);
    get_if(p, "threshold", blk.threshold);
    if (blk.a_grid.empty() || blk.muB_grid.empty())
      throw config_error("phase_diagram.a_grid and muB_grid are required");
    for (double a : blk.a_grid) require_positive(a, "phase_diagram.a_grid entries");
    cfg.phase_diagram = blk;
  }

  if (j.contains("slab")) {
    const json& s = j.at("slab");
    check_keys(s,
               {"width", "grid_n", "path", "samples", "gamma_cutoff",
                "edge_fraction", "facet_threshold"},
               "slab");
    SlabBlock blk;
    get_if(s, "width", blk.width);
    get_if(s, "grid_n", blk.grid_n);
    get_if(s, "path", blk.path);
    get_if(s, "samples", blk.samples);
    get_if(s, "gamma_cutoff", blk.gamma_cutoff);
    get_if(s, "edge_fraction", blk.edge_fraction);
    get_if(s, "facet_threshold", blk.facet_threshold);
    require_positive(blk.width, "slab.width");
    cfg.slab = blk;
  }

  std::ostringstream canonical;
  canonical << j.dump();  // nlohmann sorts object keys
  cfg.config_hash = [&] {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(io::fnv1a(canonical.str())));
    return std::string(buf);
  }();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

} // namespace weylarray
