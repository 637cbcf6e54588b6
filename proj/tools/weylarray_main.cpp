#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "weylarray/io.hpp"
#include "weylarray/runconfig.hpp"

using namespace weylarray;

namespace {

LatticeGeometry make_lattice(const RunConfig& cfg) {
  return cfg.lattice == "cub" ? cub_lattice() : bcc_lattice();
}

std::string outpath(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

void run_bands(const RunConfig& cfg, int workers) {
  if (!cfg.bands) throw config_error("bands command requires a 'bands' config block");
  const auto lattice = make_lattice(cfg);
  const ArrayParams params(cfg.a_over_lambda, cfg.muB_over_gamma_tilde);
  const KPath path = high_symmetry_path(lattice, cfg.bands->path, cfg.bands->samples);
  const auto rows = band_structure(lattice, params, path, cfg.ewald, workers);
  io::write_file_atomic(outpath(cfg, "bands.csv"),
                        io::bands_csv(rows, io::csv_metadata(cfg.config_hash)));
  io::write_file_atomic(outpath(cfg, "bands.json"),
                        io::bands_json(rows, cfg.config_hash));
}

void run_dos(const RunConfig& cfg, int workers) {
  if (!cfg.dos) throw config_error("dos command requires a 'dos' config block");
  const auto lattice = make_lattice(cfg);
  const ArrayParams params(cfg.a_over_lambda, cfg.muB_over_gamma_tilde);
  const auto h = density_of_states(lattice, params, cfg.dos->grid_n,
                                   cfg.dos->bin_width, cfg.ewald, workers);
  io::write_file_atomic(outpath(cfg, "dos.csv"),
                        io::dos_csv(h, io::csv_metadata(cfg.config_hash)));
}

void run_contours(const RunConfig& cfg, int workers) {
  if (!cfg.contours)
    throw config_error("contours command requires a 'contours' config block");
  const auto lattice = make_lattice(cfg);
  const ArrayParams params(cfg.a_over_lambda, cfg.muB_over_gamma_tilde);
  const auto lines =
      equifrequency_contours(lattice, params, kx_equals_ky_plane(),
                             cfg.contours->frequencies, cfg.contours->grid_n,
                             cfg.ewald, workers);
  io::write_file_atomic(outpath(cfg, "contours.csv"),
                        io::contours_csv(lines, io::csv_metadata(cfg.config_hash)));
}

void run_weyl(const RunConfig& cfg, int workers) {
  if (!cfg.weyl) throw config_error("weyl command requires a 'weyl' config block");
  const auto lattice = make_lattice(cfg);
  const ArrayParams params(cfg.a_over_lambda, cfg.muB_over_gamma_tilde);
  WeylSearchOptions opts;
  opts.mode = cfg.weyl->mode == "full3d" ? WeylSearchOptions::Mode::full_3d
                                         : WeylSearchOptions::Mode::axis_restricted;
  opts.axis_base = default_weyl_axis_base(lattice);
  opts.scan_samples = cfg.weyl->scan_samples;
  opts.gap_tol = cfg.weyl->gap_tol;
  opts.seed = cfg.seed;
  auto nodes = find_weyl_nodes(lattice, params, opts, cfg.ewald);
  for (auto& node : nodes) {
    node.chirality = chirality(lattice, params, node, cfg.weyl->sphere_radius,
                               cfg.weyl->sphere_mesh, cfg.ewald);
    isolation_check(lattice, params, node, cfg.weyl->window, cfg.weyl->grid_n,
                    cfg.weyl->isolation_threshold, cfg.ewald, workers);
  }
  io::write_file_atomic(outpath(cfg, "weyl.json"),
                        io::weyl_json(nodes, cfg.a_over_lambda,
                                      cfg.muB_over_gamma_tilde, cfg.config_hash));
}

void run_phase_diagram(const RunConfig& cfg, int workers) {
  if (!cfg.phase_diagram)
    throw config_error("phase-diagram command requires a 'phase_diagram' config block");
  const auto lattice = make_lattice(cfg);
  const auto& blk = *cfg.phase_diagram;
  const auto pd = phase_diagram(lattice, blk.a_grid, blk.muB_grid, blk.grid_n,
                                blk.window, blk.threshold, cfg.ewald, workers);
  io::write_file_atomic(outpath(cfg, "phase_diagram.csv"),
                        io::phase_diagram_csv(pd, io::csv_metadata(cfg.config_hash)));
  io::write_file_atomic(outpath(cfg, "phase_diagram.json"),
                        io::phase_diagram_json(pd, cfg.config_hash));
}

void run_slab(const RunConfig& cfg, int workers) {
  if (!cfg.slab) throw config_error("slab command requires a 'slab' config block");
  const ArrayParams params(cfg.a_over_lambda, cfg.muB_over_gamma_tilde);
  const SlabModel slab = build_slab(cfg.slab->width);
  io::write_file_atomic(outpath(cfg, "slab_sites.csv"),
                        io::slab_sites_csv(slab, io::csv_metadata(cfg.config_hash)));

  const KPath path =
      high_symmetry_path(slab.lattice, cfg.slab->path, cfg.slab->samples);
  const auto rows = band_structure(slab.lattice, params, path, cfg.ewald, workers);
  io::write_file_atomic(outpath(cfg, "slab_bands.csv"),
                        io::bands_csv(rows, io::csv_metadata(cfg.config_hash)));

  // Fermi arcs at the bulk Weyl frequency of the matching configuration
  WeylSearchOptions wopts;
  const auto nodes = find_weyl_nodes(bcc_lattice(), params, wopts, cfg.ewald);
  if (nodes.empty())
    throw std::runtime_error("slab: no bulk Weyl node found for this configuration");
  FermiArcOptions aopts;
  aopts.grid_n = cfg.slab->grid_n;
  aopts.gamma_cutoff = cfg.slab->gamma_cutoff;
  aopts.edge_fraction = cfg.slab->edge_fraction;
  aopts.facet_threshold = cfg.slab->facet_threshold;
  aopts.workers = workers;
  const auto arcs =
      fermi_arcs(slab, params, nodes.front().weyl_frequency, aopts, cfg.ewald);
  io::write_file_atomic(outpath(cfg, "fermi_arcs.csv"),
                        io::arcs_csv(arcs, io::csv_metadata(cfg.config_hash)));
}

void run_diagnostics(const RunConfig& cfg) {
  const auto lattice = make_lattice(cfg);
  const ArrayParams params(cfg.a_over_lambda, cfg.muB_over_gamma_tilde);
  EwaldConfig ec = cfg.ewald;
  ec.diagnostics = true;
  const Vec3 d = lattice.n_sublattices() > 1 ? Vec3(0.5, 0.5, 0.5) : Vec3::Zero();
  const auto probe =
      lattice_sum_3d(lattice, d, Vec3(0.9, -1.3, 2.1), params.k0a, ec);
  io::write_file_atomic(outpath(cfg, "diagnostics.json"),
                        io::convergence_report_json(probe.report));
}

int dispatch(const std::string& command, const std::string& config_path, int workers,
             bool diagnostics) {
  RunConfig cfg;
  try {
    cfg = load_config_file(config_path);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (command == "bands") run_bands(cfg, workers);
    else if (command == "dos") run_dos(cfg, workers);
    else if (command == "contours") run_contours(cfg, workers);
    else if (command == "weyl") run_weyl(cfg, workers);
    else if (command == "phase-diagram") run_phase_diagram(cfg, workers);
    else if (command == "slab") run_slab(cfg, workers);
    if (diagnostics) run_diagnostics(cfg);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    try {
      io::write_file_atomic(outpath(cfg, "error.json"),
                            io::error_json(command, typeid(e).name(), e.what()));
    } catch (...) {
    }
    return 3;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"polaritonic band structure of 3D subwavelength atomic arrays"};
  app.require_subcommand(1);

  std::string config_path;
  int workers = 1;
  bool diagnostics = false;

  const std::vector<std::string> names = {"bands", "dos",           "contours",
                                          "weyl",  "phase-diagram", "slab"};
  std::string chosen;
  for (const auto& n : names) {
    auto* sub = app.add_subcommand(n);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--workers", workers, "worker thread count")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--diagnostics", diagnostics,
                  "also write Ewald convergence diagnostics");
    sub->callback([&chosen, n] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return dispatch(chosen, config_path, workers, diagnostics);
}
