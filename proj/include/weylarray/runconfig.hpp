#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylarray/ewald.hpp"

namespace weylarray {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BandsBlock {
  std::vector<std::string> path{"Gamma", "Z", "A", "M", "Gamma"};
  int samples = 40;
};

struct DosBlock {
  int grid_n = 16;
  double bin_width = 0.05;
};

struct ContoursBlock {
  std::vector<double> frequencies;
  int grid_n = 64;
};

struct WeylBlock {
  std::string mode = "axis";     // axis | full3d
  int scan_samples = 96;
  double gap_tol = 1e-4;
  double window = 0.1;
  int grid_n = 16;
  double isolation_threshold = 1e-3;
  double sphere_radius = 0.1;
  int sphere_mesh = 20;
};

struct PhaseDiagramBlock {
  std::vector<double> a_grid;
  std::vector<double> muB_grid;
  int grid_n = 12;
  double window = 0.1;
  double threshold = 1e-3;
};

struct SlabBlock {
  double width = 15.5;
  int grid_n = 48;
  std::vector<std::string> path{"Gamma", "Z", "M", "Y", "Gamma"};
  int samples = 40;
  double gamma_cutoff = 0.5;
  double edge_fraction = 1.0 / 3.0;
  double facet_threshold = 0.6;
};

/**
 * One run = one strict key-value config document (JSON). Unknown keys are
 * rejected everywhere so figure-reproduction recipes stay exact.
 */
struct RunConfig {
  std::string lattice = "bcc";   // bcc | cub
  double a_over_lambda = 0.0;
  double muB_over_gamma_tilde = 0.0;
  std::string output_dir = ".";
  unsigned seed = 12345;
  EwaldConfig ewald;

  std::optional<BandsBlock> bands;
  std::optional<DosBlock> dos;
  std::optional<ContoursBlock> contours;
  std::optional<WeylBlock> weyl;
  std::optional<PhaseDiagramBlock> phase_diagram;
  std::optional<SlabBlock> slab;

  std::string config_hash;       // FNV-1a of the canonical document
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

} // namespace weylarray
