#pragma once

#include "weylarray/bloch.hpp"

namespace weylarray {

struct WeylNode {
  Vec3 k_position = Vec3::Zero();  // units of pi/a
  double weyl_frequency = 0.0;     // (omega_W - omega0)/gamma_tilde0
  int chirality = 0;               // +-1 once computed, 0 otherwise
  double residual_gap = 0.0;       // achieved gap at the located point
  bool in_light_cone = false;
  bool isolated = false;
  double dos_window_count = -1.0;  // set by isolation_check
  int band_lower = -1;             // sorted index of the lower crossing band
};

struct WeylSearchOptions {
  enum class Mode { axis_restricted, full_3d };
  Mode mode = Mode::axis_restricted;
  Vec3 axis_base = Vec3::Zero();   // 1/a units; nodes move along base + t dir
  Vec3 axis_dir = Vec3(0, 0, 1);
  int scan_samples = 96;
  double gap_tol = 1e-4;           // gamma_tilde0 units
  int max_refine = 60;
  // a band pair degenerate along the whole scan line is not a Weyl crossing;
  // require its gap to open up to at least this much (gamma_tilde0) somewhere
  double min_median_gap = 1e-2;
  // full-3d validation mode
  int multistarts = 32;
  unsigned seed = 1234;
};

/// Gamma for BCC; the M point (the vertical M-A line hosts the CUB nodes).
Vec3 default_weyl_axis_base(const LatticeGeometry& lattice);

/**
 * Locate Weyl nodes. Axis-restricted mode scans the inter-band gap along
 * base + t dir for t in (0, pi], refines each isolated gap minimum by
 * golden-section search, and emits the mirror node at -t by symmetry.
 * An empty result means not-found (no exception).
 */
std::vector<WeylNode> find_weyl_nodes(const LatticeGeometry& lattice,
                                      const ArrayParams& params,
                                      const WeylSearchOptions& opts = {},
                                      const EwaldConfig& cfg = {});

class inconclusive_flux_error : public std::runtime_error {
 public:
  inconclusive_flux_error(const std::string& msg, double flux_over_2pi_)
      : std::runtime_error(msg), flux_over_2pi(flux_over_2pi_) {}
  double flux_over_2pi;
};

/**
 * Chirality by the discretized Berry flux of the lower crossing band over a
 * small sphere around the node (plaquette link variables on a
 * latitude-longitude mesh; pole rows share one eigenstate). Throws
 * inconclusive_flux_error when the flux is not within 0.1 of an integer.
 */
int chirality(const LatticeGeometry& lattice, const ArrayParams& params,
              const WeylNode& node, double sphere_radius = 0.1, int mesh_n = 20,
              const EwaldConfig& cfg = {});

/// Windowed state count around the node frequency; updates node.isolated
/// and node.dos_window_count. isolated <=> count <= threshold_frac * n_bands.
std::pair<bool, double> isolation_check(const LatticeGeometry& lattice,
                                        const ArrayParams& params, WeylNode& node,
                                        double window = 0.1, int grid_n = 16,
                                        double threshold_frac = 1e-3,
                                        const EwaldConfig& cfg = {}, int workers = 1);

} // namespace weylarray
