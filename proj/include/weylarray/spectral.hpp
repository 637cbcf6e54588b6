#pragma once

#include "weylarray/bloch.hpp"
#include "weylarray/contour.hpp"

namespace weylarray {

struct BandTableRow {
  double s;        // arc-length along the path, 1/a
  Vec3 k;          // 1/a
  int band;
  double omega;    // (omega - omega0)/gamma_tilde0
  double gamma;    // gamma/gamma0
  bool in_light_cone;
};

std::vector<BandTableRow> band_structure(const LatticeGeometry& lattice,
                                         const ArrayParams& params, const KPath& path,
                                         const EwaldConfig& cfg = {}, int workers = 1);

/**
 * Histogram DOS over a uniform Gamma-centered grid of grid_n^3 points.
 * Counts are weighted 1/grid_n^3, so they integrate (sum) to the number of
 * bands; bin edges are aligned to multiples of bin_width.
 */
struct DosHistogram {
  std::vector<double> bin_edges;  // size nbins+1, gamma_tilde0 offsets
  std::vector<double> counts;     // normalized weights per bin
  int grid_n = 0;
  double bin_width = 0.0;

  double total() const;
};

DosHistogram density_of_states(const LatticeGeometry& lattice, const ArrayParams& params,
                               int grid_n, double bin_width,
                               const EwaldConfig& cfg = {}, int workers = 1);

/// All band frequencies over the Gamma-centered grid (grid_n^3 k-points).
std::vector<Eigen::VectorXd> bz_grid_frequencies(const LatticeGeometry& lattice,
                                                 const ArrayParams& params, int grid_n,
                                                 const EwaldConfig& cfg = {},
                                                 int workers = 1);

/// Normalized count of states inside the closed window [center +- width/2].
double window_state_count(const std::vector<Eigen::VectorXd>& grid_freqs,
                          double center, double width);

/// The Gamma-centered grid itself (components 2 pi j / N folded into the BZ).
std::vector<Vec3> gamma_centered_grid(const LatticeGeometry& lattice, int grid_n);

/**
 * A planar cut of the BZ for equifrequency contours, parameterized by
 * origin + u * u_dir + v * v_dir (all 1/a). When a direction spans a full
 * reciprocal period, torus flags identify the opposite edges.
 */
struct PlaneSpec {
  Vec3 origin = Vec3::Zero();
  Vec3 u_dir = Vec3(1, 0, 0);
  Vec3 v_dir = Vec3(0, 0, 1);
  double u_min = -M_PI, u_max = M_PI;
  double v_min = -M_PI, v_max = M_PI;
  bool torus_u = true, torus_v = true;
};

/// The k_x = k_y diagonal cut: u along (1,1,0)/sqrt(2), v along k_z.
/// One u-period of the cut spans u in [-sqrt(2) pi, sqrt(2) pi].
PlaneSpec kx_equals_ky_plane();

/// Surface-BZ square for 2D-periodic lattices (u = k_y, v = k_z).
PlaneSpec surface_bz_plane();

struct ContourVertex {
  Vec3 k;          // 1/a
  double u, v;     // plane coordinates
  double gamma;    // of the nearest grid eigenstate
  std::array<double, 3> W{};  // polarization weights of that state
};

struct ContourLine {
  int band = 0;
  double frequency = 0.0;
  bool closed = false;
  std::vector<ContourVertex> vertices;
};

std::vector<ContourLine> equifrequency_contours(const LatticeGeometry& lattice,
                                                const ArrayParams& params,
                                                const PlaneSpec& plane,
                                                const std::vector<double>& frequencies,
                                                int grid_n, const EwaldConfig& cfg = {},
                                                int workers = 1);

/// Shoelace area of a closed contour in plane coordinates.
double contour_area(const ContourLine& line);

struct PhaseDiagramCell {
  double a_over_lambda = 0.0;
  double muB = 0.0;            // gamma_tilde0 units
  bool ok = false;
  std::string error;
  double omega_w = 0.0;        // gamma_tilde0 offset
  double k_w = 0.0;            // |k_W| in pi/a units
  double dos_near_weyl = 0.0;  // normalized window count
  bool weyl_in_light_cone = false;
  bool isolated = false;
};

struct PhaseDiagram {
  std::vector<double> a_grid, muB_grid;
  std::vector<PhaseDiagramCell> cells;  // row-major, a outer, muB inner
  double window = 0.1;
  int grid_n = 0;
  double threshold_frac = 1e-3;

  const PhaseDiagramCell& cell(int ia, int imu) const {
    return cells[ia * muB_grid.size() + imu];
  }
};

/// Weyl-isolation sweep over (a/lambda0, muB/gamma_tilde0). Per-cell node
/// search failures are recorded in the cell, not fatal to the sweep.
PhaseDiagram phase_diagram(const LatticeGeometry& lattice,
                           const std::vector<double>& a_grid,
                           const std::vector<double>& muB_grid, int grid_n,
                           double window, double threshold_frac,
                           const EwaldConfig& cfg = {}, int workers = 1);

} // namespace weylarray
