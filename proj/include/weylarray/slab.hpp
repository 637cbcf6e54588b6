#pragma once

#include "weylarray/spectral.hpp"

namespace weylarray {

/**
 * The (100)-cut BCC slab: a 2D-periodic square lattice (a1 = a e_y,
 * a2 = a e_z) whose extended unit cell spans the transverse x direction.
 * Layers stack at spacing a/2 with alternating in-plane offsets (0,0) and
 * (a/2,a/2); sites are ordered by ascending x, so xi ~ 1 sits at the (-100)
 * facet and xi ~ M at (100). For half-integer w/a the site count is
 * M = 2 w/a - 1 (30 sites at w/a = 15.5).
 */
struct SlabModel {
  double width = 0.0;              // w/a
  LatticeGeometry lattice;         // 2D-periodic, sublattice = the site list
  double facet_minus_x = 0.0;      // x of the (-100) termination plane
  double facet_plus_x = 0.0;       // x of the (100) termination plane

  int n_sites() const { return lattice.n_sublattices(); }
};

/// Throws std::invalid_argument unless w/a is a positive multiple of 1/2.
SlabModel build_slab(double width);

std::vector<BandSolution> slab_bands(const SlabModel& slab, const ArrayParams& params,
                                     const std::vector<Vec3>& k_points,
                                     const EwaldConfig& cfg = {}, int workers = 1,
                                     bool with_vectors = false);

/// p_xi = sum_beta |c_{xi beta}|^2; sums to 1 for a unit-norm state.
Eigen::VectorXd localization_profile(const Eigen::VectorXcd& state);

enum class Facet { facet_100, facet_1bar00, bulk };
const char* facet_name(Facet f);

/// Sum of p_xi over the edge_fraction of sites nearest each facet;
/// the facet whose sum exceeds `threshold` wins, otherwise bulk.
Facet facet_classify(const Eigen::VectorXd& profile, double edge_fraction = 1.0 / 3.0,
                     double threshold = 0.6);

/// W_beta = sum_xi |c_{xi beta}|^2.
std::array<double, 3> polarization_weight(const Eigen::VectorXcd& state);

struct ArcVertex {
  Vec2 k;         // (k_y, k_z), 1/a
  double gamma;   // gamma0 units, nearest grid eigenstate
  std::array<double, 3> W{};
};

struct SurfaceArc {
  int band = 0;
  Facet facet = Facet::bulk;
  bool closed = false;
  std::vector<ArcVertex> vertices;
};

struct FermiArcOptions {
  int grid_n = 48;
  double gamma_cutoff = 0.5;       // gamma0 units; excludes superradiant bands
  double edge_fraction = 1.0 / 3.0;
  double facet_threshold = 0.6;
  int workers = 1;
};

struct FermiArcResult {
  double omega = 0.0;                     // the sampled frequency
  std::vector<SurfaceArc> arcs;           // facet-localized subradiant contours
  std::vector<Vec2> weyl_projections;     // bulk node projections, 1/a
};

/**
 * Equifrequency contours of the subradiant slab bands at omega (usually the
 * bulk Weyl frequency) over the surface BZ. Contour vertices carry the
 * nearest grid eigenstate's facet and polarization metadata; polylines are
 * split into facet-pure runs and bulk-like stretches are dropped.
 */
FermiArcResult fermi_arcs(const SlabModel& slab, const ArrayParams& params,
                          double omega, const FermiArcOptions& opts = {},
                          const EwaldConfig& cfg = {});

} // namespace weylarray
