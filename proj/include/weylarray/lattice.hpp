#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylarray/core.hpp"

namespace weylarray {

/**
 * A Bravais or non-Bravais lattice, 3D-periodic (bulk) or 2D-periodic
 * (surface lattice with 3D site offsets). Direct vectors in units of a,
 * reciprocal in 1/a, with a_i . b_j = 2 pi delta_ij for the periodic pairs.
 * 2D lattices live in the y-z plane; the out-of-plane direction is x.
 */
struct LatticeGeometry {
  std::string name;
  int periodic_dim = 3;                // 3 (bulk) or 2 (surface)
  std::array<Vec3, 3> direct{};        // a_i; 2D lattices use the first two
  std::array<Vec3, 3> reciprocal{};    // b_i
  std::vector<Vec3> sublattice;        // delta_xi, reduced coords in [0,1)^dim

  int n_sublattices() const { return static_cast<int>(sublattice.size()); }
  double cell_volume() const;          // volume (3D) or area (2D)

  // Fold k into the first Brillouin zone by reciprocal translations.
  Vec3 reduce_to_bz(const Vec3& k) const;
};

LatticeGeometry bcc_lattice();
LatticeGeometry cub_lattice();

/// The square lattice of the (100)-cut slab: a1 = a e_y, a2 = a e_z.
LatticeGeometry surface_square_lattice();

/// High-symmetry vertices of the cubic bulk BZ, coordinates in pi/a units.
/// Gamma=(0,0,0), Z=(0,0,1), A=(1,1,1), M=(1,1,0), R=(0,1,1), X=(0,1,0).
const std::map<std::string, Vec3>& bulk_vertex_table();

/// Vertices of the square surface BZ (in-plane directions y,z):
/// Gamma=(0,0,0), Y=(0,1,0), Z=(0,0,1), M=(0,1,1).
const std::map<std::string, Vec3>& surface_vertex_table();

/**
 * A sampled path through named high-symmetry vertices.
 * Vertices are stored in pi/a units, flattened sample points in 1/a.
 */
struct KPath {
  std::vector<std::string> labels;
  std::vector<Vec3> vertices;       // pi/a units
  std::vector<Vec3> points;         // 1/a units
  std::vector<double> arc_length;   // cumulative, 1/a units
  std::vector<int> vertex_sample;   // sample index of each vertex
};

/// Equidistant sampling with `samples` points per segment including both
/// endpoints; shared endpoints appear exactly once globally. Degenerate
/// segments collapse. Throws std::invalid_argument on unknown labels.
KPath high_symmetry_path(const LatticeGeometry& lattice,
                         const std::vector<std::string>& labels, int samples);

/// Light-cone classifier: |k| < k0 (strict; the band-independent
/// omega ~ omega0 approximation). Boundary counts as outside.
bool in_light_cone(const Vec3& k, double k0a);
bool in_light_cone(const Vec2& k_par, double k0a);

} // namespace weylarray
