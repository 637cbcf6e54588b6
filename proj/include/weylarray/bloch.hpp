#pragma once

#include "weylarray/ewald.hpp"

namespace weylarray {

/**
 * The effective Bloch Hamiltonian at quasimomentum k, in gamma0 units with
 * frequencies as offsets from omega0. Basis ordering:
 * (xi_1 x, xi_1 y, xi_1 z, ..., xi_M x, xi_M y, xi_M z).
 *
 * Diagonal blocks:  -i gamma0/2 I + h_Zeeman + h_II^(xi xi)
 * Off-diagonal:     h_II^(xi xi') = -(3 pi gamma0 / k0 a) e^{-ik.(d_xi - d_xi')}
 *                                   S(k, d_xi - d_xi')
 */
struct BlochMatrix {
  Eigen::MatrixXcd matrix;
  Vec3 k;
  LatticeGeometry lattice;
  ArrayParams params;
};

/**
 * Per-k eigendecomposition. Frequencies are (omega - omega0)/gamma_tilde0
 * sorted ascending, decay rates gamma/gamma0, coefficient columns unit-norm.
 */
struct BandSolution {
  Eigen::VectorXd frequencies;
  Eigen::VectorXd decay_rates;
  Eigen::MatrixXcd coefficients;

  int n_bands() const { return static_cast<int>(frequencies.size()); }
};

/// Assemble H_eff(k). For 2D-periodic lattices k must be in-plane (k_x = 0).
BlochMatrix assemble_bloch(const LatticeGeometry& lattice, const ArrayParams& params,
                           const Vec3& k, const EwaldConfig& cfg = {});

/// Full complex eigendecomposition; bands sorted by ascending Re. Degenerate
/// clusters (within 1e-9 gamma_tilde0) are ordered by descending leading
/// coefficient magnitudes for determinism.
BandSolution diagonalize(const BlochMatrix& bloch);

/// Eigenvalues only (faster; used by k-grid sweeps that discard vectors).
BandSolution solve_bands(const LatticeGeometry& lattice, const ArrayParams& params,
                         const Vec3& k, const EwaldConfig& cfg = {},
                         bool with_vectors = false);

} // namespace weylarray
