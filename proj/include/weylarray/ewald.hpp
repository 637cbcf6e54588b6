#pragma once

#include <stdexcept>
#include <utility>

#include "weylarray/lattice.hpp"

namespace weylarray {

/**
 * Ewald-split evaluation of the quasiperiodic dyadic Green's function sums
 *
 *   S(k, D) = sum_R G(D - R) e^{i k R},
 *
 * over 3D-periodic (bulk) or 2D-periodic (slab) lattices; the R = 0 term is
 * excluded when D = 0. The dyadic is generated by applying
 * (delta + grad grad / k0^2) to the scalar Ewald split analytically, term by
 * term, in both the spectral and spatial parts. The sublattice phase
 * prefactor e^{-ik(delta_xi - delta_xi')} of the Bloch blocks is applied by
 * the assembler, not here.
 */
struct EwaldConfig {
  double splitting = 0.0;      // 1/a units; 0 selects the automatic default
  int real_shells = 8;         // shell budget per linear dimension
  int spectral_shells = 12;
  double rel_tol = 1e-12;      // last-shell relative convergence target
  double singular_tol = 1e-8;  // diffraction-resonance guard on |q^2-k0^2|/k0^2
  bool diagnostics = false;    // re-evaluate at twice the splitting, report spread
};

/// Default splitting parameter sqrt(pi)/a, rescaled upward when the
/// exp(k0^2/4E^2) spectral prefactor would grow large.
double default_splitting(double k0a);

struct ConvergenceReport {
  double spread = 0.0;         // splitting-invariance spread (diagnostics mode)
                               // or the last-shell truncation bound otherwise
  int real_terms = 0;
  int spectral_terms = 0;
  double last_shell_real = 0.0;
  double last_shell_spectral = 0.0;
};

struct GreenLatticeSum {
  Mat3c value = Mat3c::Zero();
  Vec3 k = Vec3::Zero();       // 2D sums store (0, ky, kz)
  Vec3 offset = Vec3::Zero();
  int periodic_dim = 3;
  ConvergenceReport report;
};

class singular_configuration_error : public std::runtime_error {
 public:
  singular_configuration_error(const std::string& msg, const Vec3& g_)
      : std::runtime_error(msg), g(g_) {}
  Vec3 g;  // the offending reciprocal vector
};

class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double spread_)
      : std::runtime_error(msg), spread(spread_) {}
  double spread;
};

class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& msg, double last_shell_)
      : std::runtime_error(msg), last_shell(last_shell_) {}
  double last_shell;
};

GreenLatticeSum lattice_sum_3d(const LatticeGeometry& lattice, const Vec3& offset,
                               const Vec3& k, double k0a, const EwaldConfig& cfg = {});

GreenLatticeSum lattice_sum_2d(const LatticeGeometry& lattice, const Vec3& offset,
                               const Vec2& k_par, double k0a, const EwaldConfig& cfg = {});

/// S(k, +D) and S(k, -D) from a single pass over the shells (the Bloch
/// assembler needs both blocks of every sublattice pair). k is the full
/// 3-vector; for 2D lattices its x component must be zero.
std::pair<GreenLatticeSum, GreenLatticeSum>
lattice_sum_pair(const LatticeGeometry& lattice, const Vec3& offset, const Vec3& k,
                 double k0a, const EwaldConfig& cfg = {});

/**
 * Independent damped direct-sum oracle: brute-force shell-by-shell sum out
 * to max_radius, evaluated at complexified momentum k0(1 + i eta) so terms
 * decay as e^{-eta k0 r}. A cosine taper over the trailing `taper_window`
 * shells smooths the oscillatory tail (0 = sharp cutoff). The caller
 * extrapolates a sequence eta -> 0 to estimate the physical value.
 */
struct OracleResult {
  Mat3c value = Mat3c::Zero();
  double last_shell_abs = 0.0;   // max-element magnitude of the outermost shell
  long long terms = 0;
};

OracleResult direct_sum_oracle(const LatticeGeometry& lattice, const Vec3& offset,
                               const Vec3& k, double k0a, double eta,
                               double max_radius, double taper_window = 0.0,
                               double tail_tol = 0.0);

} // namespace weylarray
