#pragma once

#include <complex>

#include <Eigen/Dense>

namespace weylarray {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3c = Eigen::Matrix3cd;

/**
 * Physical parameters of the atomic array.
 *
 * Unit conventions used throughout the library:
 *   - lengths in units of the lattice constant a, momenta in 1/a,
 *   - rates in units of the single-atom decay gamma0,
 *   - frequencies as offsets from the transition frequency omega0,
 *     reported in units of gamma_tilde0 = gamma0/(k0 a)^3.
 * omega0 itself never enters the numerics except through k0 a.
 */
struct ArrayParams {
  double a_over_lambda;   // a / lambda0
  double zeeman_ratio;    // mu B / gamma_tilde0
  double k0a;             // 2 pi a/lambda0
  double gamma0 = 1.0;    // the global rate unit
  double gamma_tilde0;    // gamma0 / (k0 a)^3, cached

  ArrayParams(double a_over_lambda_, double zeeman_ratio_);

  // Zeeman splitting in gamma0 units.
  double muB_gamma0() const { return zeeman_ratio * gamma_tilde0; }
};

/**
 * Free-space electromagnetic dyadic Green's function at displacement r
 * (units of a, r != 0), keeping all near-, mid-, and far-field terms.
 * The delta-function contact term is excluded by contract: lattice sums
 * never evaluate the self displacement, and the on-site physics lives in
 * the Bloch assembler's diagonal block.
 *
 * Throws std::domain_error on zero displacement.
 */
Mat3c green_dyadic(const Vec3& r, double k0a);

/// Overload with complexified k0 (damped direct-sum oracle only).
Mat3c green_dyadic(const Vec3& r, cplx k0a);

/// Zeeman block i*muB*[[0,-1,0],[+1,0,0],[0,0,0]] in the {x,y,z} basis.
/// Hermitian and traceless; eigenvectors are the sigma-, pi, sigma+ states.
Mat3c zeeman_block(double muB);

} // namespace weylarray
