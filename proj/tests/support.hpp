#pragma once

#include <random>
#include <vector>

#include "weylarray/ewald.hpp"

// Shared test utilities. The oracle extrapolation lives here, on the test
// side, so the dual-route check stays independent of the Ewald path.
namespace testsupport {

using namespace weylarray;

// Richardson elimination for f(eta_0 / 2^j), j = 0..n-1.
inline Mat3c richardson(std::vector<Mat3c> f) {
  double fac = 2.0;
  while (f.size() > 1) {
    std::vector<Mat3c> next;
    for (size_t i = 0; i + 1 < f.size(); ++i)
      next.push_back((fac * f[i + 1] - f[i]) / (fac - 1.0));
    f = std::move(next);
    fac *= 2.0;
  }
  return f[0];
}

// Damped direct sums extrapolated eta -> 0. Radii scale like 1/eta with a
// Hann taper over the outer half so the oscillatory tail cancels.
inline Mat3c oracle_extrapolated(const LatticeGeometry& lattice, const Vec3& offset,
                                 const Vec3& k, double k0a,
                                 const std::vector<double>& etas, double radius_cap) {
  std::vector<Mat3c> f;
  for (double eta : etas) {
    const double radius = std::min(std::max(3.2 / (eta * k0a), 30.0), radius_cap);
    f.push_back(
        direct_sum_oracle(lattice, offset, k, k0a, eta, radius, radius / 2.0).value);
  }
  return richardson(std::move(f));
}

inline Mat3c oracle_extrapolated_3d(const LatticeGeometry& lattice, const Vec3& offset,
                                    const Vec3& k, double k0a) {
  return oracle_extrapolated(lattice, offset, k, k0a, {0.24, 0.12, 0.06, 0.03, 0.015},
                             345.0);
}

inline Mat3c oracle_extrapolated_2d(const LatticeGeometry& lattice, const Vec3& offset,
                                    const Vec3& k, double k0a) {
  return oracle_extrapolated(lattice, offset, k, k0a,
                             {0.24, 0.12, 0.06, 0.03, 0.015, 0.0075}, 900.0);
}

inline double rel_diff(const Mat3c& a, const Mat3c& b) {
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

// k uniform in the cubic BZ, outside the light cone (the damped oracle's
// conditional convergence is controlled there).
inline Vec3 random_k_outside_cone(std::mt19937_64& rng, double k0a) {
  std::uniform_real_distribution<double> uni(-M_PI, M_PI);
  for (;;) {
    const Vec3 k(uni(rng), uni(rng), uni(rng));
    if (k.norm() >= 1.5 * k0a) return k;
  }
}

} // namespace testsupport
