#pragma once

#include <complex>

namespace weylarray {

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz), valid for Im(z) >= 0.
/// Power series for small |z|, Laplace continued fraction otherwise.
std::complex<double> faddeeva_w(std::complex<double> z);

/// Scaled complementary error function e^{z^2} erfc(z).
/// For Re(z) < 0 the reflection formula is used; the e^{z^2} factor
/// overflows for Re(z) < -26, which callers must avoid.
std::complex<double> erfcx(std::complex<double> z);
double erfcx(double x);

/// Complementary error function for complex argument.
std::complex<double> erfc_c(std::complex<double> z);

} // namespace weylarray
