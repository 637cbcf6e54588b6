#include "weylarray/faddeeva.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace weylarray {

namespace {

using cplx = std::complex<double>;
constexpr double kInvSqrtPi = 0.5641895835477562869; // 1/sqrt(pi)

// 1/Gamma(n/2 + 1) for the Maclaurin series of w.
const std::array<double, 128>& inv_gamma_table() {
  static const std::array<double, 128> table = [] {
    std::array<double, 128> t{};
    for (int n = 0; n < 128; ++n) t[n] = 1.0 / std::tgamma(0.5 * n + 1.0);
    return t;
  }();
  return table;
}

// w(z) = sum_n (iz)^n / Gamma(n/2+1); converges everywhere, cancellation
// limits it to |z| <~ 3.
cplx w_series(cplx z) {
  const auto& ig = inv_gamma_table();
  const cplx iz = cplx(0.0, 1.0) * z;
  cplx term(1.0, 0.0);
  cplx sum(0.0, 0.0);
  for (int n = 0; n < 128; ++n) {
    const cplx c = term * ig[n];
    sum += c;
    if (n > 4 && std::abs(c) < 1e-18 * std::abs(sum)) break;
    term *= iz;
  }
  return sum;
}

// Trapezoid rule for w(z) = (i/pi) int e^{-t^2}/(z-t) dt with the pole
// residue restored; quadrature error O(e^{-pi^2/h^2}). Covers the mid-range
// band where the series cancels and the continued fraction is slow.
cplx w_trapezoid(cplx z) {
  double h = 0.5;
  // keep the real part away from the quadrature nodes
  if (std::abs(z.imag()) < 1e-12) {
    const double frac = std::abs(z.real() / h - std::round(z.real() / h));
    if (frac < 1e-6) h = 0.53;
  }
  const int nmax = static_cast<int>(std::ceil(6.5 / h));
  cplx sum(0.0, 0.0);
  for (int n = -nmax; n <= nmax; ++n)
    sum += std::exp(-n * n * h * h) / (z - n * h);
  cplx w = cplx(0.0, h / M_PI) * sum;
  const cplx pole = std::exp(cplx(0.0, -2.0 * M_PI / h) * z);
  w -= 2.0 * std::exp(-z * z) / (pole - 1.0);
  return w;
}

// Laplace continued fraction, modified Lentz iteration.
// w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
cplx w_contfrac(cplx z) {
  const double tiny = 1e-290;
  cplx f(tiny, 0.0);
  cplx C = f;
  cplx D(0.0, 0.0);
  for (int j = 1; j <= 300; ++j) {
    const cplx a = (j == 1) ? cplx(0.0, kInvSqrtPi) : cplx(-0.5 * (j - 1), 0.0);
    const cplx b = z;
    D = b + a * D;
    if (D == cplx(0.0, 0.0)) D = tiny;
    C = b + a / C;
    if (C == cplx(0.0, 0.0)) C = tiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  return f;
}

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() < 0.0)
    throw std::domain_error("faddeeva_w: argument must satisfy Im(z) >= 0");
  const double n2 = std::norm(z);
  if (n2 < 9.0) return w_series(z);
  if (n2 < 64.0) return w_trapezoid(z);
  return w_contfrac(z);
}

std::complex<double> erfcx(std::complex<double> z) {
  const cplx i(0.0, 1.0);
  if (z.real() >= 0.0) return faddeeva_w(i * z);
  return 2.0 * std::exp(z * z) - faddeeva_w(-i * z);
}

double erfcx(double x) {
  if (x >= 0.0) return faddeeva_w(std::complex<double>(0.0, x)).real();
  return 2.0 * std::exp(x * x) - erfcx(-x);
}

std::complex<double> erfc_c(std::complex<double> z) {
  if (z.real() >= 0.0) return std::exp(-z * z) * erfcx(z);
  return 2.0 - std::exp(-z * z) * erfcx(-z);
}

} // namespace weylarray
