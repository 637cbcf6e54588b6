#include "weylarray/core.hpp"

#include <cmath>
#include <stdexcept>

namespace weylarray {

ArrayParams::ArrayParams(double a_over_lambda_, double zeeman_ratio_)
    : a_over_lambda(a_over_lambda_), zeeman_ratio(zeeman_ratio_) {
  if (!(a_over_lambda > 0.0))
    throw std::invalid_argument("ArrayParams: a/lambda0 must be positive");
  k0a = 2.0 * M_PI * a_over_lambda;
  gamma_tilde0 = gamma0 / (k0a * k0a * k0a);
}

namespace {

template <typename K>
Mat3c green_impl(const Vec3& r, K k0) {
  const double rn = r.norm();
  if (rn <= 0.0)
    throw std::domain_error("green_dyadic: zero displacement (self-interaction "
                            "is handled by the on-site block)");
  const cplx i(0.0, 1.0);
  const cplx kr = cplx(k0) * rn;
  const cplx pref = std::exp(i * kr) / (4.0 * M_PI * rn);
  const cplx diag = 1.0 + i / kr - 1.0 / (kr * kr);
  const cplx rr = -1.0 - 3.0 * i / kr + 3.0 / (kr * kr);
  const Vec3 rhat = r / rn;
  Mat3c g = Mat3c::Zero();
  for (int a = 0; a < 3; ++a) {
    g(a, a) = pref * diag;
    for (int b = 0; b < 3; ++b) g(a, b) += pref * rr * rhat(a) * rhat(b);
  }
  return g;
}

} // namespace

Mat3c green_dyadic(const Vec3& r, double k0a) { return green_impl(r, k0a); }
Mat3c green_dyadic(const Vec3& r, cplx k0a) { return green_impl(r, k0a); }

Mat3c zeeman_block(double muB) {
  Mat3c h = Mat3c::Zero();
  const cplx i(0.0, 1.0);
  h(0, 1) = -i * muB;
  h(1, 0) = i * muB;
  return h;
}

} // namespace weylarray
