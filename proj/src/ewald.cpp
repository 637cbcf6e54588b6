#include "weylarray/ewald.hpp"

#include <cmath>

#include "weylarray/faddeeva.hpp"

namespace weylarray {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
const cplx II(0.0, 1.0);

// Real-space screened dipole coefficients at scalar distance r:
//   D_phi(u) = A(r) I + B(r) uhat uhat^T
// from phi(r) = [F+ + F-]/(8 pi r), F± = e^{±ik0 r} erfc(E r ± i k0/2E),
// evaluated in the scaled form F± = P0 erfcx(E r ± i k0/2E).
struct ScreenedDipole {
  double k0, E, pref;   // pref = exp(k0^2/4E^2)
  cplx zshift;          // i k0 / 2E

  ScreenedDipole(double k0_, double E_)
      : k0(k0_), E(E_), pref(std::exp(k0_ * k0_ / (4.0 * E_ * E_))),
        zshift(0.0, k0_ / (2.0 * E_)) {}

  void coeffs(double r, cplx& A, cplx& B) const {
    const double P0 = pref * std::exp(-E * E * r * r);
    if (P0 < 1e-280) { A = B = 0.0; return; }
    const cplx Fp = P0 * erfcx(cplx(E * r, 0.0) + zshift);
    const cplx Fm = P0 * erfcx(cplx(E * r, 0.0) - zshift);
    const cplx P = Fp + Fm;
    const cplx Q = Fp - Fm;
    const double C = 2.0 * E / kSqrtPi * P0;
    const double r2 = r * r, r3 = r2 * r;
    const cplx phi = P / (8.0 * M_PI * r);
    const cplx dphi = (II * k0 * Q - 2.0 * C) / (8.0 * M_PI * r) - P / (8.0 * M_PI * r2);
    const cplx d2phi = (-k0 * k0 * P + 4.0 * E * E * r * C) / (8.0 * M_PI * r)
                       - 2.0 * (II * k0 * Q - 2.0 * C) / (8.0 * M_PI * r2)
                       + 2.0 * P / (8.0 * M_PI * r3);
    A = phi + dphi / (k0 * k0 * r);
    B = (d2phi - dphi / r) / (k0 * k0);
  }
};

// Analytic limit of the smooth (spectral-side) part at the origin; subtracted
// when the D = 0 sum excludes its R = 0 term. Its imaginary part k0/(6 pi)
// carries the free-space radiation that cancels the on-site -i gamma0/2.
Mat3c self_term(double k0, double E) {
  const cplx w0 = erfc_c(cplx(0.0, -k0 / (2.0 * E)));
  const double C = 2.0 * E / kSqrtPi * std::exp(k0 * k0 / (4.0 * E * E));
  const cplx c0 = (II * k0 * w0 + C) / (4.0 * M_PI);
  const cplx w3 = -II * k0 * k0 * k0 * w0 - (k0 * k0 + 2.0 * E * E) * C;
  const cplx c2 = w3 / (24.0 * M_PI);
  return (c0 + 2.0 * c2 / (k0 * k0)) * Mat3c::Identity();
}

// Out-of-plane spectral profile of the 2D split: J(d), J'(d), J''(d) with
// kappa^2 = k0^2 - |q|^2 (real). Branches arranged so no factor overflows.
struct SpectralProfile {
  cplx J, dJ, d2J;
};

SpectralProfile profile_2d(double d_signed, double kappa2, double E) {
  const double d = std::abs(d_signed);
  const double sgn = (d_signed < 0.0) ? -1.0 : 1.0;
  const double expo = kappa2 / (4.0 * E * E) - E * E * d * d;
  const double P2 = (expo > -700.0) ? std::exp(expo) : 0.0;
  cplx up, um, kappa;
  if (kappa2 > 0.0) {  // propagating diffraction order
    const double kr = std::sqrt(kappa2);
    kappa = kr;
    um = P2 * erfcx(cplx(E * d, -kr / (2.0 * E)));
    if (d > 0.0)
      up = 2.0 * std::exp(II * kr * d) - P2 * erfcx(cplx(E * d, kr / (2.0 * E)));
    else
      up = P2 * erfcx(cplx(0.0, -kr / (2.0 * E)));
  } else {             // evanescent
    const double k2 = std::sqrt(-kappa2);
    kappa = cplx(0.0, k2);
    um = P2 * erfcx(E * d + k2 / (2.0 * E));
    const double s = k2 / (2.0 * E) - E * d;
    if (s >= 0.0)
      up = P2 * erfcx(s);
    else
      up = 2.0 * std::exp(-k2 * d) - P2 * erfcx(-s);
  }
  SpectralProfile p;
  p.J = II / (4.0 * kappa) * (up + um);
  p.dJ = sgn * (-(up - um) / 4.0);
  p.d2J = -kappa2 * p.J - E / kSqrtPi * P2;
  return p;
}

struct PairAccum {
  Mat3c plus = Mat3c::Zero();
  Mat3c minus = Mat3c::Zero();
  double scale() const {
    return std::max(plus.cwiseAbs().maxCoeff(), minus.cwiseAbs().maxCoeff());
  }
};

// Iterate integer vectors with Chebyshev norm == s in `dim` dimensions.
template <typename F>
void for_shell(int s, int dim, F&& fn) {
  if (s == 0) {
    fn(0, 0, 0);
    return;
  }
  if (dim == 2) {
    for (int n1 = -s; n1 <= s; ++n1)
      for (int n2 = -s; n2 <= s; ++n2)
        if (std::max(std::abs(n1), std::abs(n2)) == s) fn(n1, n2, 0);
  } else {
    for (int n1 = -s; n1 <= s; ++n1)
      for (int n2 = -s; n2 <= s; ++n2)
        for (int n3 = -s; n3 <= s; ++n3)
          if (std::max({std::abs(n1), std::abs(n2), std::abs(n3)}) == s)
            fn(n1, n2, n3);
  }
}

struct EwaldTotals {
  PairAccum sum;
  ConvergenceReport report;
};

EwaldTotals ewald_eval(const LatticeGeometry& lattice, const Vec3& offset,
                       const Vec3& k_red, double k0, double E,
                       const EwaldConfig& cfg) {
  const int dim = lattice.periodic_dim;
  const double vol = lattice.cell_volume();
  const bool self = offset.norm() < 1e-12;
  EwaldTotals out;
  PairAccum& S = out.sum;

  // --- spectral sum ---
  int quiet = 0;
  bool converged = false;
  for (int s = 0; s <= cfg.spectral_shells; ++s) {
    double shell_max = 0.0;
    for_shell(s, dim, [&](int m1, int m2, int m3) {
      const Vec3 g = m1 * lattice.reciprocal[0] + m2 * lattice.reciprocal[1] +
                     m3 * lattice.reciprocal[2];
      const Vec3 q = k_red + g;
      const double q2 = q.squaredNorm();
      if (dim == 3) {
        const double denom = q2 - k0 * k0;
        if (std::abs(denom) < cfg.singular_tol * k0 * k0)
          throw singular_configuration_error(
              "diffraction resonance |k+g| = k0 in 3D spectral sum", g);
        const double expo = (k0 * k0 - q2) / (4.0 * E * E);
        if (expo < -700.0) return;
        const double coeff = std::exp(expo) / (denom * vol);
        const cplx ph = std::exp(II * q.dot(offset));
        double mx = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            const double mat = (a == b ? 1.0 : 0.0) - q(a) * q(b) / (k0 * k0);
            const cplx t = coeff * mat * ph;
            S.plus(a, b) += t;
            S.minus(a, b) += coeff * mat * std::conj(ph);
            mx = std::max(mx, std::abs(t));
          }
        shell_max = std::max(shell_max, mx);
        out.report.spectral_terms++;
      } else {
        const double kappa2 = k0 * k0 - q2;
        if (std::abs(kappa2) < cfg.singular_tol * k0 * k0)
          throw singular_configuration_error(
              "Rayleigh-Wood anomaly |k_par+g| = k0 in 2D spectral sum", g);
        const SpectralProfile p = profile_2d(offset(0), kappa2, E);
        const cplx ph = std::exp(II * (q(1) * offset(1) + q(2) * offset(2)));
        Mat3c M = Mat3c::Zero();
        const double ik2 = 1.0 / (k0 * k0);
        M(0, 0) = p.J + p.d2J * ik2;
        M(1, 1) = p.J - q(1) * q(1) * p.J * ik2;
        M(2, 2) = p.J - q(2) * q(2) * p.J * ik2;
        M(0, 1) = M(1, 0) = II * q(1) * p.dJ * ik2;
        M(0, 2) = M(2, 0) = II * q(2) * p.dJ * ik2;
        M(1, 2) = M(2, 1) = -q(1) * q(2) * p.J * ik2;
        Mat3c Mm = M;
        Mm(0, 1) = Mm(1, 0) = -M(0, 1);
        Mm(0, 2) = Mm(2, 0) = -M(0, 2);
        S.plus += ph * M / vol;
        S.minus += std::conj(ph) * Mm / vol;
        shell_max = std::max(shell_max, (M.cwiseAbs().maxCoeff()) / vol);
        out.report.spectral_terms++;
      }
    });
    out.report.last_shell_spectral = shell_max;
    const double scale = std::max(S.scale(), 1e-30);
    if (s >= 1 && shell_max <= cfg.rel_tol * scale) {
      if (++quiet >= 2) { converged = true; break; }
    } else {
      quiet = 0;
    }
  }
  if (!converged) {
    const double spread = out.report.last_shell_spectral / std::max(S.scale(), 1e-30);
    if (spread > cfg.rel_tol * 10.0)
      throw convergence_error("spectral Ewald sum not converged within shell budget", spread);
  }

  // --- real-space sum ---
  const ScreenedDipole sd(k0, E);
  quiet = 0;
  converged = false;
  for (int s = 0; s <= cfg.real_shells; ++s) {
    double shell_max = 0.0;
    for_shell(s, dim, [&](int n1, int n2, int n3) {
      const Vec3 R = n1 * lattice.direct[0] + n2 * lattice.direct[1] +
                     n3 * lattice.direct[2];
      const Vec3 u = offset - R;
      const double r = u.norm();
      if (r < 1e-12) return;  // R = 0 of the D = 0 sum: excluded self term
      cplx A, B;
      sd.coeffs(r, A, B);
      if (A == cplx(0.0) && B == cplx(0.0)) return;
      const Vec3 uh = u / r;
      const cplx ph = std::exp(II * k_red.dot(R));
      double mx = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const cplx d = (a == b ? A : cplx(0.0)) + B * uh(a) * uh(b);
          S.plus(a, b) += d * ph;
          S.minus(a, b) += d * std::conj(ph);
          mx = std::max(mx, std::abs(d));
        }
      shell_max = std::max(shell_max, mx);
      out.report.real_terms++;
    });
    out.report.last_shell_real = shell_max;
    const double scale = std::max(S.scale(), 1e-30);
    if (s >= 1 && shell_max <= cfg.rel_tol * scale) {
      if (++quiet >= 2) { converged = true; break; }
    } else {
      quiet = 0;
    }
  }
  if (!converged) {
    const double spread = out.report.last_shell_real / std::max(S.scale(), 1e-30);
    if (spread > cfg.rel_tol * 10.0)
      throw convergence_error("real-space Ewald sum not converged within shell budget", spread);
  }

  if (self) {
    const Mat3c st = self_term(k0, E);
    S.plus -= st;
    S.minus -= st;
  }
  return out;
}

} // namespace

double default_splitting(double k0a) {
  return std::max(kSqrtPi, k0a / 10.0);
}

std::pair<GreenLatticeSum, GreenLatticeSum>
lattice_sum_pair(const LatticeGeometry& lattice, const Vec3& offset, const Vec3& k,
                 double k0a, const EwaldConfig& cfg) {
  const double E = cfg.splitting > 0.0 ? cfg.splitting : default_splitting(k0a);
  const Vec3 k_red = lattice.reduce_to_bz(k);
  EwaldTotals t = ewald_eval(lattice, offset, k_red, k0a, E, cfg);

  ConvergenceReport rep = t.report;
  if (cfg.diagnostics) {
    EwaldConfig c2 = cfg;
    c2.diagnostics = false;
    EwaldTotals t2 = ewald_eval(lattice, offset, k_red, k0a, 2.0 * E, c2);
    const double scale = std::max(t.sum.scale(), 1e-30);
    rep.spread = (t2.sum.plus - t.sum.plus).cwiseAbs().maxCoeff() / scale;
  } else {
    rep.spread = std::max(rep.last_shell_real, rep.last_shell_spectral) /
                 std::max(t.sum.scale(), 1e-30);
  }

  GreenLatticeSum plus, minus;
  plus.value = t.sum.plus;
  plus.k = k;
  plus.offset = offset;
  plus.periodic_dim = lattice.periodic_dim;
  plus.report = rep;
  minus = plus;
  minus.value = t.sum.minus;
  minus.offset = -offset;
  return {plus, minus};
}

GreenLatticeSum lattice_sum_3d(const LatticeGeometry& lattice, const Vec3& offset,
                               const Vec3& k, double k0a, const EwaldConfig& cfg) {
  if (lattice.periodic_dim != 3)
    throw std::invalid_argument("lattice_sum_3d: lattice is not 3D-periodic");
  return lattice_sum_pair(lattice, offset, k, k0a, cfg).first;
}

GreenLatticeSum lattice_sum_2d(const LatticeGeometry& lattice, const Vec3& offset,
                               const Vec2& k_par, double k0a, const EwaldConfig& cfg) {
  if (lattice.periodic_dim != 2)
    throw std::invalid_argument("lattice_sum_2d: lattice is not 2D-periodic");
  const Vec3 k(0.0, k_par(0), k_par(1));
  return lattice_sum_pair(lattice, offset, k, k0a, cfg).first;
}

OracleResult direct_sum_oracle(const LatticeGeometry& lattice, const Vec3& offset,
                               const Vec3& k, double k0a, double eta,
                               double max_radius, double taper_window,
                               double tail_tol) {
  if (!(eta > 0.0)) throw std::invalid_argument("direct_sum_oracle: eta must be > 0");
  const cplx k0c = k0a * cplx(1.0, eta);
  const int dim = lattice.periodic_dim;
  const int N = static_cast<int>(std::ceil(max_radius));
  const double rmax2 = max_radius * max_radius;
  const double taper_r0 = max_radius - taper_window;

  // per-axis Bloch phase tables: e^{i k . a_j n}
  std::array<std::vector<cplx>, 3> ph;
  for (int j = 0; j < dim; ++j) {
    ph[j].resize(2 * N + 1);
    const double kd = k.dot(lattice.direct[j]);
    for (int n = -N; n <= N; ++n) ph[j][n + N] = std::exp(II * (kd * n));
  }

  Mat3c S = Mat3c::Zero();
  double last_shell = 0.0;
  long long terms = 0;
  const int n3max = (dim == 3) ? N : 0;
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -n3max; n3 <= n3max; ++n3) {
        Vec3 R = n1 * lattice.direct[0] + n2 * lattice.direct[1];
        if (dim == 3) R += n3 * lattice.direct[2];
        const double Rn2 = R.squaredNorm();
        if (Rn2 > rmax2) continue;
        const Vec3 u = offset - R;
        const double rn = u.norm();
        if (rn < 1e-12) continue;
        const cplx kr = k0c * rn;
        const cplx pref = std::exp(II * kr) / (4.0 * M_PI * rn);
        const cplx diag = 1.0 + II / kr - 1.0 / (kr * kr);
        const cplx rr = -1.0 - 3.0 * II / kr + 3.0 / (kr * kr);
        cplx phase = ph[0][n1 + N] * ph[1][n2 + N];
        if (dim == 3) phase *= ph[2][n3 + N];
        const double Rn = std::sqrt(Rn2);
        double w = 1.0;
        if (taper_window > 0.0 && Rn > taper_r0)
          w = 0.5 * (1.0 + std::cos(M_PI * (Rn - taper_r0) / taper_window));
        const cplx c = pref * phase * w;
        const Vec3 uh = u / rn;
        for (int a = 0; a < 3; ++a) {
          S(a, a) += c * diag;
          for (int b = 0; b < 3; ++b) S(a, b) += c * rr * uh(a) * uh(b);
        }
        if (Rn > max_radius - 1.0)
          last_shell = std::max(last_shell,
                                std::abs(pref) * (std::abs(diag) + std::abs(rr)));
        ++terms;
      }

  if (tail_tol > 0.0 && last_shell > tail_tol)
    throw truncation_error("direct_sum_oracle: cutoff too small for requested eta",
                           last_shell);
  OracleResult res;
  res.value = S;
  res.last_shell_abs = last_shell;
  res.terms = terms;
  return res;
}

} // namespace weylarray
