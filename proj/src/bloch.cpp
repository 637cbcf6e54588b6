#include "weylarray/bloch.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace weylarray {

namespace {
const cplx II(0.0, 1.0);
} // namespace

BlochMatrix assemble_bloch(const LatticeGeometry& lattice, const ArrayParams& params,
                           const Vec3& k, const EwaldConfig& cfg) {
  const int M = lattice.n_sublattices();
  const int N = 3 * M;
  const double pref = -3.0 * M_PI / params.k0a;  // gamma0 units
  BlochMatrix bm{Eigen::MatrixXcd::Zero(N, N), k, lattice, params};

  // identical species: one on-site + self-sum block shared by every sublattice
  const Mat3c s_diag =
      lattice_sum_pair(lattice, Vec3::Zero(), k, params.k0a, cfg).first.value;
  const Mat3c h_diag = -II * 0.5 * params.gamma0 * Mat3c::Identity() +
                       zeeman_block(params.muB_gamma0()) + pref * s_diag;
  for (int xi = 0; xi < M; ++xi) bm.matrix.block<3, 3>(3 * xi, 3 * xi) = h_diag;

  for (int xi = 0; xi < M; ++xi)
    for (int xj = xi + 1; xj < M; ++xj) {
      const Vec3 d = lattice.sublattice[xi] - lattice.sublattice[xj];
      auto [sp, sm] = lattice_sum_pair(lattice, d, k, params.k0a, cfg);
      bm.matrix.block<3, 3>(3 * xi, 3 * xj) =
          pref * std::exp(-II * k.dot(d)) * sp.value;
      bm.matrix.block<3, 3>(3 * xj, 3 * xi) =
          pref * std::exp(II * k.dot(d)) * sm.value;
    }
  return bm;
}

namespace {

BandSolution sort_solution(const Eigen::VectorXcd& evals, const Eigen::MatrixXcd& evecs,
                           double k0a, bool with_vectors) {
  const int N = static_cast<int>(evals.size());
  const double to_tilde = k0a * k0a * k0a;  // gamma0 -> gamma_tilde0

  std::vector<int> idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return evals(a).real() < evals(b).real();
  });

  if (with_vectors) {
    // deterministic ordering inside near-degenerate clusters
    const double cluster_tol = 1e-9 / to_tilde;  // 1e-9 gamma_tilde0, in gamma0
    auto amp_less = [&](int a, int b) {
      for (int r = 0; r < N; ++r) {
        const double va = std::abs(evecs(r, a)), vb = std::abs(evecs(r, b));
        if (std::abs(va - vb) > 1e-12) return va > vb;  // descending
      }
      return false;
    };
    int lo = 0;
    while (lo < N) {
      int hi = lo + 1;
      while (hi < N &&
             evals(idx[hi]).real() - evals(idx[lo]).real() < cluster_tol)
        ++hi;
      std::stable_sort(idx.begin() + lo, idx.begin() + hi, amp_less);
      lo = hi;
    }
  }

  BandSolution sol;
  sol.frequencies.resize(N);
  sol.decay_rates.resize(N);
  if (with_vectors) sol.coefficients.resize(N, N);
  for (int j = 0; j < N; ++j) {
    const cplx e = evals(idx[j]);
    sol.frequencies(j) = e.real() * to_tilde;
    sol.decay_rates(j) = -2.0 * e.imag();
    if (with_vectors) {
      Eigen::VectorXcd v = evecs.col(idx[j]);
      sol.coefficients.col(j) = v / v.norm();
    }
  }
  return sol;
}

} // namespace

BandSolution diagonalize(const BlochMatrix& bloch) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(bloch.matrix, true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(
        "diagonalize: eigensolver failed to converge (matrix norm " +
        std::to_string(bloch.matrix.norm()) + ")");
  return sort_solution(solver.eigenvalues(), solver.eigenvectors(),
                       bloch.params.k0a, true);
}

BandSolution solve_bands(const LatticeGeometry& lattice, const ArrayParams& params,
                         const Vec3& k, const EwaldConfig& cfg, bool with_vectors) {
  const BlochMatrix bm = assemble_bloch(lattice, params, k, cfg);
  if (with_vectors) return diagonalize(bm);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(bm.matrix, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(
        "solve_bands: eigensolver failed to converge (matrix norm " +
        std::to_string(bm.matrix.norm()) + ")");
  return sort_solution(solver.eigenvalues(), Eigen::MatrixXcd(), params.k0a, false);
}

} // namespace weylarray
