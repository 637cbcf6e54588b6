#include <doctest.h>

#include <random>

#include "weylarray/bloch.hpp"

using namespace weylarray;

namespace {
const LatticeGeometry kBcc = bcc_lattice();
const LatticeGeometry kCub = cub_lattice();
} // namespace

TEST_CASE("matrix dimensions follow the sublattice count") {
  const ArrayParams p(0.1, 0.0);
  CHECK(assemble_bloch(kBcc, p, Vec3(0.3, 0.1, -0.4)).matrix.rows() == 6);
  CHECK(assemble_bloch(kCub, p, Vec3(0.3, 0.1, -0.4)).matrix.rows() == 3);
}

TEST_CASE("time-reversal at zero field: spectra at k and -k coincide") {
  const ArrayParams p(0.1, 0.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-M_PI, M_PI);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec3 k(uni(rng), uni(rng), uni(rng));
    const auto a = solve_bands(kBcc, p, k).frequencies;
    const auto b = solve_bands(kBcc, p, Vec3(-k)).frequencies;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("Gamma point: one three-fold cluster near omega0, split by the field") {
  const ArrayParams p0(0.1, 0.0);
  const auto s0 = solve_bands(kBcc, p0, Vec3::Zero());
  // lower triplet degenerate to high precision
  CHECK(s0.frequencies(2) - s0.frequencies(0) < 1e-6);
  CHECK(std::abs(s0.frequencies(0)) < 2.0);  // near omega0
  // exactly one cluster there: next level far above
  CHECK(s0.frequencies(3) - s0.frequencies(2) > 1.0);

  const ArrayParams p5(0.1, 5.0);
  const auto s5 = solve_bands(kBcc, p5, Vec3::Zero());
  CHECK(s5.frequencies(1) - s5.frequencies(0) ==
        doctest::Approx(5.0).epsilon(1e-6));
  CHECK(s5.frequencies(2) - s5.frequencies(1) ==
        doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("bands merge at the A point at zero field") {
  const ArrayParams p(0.1, 0.0);
  const auto s = solve_bands(kBcc, p, Vec3(M_PI, M_PI, M_PI));
  CHECK(s.frequencies(5) - s.frequencies(0) < 1e-6);
}

TEST_CASE("bulk eigenvalues are real on an 8^3 grid") {
  const ArrayParams p(0.1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int l = 0; l < 8; ++l) {
        const Vec3 k(-M_PI + i * M_PI / 4, -M_PI + j * M_PI / 4,
                     -M_PI + l * M_PI / 4);
        worst = std::max(
            worst, solve_bands(kBcc, p, k).decay_rates.cwiseAbs().maxCoeff());
      }
  CHECK(worst / p.gamma_tilde0 < 1e-6);
}

TEST_CASE("C4z covariance: spectra invariant under quarter turns about z") {
  const ArrayParams p(0.1, 5.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-M_PI, M_PI);
  for (int trial = 0; trial < 4; ++trial) {
    const Vec3 k(uni(rng), uni(rng), uni(rng));
    const Vec3 kr(-k(1), k(0), k(2));  // R_z(pi/2) k
    const auto a = solve_bands(kBcc, p, k).frequencies;
    const auto b = solve_bands(kBcc, p, kr).frequencies;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("eigendecomposition reconstructs the matrix") {
  const ArrayParams p(0.1, 5.0);
  const auto bm = assemble_bloch(kBcc, p, Vec3(0.37, -1.21, 2.45));
  const auto sol = diagonalize(bm);
  // rebuild P E P^-1 in gamma0 units
  Eigen::MatrixXcd P = sol.coefficients;
  Eigen::VectorXcd E(6);
  const double to_g0 = 1.0 / (p.k0a * p.k0a * p.k0a);
  for (int i = 0; i < 6; ++i)
    E(i) = cplx(sol.frequencies(i) * to_g0, -0.5 * sol.decay_rates(i));
  const Eigen::MatrixXcd rebuilt = P * E.asDiagonal() * P.inverse();
  CHECK((rebuilt - bm.matrix).norm() / bm.matrix.norm() < 1e-10);
}

TEST_CASE("eigenvectors have unit norm and deterministic order") {
  const ArrayParams p(0.1, 5.0);
  const auto bm = assemble_bloch(kBcc, p, Vec3(0.3, 0.3, 0.9));
  const auto s1 = diagonalize(bm);
  const auto s2 = diagonalize(bm);
  for (int b = 0; b < 6; ++b) {
    CHECK(s1.coefficients.col(b).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((s1.coefficients.col(b) - s2.coefficients.col(b)).norm() < 1e-14);
  }
  for (int b = 1; b < 6; ++b) CHECK(s1.frequencies(b) >= s1.frequencies(b - 1));
}

TEST_CASE("single-layer slab lattice is passive, leaky inside the cone") {
  // monolayer square lattice: decay rates nonnegative, superradiant at small k
  auto lat = surface_square_lattice();
  const ArrayParams p(0.2, 0.0);
  const auto inside = solve_bands(lat, p, Vec3(0.0, 0.1, 0.05));
  CHECK(inside.decay_rates.minCoeff() > -1e-8);
  CHECK(inside.decay_rates.maxCoeff() > 1.0);  // open radiation channel
  const auto outside = solve_bands(lat, p, Vec3(0.0, 2.5, 1.2));
  CHECK(outside.decay_rates.minCoeff() > -1e-8);
  CHECK(outside.decay_rates.maxCoeff() < 1e-6);  // fully subradiant
}
