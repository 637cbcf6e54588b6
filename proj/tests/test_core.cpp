#include <doctest.h>

#include <random>

#include "weylarray/core.hpp"

using namespace weylarray;

TEST_CASE("ArrayParams derived fields") {
  const ArrayParams p(0.1, 5.0);
  CHECK(p.k0a == doctest::Approx(2.0 * M_PI * 0.1).epsilon(1e-15));
  CHECK(p.gamma_tilde0 == doctest::Approx(1.0 / std::pow(p.k0a, 3)).epsilon(1e-15));
  CHECK(p.muB_gamma0() == doctest::Approx(5.0 * p.gamma_tilde0).epsilon(1e-15));
  CHECK_THROWS_AS(ArrayParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrayParams(-0.2, 1.0), std::invalid_argument);
}

TEST_CASE("green_dyadic on-axis displacement has no cross terms") {
  const Mat3c g = green_dyadic(Vec3(0, 0, 1.7), 0.9);
  CHECK(std::abs(g(0, 1)) < 1e-15);
  CHECK(std::abs(g(0, 2)) < 1e-15);
  CHECK(std::abs(g(1, 2)) < 1e-15);
}

TEST_CASE("green_dyadic far-field limit on axis") {
  const double k0d = 1e6;
  const Mat3c g = green_dyadic(Vec3(0, 0, 1.0), k0d);
  const cplx ff = std::exp(cplx(0, k0d)) / (4.0 * M_PI);
  CHECK(std::abs(g(0, 0) - ff) / std::abs(ff) < 3e-6);   // transverse survives
  CHECK(std::abs(g(2, 2)) / std::abs(ff) < 3.0 / k0d);   // longitudinal suppressed
}

TEST_CASE("green_dyadic static near field, k0 d = 0.1") {
  // frozen from an mpmath evaluation at 40 digits
  const Mat3c g = green_dyadic(Vec3(0, 0, 1.0), 0.1);
  CHECK(g(2, 2).real() == doctest::Approx(15.994872947553255).epsilon(1e-14));
  CHECK(g(2, 2).imag() == doctest::Approx(0.0052998614993109873).epsilon(1e-12));
  CHECK(g(0, 0).real() == doctest::Approx(-7.9182565581261161).epsilon(1e-14));
  // leading order 2/(4 pi d (k0 d)^2)
  CHECK(g(2, 2).real() ==
        doctest::Approx(2.0 / (4.0 * M_PI * 0.01)).epsilon(6e-3));
}

TEST_CASE("green_dyadic rejects zero displacement") {
  CHECK_THROWS_AS(green_dyadic(Vec3::Zero(), 0.6), std::domain_error);
}

TEST_CASE("green_dyadic symmetry, evenness, axis sparsity over random displacements") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double k0a = 2.0 * M_PI * 0.1;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec3 r(uni(rng), uni(rng), uni(rng));
    const double target = 0.05 + (20.0 - 0.05) * (0.5 + 0.5 * uni(rng));
    r = r.normalized() * target;
    const Mat3c g = green_dyadic(r, k0a);
    const Mat3c gm = green_dyadic(Vec3(-r), k0a);
    const double scale = g.cwiseAbs().maxCoeff();
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() / scale < 1e-12);
    CHECK((g - gm).cwiseAbs().maxCoeff() / scale < 1e-12);
  }
}

TEST_CASE("Im green_dyadic stays bounded as r -> 0") {
  const double k0a = 2.0 * M_PI * 0.1;
  const Mat3c g = green_dyadic(Vec3(0.001, 0, 0), k0a);
  CHECK(std::abs(g(0, 0).imag()) <= k0a / (6.0 * M_PI) * (1.0 + 1e-6));
  CHECK(std::abs(g(1, 1).imag()) <= k0a / (6.0 * M_PI) * (1.0 + 1e-6));
}

TEST_CASE("zeeman_block structure and spectrum") {
  CHECK(zeeman_block(0.0).cwiseAbs().maxCoeff() == 0.0);

  const double muB = 5.0;
  const Mat3c h = zeeman_block(muB);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);   // Hermitian
  CHECK(std::abs(h.trace()) < 1e-15);                       // traceless
  CHECK((h + h.transpose()).cwiseAbs().maxCoeff() < 1e-15); // antisymmetric

  Eigen::SelfAdjointEigenSolver<Mat3c> es(h);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-muB).epsilon(1e-14));
  CHECK(es.eigenvalues()(1) == doctest::Approx(0.0).scale(muB));
  CHECK(es.eigenvalues()(2) == doctest::Approx(muB).epsilon(1e-14));

  // sigma+ = -(x + iy)/sqrt(2) has eigenvalue +muB
  Eigen::Vector3cd sp;
  sp << cplx(-1, 0) / std::sqrt(2.0), cplx(0, -1) / std::sqrt(2.0), 0.0;
  CHECK((h * sp - muB * sp).norm() < 1e-14);
  // pi = z has eigenvalue 0
  Eigen::Vector3cd pi = Eigen::Vector3cd::Zero();
  pi(2) = 1.0;
  CHECK((h * pi).norm() < 1e-15);

  // field reversal swaps sigma+ and sigma-
  const Mat3c hr = zeeman_block(-muB);
  CHECK((hr * sp + muB * sp).norm() < 1e-14);
}

TEST_CASE("zeeman_block Hermitian traceless for random muB") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-30.0, 30.0);
  for (int i = 0; i < 50; ++i) {
    const Mat3c h = zeeman_block(uni(rng));
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(h.trace()) < 1e-15);
  }
}
