#include <doctest.h>

#include "weylarray/lattice.hpp"

using namespace weylarray;

TEST_CASE("bcc lattice geometry") {
  const auto g = bcc_lattice();
  CHECK(g.n_sublattices() == 2);
  CHECK((g.sublattice[1] - g.sublattice[0] - Vec3(0.5, 0.5, 0.5)).norm() < 1e-15);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(g.direct[i].dot(g.reciprocal[j]) ==
            doctest::Approx(i == j ? 2.0 * M_PI : 0.0).scale(2.0 * M_PI));
  // reciprocal cell: cube of side 2 pi / a
  for (int i = 0; i < 3; ++i)
    CHECK(g.reciprocal[i].norm() == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
}

TEST_CASE("cub lattice geometry") {
  const auto g = cub_lattice();
  CHECK(g.n_sublattices() == 1);
  const double vbz = std::abs(
      g.reciprocal[0].dot(g.reciprocal[1].cross(g.reciprocal[2])));
  CHECK(vbz == doctest::Approx(std::pow(2.0 * M_PI, 3)).epsilon(1e-14));
  for (const char* name : {"Gamma", "Z", "M", "A", "R"})
    CHECK(bulk_vertex_table().count(name) == 1);
}

TEST_CASE("reciprocal basis round trip") {
  for (const auto& g : {bcc_lattice(), cub_lattice(), surface_square_lattice()}) {
    for (int i = 0; i < g.periodic_dim; ++i) {
      // rebuild a_i from duality against the b_j set
      Vec3 rebuilt = Vec3::Zero();
      for (int j = 0; j < g.periodic_dim; ++j)
        rebuilt += g.direct[i].dot(g.reciprocal[j]) / (2.0 * M_PI) * g.direct[j];
      CHECK((rebuilt - g.direct[i]).norm() < 1e-14);
    }
  }
}

TEST_CASE("high_symmetry_path sampling") {
  const auto lat = bcc_lattice();
  const KPath p = high_symmetry_path(lat, {"Gamma", "Z"}, 3);
  REQUIRE(p.points.size() == 3);
  CHECK((p.points[0] - Vec3(0, 0, 0)).norm() < 1e-15);
  CHECK((p.points[1] - Vec3(0, 0, M_PI / 2)).norm() < 1e-14);
  CHECK((p.points[2] - Vec3(0, 0, M_PI)).norm() < 1e-14);

  const KPath loop = high_symmetry_path(lat, {"Gamma", "Gamma"}, 5);
  CHECK(loop.points.size() == 1);

  const KPath multi = high_symmetry_path(lat, {"Gamma", "Z", "A", "M", "Gamma"}, 12);
  for (size_t i = 1; i < multi.arc_length.size(); ++i)
    CHECK(multi.arc_length[i] > multi.arc_length[i - 1]);
  // shared vertices appear exactly once
  CHECK(multi.points.size() == 1 + 4 * 11);

  CHECK_THROWS_WITH_AS(high_symmetry_path(lat, {"Gamma", "Q"}, 4),
                       doctest::Contains("Q"), std::invalid_argument);
}

TEST_CASE("light-cone classifier") {
  CHECK(in_light_cone(Vec3(0, 0, 0), 0.1));
  // a/lambda = 0.1: k0 = 0.2 pi/a, |k| = pi/a is far outside
  CHECK_FALSE(in_light_cone(Vec3(0, 0, M_PI), 2.0 * M_PI * 0.1));
  // boundary |k| = k0 counts as outside
  CHECK_FALSE(in_light_cone(Vec3(0, 0, M_PI), M_PI));
  CHECK(in_light_cone(Vec2(0.1, 0.1), 1.0));
}

TEST_CASE("light-cone area grows with a/lambda in the surface BZ") {
  auto cone_fraction = [](double a_over_lambda) {
    const double k0 = 2.0 * M_PI * a_over_lambda;
    int inside = 0, total = 0;
    for (int i = -40; i <= 40; ++i)
      for (int j = -40; j <= 40; ++j) {
        const Vec2 k(M_PI * i / 40.0, M_PI * j / 40.0);
        ++total;
        if (in_light_cone(k, k0)) ++inside;
      }
    return static_cast<double>(inside) / total;
  };
  double prev = -1.0;
  for (double a : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double frac = cone_fraction(a);
    CHECK(frac > prev);
    prev = frac;
  }
}

TEST_CASE("reduce_to_bz folds by reciprocal translations") {
  const auto lat = bcc_lattice();
  const Vec3 k(0.3, -0.2, 0.9);
  const Vec3 shifted = k + 2.0 * M_PI * Vec3(3, -1, 2);
  CHECK((lat.reduce_to_bz(shifted) - k).norm() < 1e-12);
  const auto surf = surface_square_lattice();
  const Vec3 kp(0.0, 0.4, -0.7);
  CHECK((surf.reduce_to_bz(kp + 2.0 * M_PI * Vec3(0, 2, -5)) - kp).norm() < 1e-12);
}
