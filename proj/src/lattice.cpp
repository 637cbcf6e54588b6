#include "weylarray/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace weylarray {

double LatticeGeometry::cell_volume() const {
  if (periodic_dim == 3) return std::abs(direct[0].dot(direct[1].cross(direct[2])));
  return direct[0].cross(direct[1]).norm();
}

Vec3 LatticeGeometry::reduce_to_bz(const Vec3& k) const {
  Vec3 out = k;
  for (int i = 0; i < periodic_dim; ++i) {
    const double c = k.dot(direct[i]) / (2.0 * M_PI);
    out -= std::round(c) * reciprocal[i];
  }
  return out;
}

namespace {

void fill_reciprocal(LatticeGeometry& g) {
  if (g.periodic_dim == 3) {
    const double v = g.direct[0].dot(g.direct[1].cross(g.direct[2]));
    g.reciprocal[0] = 2.0 * M_PI * g.direct[1].cross(g.direct[2]) / v;
    g.reciprocal[1] = 2.0 * M_PI * g.direct[2].cross(g.direct[0]) / v;
    g.reciprocal[2] = 2.0 * M_PI * g.direct[0].cross(g.direct[1]) / v;
  } else {
    // in-plane duals: b_i . a_j = 2 pi delta_ij within the lattice plane
    const Vec3 n = g.direct[0].cross(g.direct[1]).normalized();
    const double area = g.direct[0].cross(g.direct[1]).dot(n);
    g.reciprocal[0] = 2.0 * M_PI * g.direct[1].cross(n) / area;
    g.reciprocal[1] = 2.0 * M_PI * n.cross(g.direct[0]) / area;
    g.reciprocal[2] = Vec3::Zero();
  }
}

} // namespace

LatticeGeometry bcc_lattice() {
  LatticeGeometry g;
  g.name = "bcc";
  g.periodic_dim = 3;
  g.direct = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  g.sublattice = {Vec3(0, 0, 0), Vec3(0.5, 0.5, 0.5)};
  fill_reciprocal(g);
  return g;
}

LatticeGeometry cub_lattice() {
  LatticeGeometry g;
  g.name = "cub";
  g.periodic_dim = 3;
  g.direct = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
  g.sublattice = {Vec3(0, 0, 0)};
  fill_reciprocal(g);
  return g;
}

LatticeGeometry surface_square_lattice() {
  LatticeGeometry g;
  g.name = "surface-square";
  g.periodic_dim = 2;
  g.direct = {Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3::Zero()};
  g.sublattice = {Vec3(0, 0, 0)};
  fill_reciprocal(g);
  return g;
}

const std::map<std::string, Vec3>& bulk_vertex_table() {
  static const std::map<std::string, Vec3> table = {
      {"Gamma", Vec3(0, 0, 0)}, {"Z", Vec3(0, 0, 1)}, {"A", Vec3(1, 1, 1)},
      {"M", Vec3(1, 1, 0)},     {"R", Vec3(0, 1, 1)}, {"X", Vec3(0, 1, 0)},
  };
  return table;
}

const std::map<std::string, Vec3>& surface_vertex_table() {
  static const std::map<std::string, Vec3> table = {
      {"Gamma", Vec3(0, 0, 0)},
      {"Y", Vec3(0, 1, 0)},
      {"Z", Vec3(0, 0, 1)},
      {"M", Vec3(0, 1, 1)},
  };
  return table;
}

KPath high_symmetry_path(const LatticeGeometry& lattice,
                         const std::vector<std::string>& labels, int samples) {
  if (labels.empty()) throw std::invalid_argument("high_symmetry_path: empty label list");
  if (samples < 2) throw std::invalid_argument("high_symmetry_path: need samples >= 2");
  const auto& table =
      lattice.periodic_dim == 3 ? bulk_vertex_table() : surface_vertex_table();

  KPath path;
  path.labels = labels;
  for (const auto& name : labels) {
    auto it = table.find(name);
    if (it == table.end())
      throw std::invalid_argument("high_symmetry_path: unknown vertex label '" + name + "'");
    path.vertices.push_back(it->second);
  }

  double s = 0.0;
  path.points.push_back(M_PI * path.vertices.front());
  path.arc_length.push_back(0.0);
  path.vertex_sample.push_back(0);
  for (size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
    const Vec3 a = M_PI * path.vertices[seg];
    const Vec3 b = M_PI * path.vertices[seg + 1];
    const double len = (b - a).norm();
    if (len < 1e-15) {
      // degenerate segment collapses onto the existing sample
      path.vertex_sample.push_back(static_cast<int>(path.points.size()) - 1);
      continue;
    }
    for (int j = 1; j < samples; ++j) {
      const double t = static_cast<double>(j) / (samples - 1);
      path.points.push_back(a + t * (b - a));
      path.arc_length.push_back(s + t * len);
    }
    s += len;
    path.vertex_sample.push_back(static_cast<int>(path.points.size()) - 1);
  }
  return path;
}

bool in_light_cone(const Vec3& k, double k0a) { return k.norm() < k0a; }
bool in_light_cone(const Vec2& k_par, double k0a) { return k_par.norm() < k0a; }

} // namespace weylarray
