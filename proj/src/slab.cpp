#include "weylarray/slab.hpp"

#include <cmath>

#include "weylarray/parallel.hpp"
#include "weylarray/weyl.hpp"

namespace weylarray {

SlabModel build_slab(double width) {
  if (!(width > 0.0)) throw std::invalid_argument("build_slab: width must be positive");
  const double doubled = 2.0 * width;
  if (std::abs(doubled - std::round(doubled)) > 1e-9)
    throw std::invalid_argument(
        "build_slab: width must be a half-integer multiple of a (BCC layers "
        "stack at spacing a/2)");
  int m = static_cast<int>(std::round(doubled)) - 1;
  if (m < 1) m = 1;  // monolayer degenerate case

  SlabModel slab;
  slab.width = width;
  slab.lattice = surface_square_lattice();
  slab.lattice.name = "bcc-slab-100";
  slab.lattice.sublattice.clear();
  for (int j = 0; j < m; ++j) {
    const double off = (j % 2 == 0) ? 0.0 : 0.5;
    slab.lattice.sublattice.push_back(Vec3(0.5 * j, off, off));
  }
  slab.facet_minus_x = -0.5;
  slab.facet_plus_x = 0.5 * (m - 1) + 0.5;
  return slab;
}

std::vector<BandSolution> slab_bands(const SlabModel& slab, const ArrayParams& params,
                                     const std::vector<Vec3>& k_points,
                                     const EwaldConfig& cfg, int workers,
                                     bool with_vectors) {
  std::vector<BandSolution> sols(k_points.size());
  parallel_for(static_cast<int>(k_points.size()), workers, [&](int i) {
    sols[i] = solve_bands(slab.lattice, params, k_points[i], cfg, with_vectors);
  });
  return sols;
}

Eigen::VectorXd localization_profile(const Eigen::VectorXcd& state) {
  const int M = static_cast<int>(state.size()) / 3;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(M);
  for (int xi = 0; xi < M; ++xi)
    for (int beta = 0; beta < 3; ++beta) p(xi) += std::norm(state(3 * xi + beta));
  return p;
}

const char* facet_name(Facet f) {
  switch (f) {
    case Facet::facet_100: return "100";
    case Facet::facet_1bar00: return "-100";
    default: return "bulk";
  }
}

Facet facet_classify(const Eigen::VectorXd& profile, double edge_fraction,
                     double threshold) {
  const int M = static_cast<int>(profile.size());
  const int edge = std::max(1, static_cast<int>(std::floor(edge_fraction * M)));
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < edge; ++i) {
    lo += profile(i);
    hi += profile(M - 1 - i);
  }
  if (hi > threshold) return Facet::facet_100;
  if (lo > threshold) return Facet::facet_1bar00;
  return Facet::bulk;
}

std::array<double, 3> polarization_weight(const Eigen::VectorXcd& state) {
  const int M = static_cast<int>(state.size()) / 3;
  std::array<double, 3> w{0.0, 0.0, 0.0};
  for (int xi = 0; xi < M; ++xi)
    for (int beta = 0; beta < 3; ++beta) w[beta] += std::norm(state(3 * xi + beta));
  return w;
}

namespace {

struct GridState {
  Eigen::VectorXd omega, gamma;
  std::vector<Facet> facet;
  Eigen::MatrixXd W;  // 3 x n_bands
};

} // namespace

FermiArcResult fermi_arcs(const SlabModel& slab, const ArrayParams& params,
                          double omega, const FermiArcOptions& opts,
                          const EwaldConfig& cfg) {
  const int n = opts.grid_n;
  const int nv = n + 1;
  std::vector<GridState> grid(static_cast<size_t>(nv) * nv);

  parallel_for(nv * nv, opts.workers, [&](int idx) {
    const int iu = idx / nv, iv = idx % nv;
    const double ky = -M_PI + 2.0 * M_PI * iu / n;
    const double kz = -M_PI + 2.0 * M_PI * iv / n;
    const BandSolution sol =
        solve_bands(slab.lattice, params, Vec3(0, ky, kz), cfg, true);
    GridState& gs = grid[idx];
    gs.omega = sol.frequencies;
    gs.gamma = sol.decay_rates;
    const int nb = sol.n_bands();
    gs.facet.resize(nb);
    gs.W = Eigen::MatrixXd::Zero(3, nb);
    for (int b = 0; b < nb; ++b) {
      const Eigen::VectorXcd state = sol.coefficients.col(b);
      gs.facet[b] = facet_classify(localization_profile(state), opts.edge_fraction,
                                   opts.facet_threshold);
      const auto w = polarization_weight(state);
      gs.W(0, b) = w[0];
      gs.W(1, b) = w[1];
      gs.W(2, b) = w[2];
    }
  });

  FermiArcResult result;
  result.omega = omega;

  const int nb = static_cast<int>(grid[0].omega.size());
  const double dk = 2.0 * M_PI / n;
  for (int b = 0; b < nb; ++b) {
    GridField field;
    field.nu = field.nv = nv;
    field.torus_u = field.torus_v = true;
    field.values.resize(static_cast<size_t>(nv) * nv);
    for (int i = 0; i < nv * nv; ++i) field.values[i] = grid[i].omega(b);

    for (const auto& poly : marching_squares(field, omega)) {
      // per-vertex metadata from the nearest grid eigenstate
      struct Tagged {
        ArcVertex v;
        Facet facet;
        bool subradiant;
      };
      std::vector<Tagged> tagged;
      for (const auto& p : poly.points) {
        const int giu = std::min(nv - 1, static_cast<int>(std::lround(p[0])));
        const int giv = std::min(nv - 1, static_cast<int>(std::lround(p[1])));
        const GridState& gs = grid[giu * nv + giv];
        Tagged t;
        t.v.k = Vec2(-M_PI + p[0] * dk, -M_PI + p[1] * dk);
        t.v.gamma = gs.gamma(b);
        t.v.W = {gs.W(0, b), gs.W(1, b), gs.W(2, b)};
        t.facet = gs.facet[b];
        t.subradiant = gs.gamma(b) < opts.gamma_cutoff * params.gamma0;
        tagged.push_back(t);
      }

      // split into facet-pure subradiant runs; drop bulk-like stretches
      auto flush = [&](size_t lo, size_t hi, Facet f) {
        if (hi - lo < 3 || f == Facet::bulk) return;
        SurfaceArc arc;
        arc.band = b;
        arc.facet = f;
        for (size_t i = lo; i < hi; ++i) arc.vertices.push_back(tagged[i].v);
        arc.closed = poly.closed && lo == 0 && hi == tagged.size();
        result.arcs.push_back(std::move(arc));
      };
      size_t run_start = 0;
      for (size_t i = 1; i <= tagged.size(); ++i) {
        const bool boundary =
            i == tagged.size() || tagged[i].facet != tagged[run_start].facet ||
            tagged[i].subradiant != tagged[run_start].subradiant;
        if (!boundary) continue;
        if (tagged[run_start].subradiant)
          flush(run_start, i, tagged[run_start].facet);
        run_start = i;
      }
    }
  }

  // bulk Weyl projections onto the surface BZ
  WeylSearchOptions wopts;
  const auto nodes = find_weyl_nodes(bcc_lattice(), params, wopts, cfg);
  for (const auto& node : nodes) {
    const Vec3 kw = node.k_position * M_PI;
    result.weyl_projections.push_back(Vec2(kw(1), kw(2)));
  }
  return result;
}

} // namespace weylarray
