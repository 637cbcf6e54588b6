#include "weylarray/spectral.hpp"

#include <cmath>

#include "weylarray/parallel.hpp"
#include "weylarray/weyl.hpp"

namespace weylarray {

std::vector<BandTableRow> band_structure(const LatticeGeometry& lattice,
                                         const ArrayParams& params, const KPath& path,
                                         const EwaldConfig& cfg, int workers) {
  const int nk = static_cast<int>(path.points.size());
  std::vector<BandSolution> sols(nk);
  parallel_for(nk, workers, [&](int i) {
    sols[i] = solve_bands(lattice, params, path.points[i], cfg);
  });
  std::vector<BandTableRow> rows;
  for (int i = 0; i < nk; ++i) {
    const Vec3& k = path.points[i];
    const bool cone = lattice.periodic_dim == 3
                          ? in_light_cone(k, params.k0a)
                          : in_light_cone(Vec2(k(1), k(2)), params.k0a);
    for (int b = 0; b < sols[i].n_bands(); ++b)
      rows.push_back({path.arc_length[i], k, b, sols[i].frequencies(b),
                      sols[i].decay_rates(b), cone});
  }
  return rows;
}

std::vector<Vec3> gamma_centered_grid(const LatticeGeometry& lattice, int grid_n) {
  std::vector<Vec3> ks;
  const int dim = lattice.periodic_dim;
  const int n3 = (dim == 3) ? grid_n : 1;
  ks.reserve(static_cast<size_t>(grid_n) * grid_n * n3);
  auto fold = [&](int j) {
    double c = static_cast<double>(j) / grid_n;
    if (c >= 0.5) c -= 1.0;
    return c;
  };
  for (int j1 = 0; j1 < grid_n; ++j1)
    for (int j2 = 0; j2 < grid_n; ++j2)
      for (int j3 = 0; j3 < n3; ++j3) {
        Vec3 k = fold(j1) * lattice.reciprocal[0] + fold(j2) * lattice.reciprocal[1];
        if (dim == 3) k += fold(j3) * lattice.reciprocal[2];
        ks.push_back(k);
      }
  return ks;
}

std::vector<Eigen::VectorXd> bz_grid_frequencies(const LatticeGeometry& lattice,
                                                 const ArrayParams& params, int grid_n,
                                                 const EwaldConfig& cfg, int workers) {
  if (grid_n < 4) throw std::invalid_argument("bz_grid_frequencies: grid_n >= 4 required");
  const auto ks = gamma_centered_grid(lattice, grid_n);
  std::vector<Eigen::VectorXd> freqs(ks.size());
  // a grid point can land exactly on a diffraction resonance (e.g. the BZ
  // face center when k0 a = pi); nudge off the measure-zero singular set
  const Vec3 nudge = 1e-6 * Vec3(1.0, 1.0, 1.0).normalized() * 2.0 * M_PI / grid_n;
  parallel_for(static_cast<int>(ks.size()), workers, [&](int i) {
    try {
      freqs[i] = solve_bands(lattice, params, ks[i], cfg).frequencies;
    } catch (const singular_configuration_error&) {
      freqs[i] = solve_bands(lattice, params, ks[i] + nudge, cfg).frequencies;
    }
  });
  return freqs;
}

double DosHistogram::total() const {
  double t = 0.0;
  for (double c : counts) t += c;
  return t;
}

DosHistogram density_of_states(const LatticeGeometry& lattice, const ArrayParams& params,
                               int grid_n, double bin_width, const EwaldConfig& cfg,
                               int workers) {
  if (bin_width <= 0.0) throw std::invalid_argument("density_of_states: bin_width > 0");
  const auto freqs = bz_grid_frequencies(lattice, params, grid_n, cfg, workers);

  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (const auto& f : freqs) {
    lo = std::min(lo, f.minCoeff());
    hi = std::max(hi, f.maxCoeff());
  }
  const long long b0 = static_cast<long long>(std::floor(lo / bin_width));
  const long long b1 = static_cast<long long>(std::floor(hi / bin_width)) + 1;
  const int nbins = static_cast<int>(b1 - b0);

  DosHistogram h;
  h.grid_n = grid_n;
  h.bin_width = bin_width;
  h.bin_edges.resize(nbins + 1);
  for (int b = 0; b <= nbins; ++b) h.bin_edges[b] = (b0 + b) * bin_width;
  h.counts.assign(nbins, 0.0);
  const double w = 1.0 / static_cast<double>(freqs.size());
  for (const auto& f : freqs)
    for (int j = 0; j < f.size(); ++j) {
      int b = static_cast<int>(std::floor(f(j) / bin_width) - b0);
      b = std::clamp(b, 0, nbins - 1);
      h.counts[b] += w;
    }
  return h;
}

double window_state_count(const std::vector<Eigen::VectorXd>& grid_freqs,
                          double center, double width) {
  const double lo = center - 0.5 * width, hi = center + 0.5 * width;
  double count = 0.0;
  for (const auto& f : grid_freqs)
    for (int j = 0; j < f.size(); ++j)
      if (f(j) >= lo && f(j) <= hi) count += 1.0;
  return count / static_cast<double>(grid_freqs.size());
}

PlaneSpec kx_equals_ky_plane() {
  PlaneSpec p;
  p.origin = Vec3::Zero();
  p.u_dir = Vec3(1, 1, 0) / std::sqrt(2.0);
  p.v_dir = Vec3(0, 0, 1);
  p.u_min = -std::sqrt(2.0) * M_PI;
  p.u_max = std::sqrt(2.0) * M_PI;
  p.v_min = -M_PI;
  p.v_max = M_PI;
  p.torus_u = p.torus_v = true;
  return p;
}

PlaneSpec surface_bz_plane() {
  PlaneSpec p;
  p.origin = Vec3::Zero();
  p.u_dir = Vec3(0, 1, 0);
  p.v_dir = Vec3(0, 0, 1);
  p.u_min = -M_PI;
  p.u_max = M_PI;
  p.v_min = -M_PI;
  p.v_max = M_PI;
  p.torus_u = p.torus_v = true;
  return p;
}

namespace {

struct PlaneSample {
  Eigen::VectorXd omega;
  Eigen::VectorXd gamma;
  Eigen::MatrixXd W;  // 3 x n_bands polarization weights
};

std::vector<PlaneSample> sample_plane(const LatticeGeometry& lattice,
                                      const ArrayParams& params, const PlaneSpec& plane,
                                      int grid_n, const EwaldConfig& cfg, int workers,
                                      int* nu_out, int* nv_out) {
  const int nu = grid_n + 1, nv = grid_n + 1;
  *nu_out = nu;
  *nv_out = nv;
  std::vector<PlaneSample> samples(static_cast<size_t>(nu) * nv);
  parallel_for(nu * nv, workers, [&](int idx) {
    const int iu = idx / nv, iv = idx % nv;
    const double u = plane.u_min + (plane.u_max - plane.u_min) * iu / (nu - 1);
    const double v = plane.v_min + (plane.v_max - plane.v_min) * iv / (nv - 1);
    const Vec3 k = plane.origin + u * plane.u_dir + v * plane.v_dir;
    const BandSolution sol = solve_bands(lattice, params, k, cfg, true);
    PlaneSample& s = samples[idx];
    s.omega = sol.frequencies;
    s.gamma = sol.decay_rates;
    const int nb = sol.n_bands();
    const int M = nb / 3;
    s.W = Eigen::MatrixXd::Zero(3, nb);
    for (int b = 0; b < nb; ++b)
      for (int xi = 0; xi < M; ++xi)
        for (int beta = 0; beta < 3; ++beta)
          s.W(beta, b) += std::norm(sol.coefficients(3 * xi + beta, b));
  });
  return samples;
}

} // namespace

std::vector<ContourLine> equifrequency_contours(const LatticeGeometry& lattice,
                                                const ArrayParams& params,
                                                const PlaneSpec& plane,
                                                const std::vector<double>& frequencies,
                                                int grid_n, const EwaldConfig& cfg,
                                                int workers) {
  int nu = 0, nv = 0;
  const auto samples =
      sample_plane(lattice, params, plane, grid_n, cfg, workers, &nu, &nv);
  const int nb = samples.empty() ? 0 : static_cast<int>(samples[0].omega.size());

  const double du = (plane.u_max - plane.u_min) / (nu - 1);
  const double dv = (plane.v_max - plane.v_min) / (nv - 1);

  std::vector<ContourLine> result;
  for (double freq : frequencies)
    for (int b = 0; b < nb; ++b) {
      GridField field;
      field.nu = nu;
      field.nv = nv;
      field.torus_u = plane.torus_u;
      field.torus_v = plane.torus_v;
      field.values.resize(static_cast<size_t>(nu) * nv);
      for (int i = 0; i < nu * nv; ++i) field.values[i] = samples[i].omega(b);

      for (const auto& poly : marching_squares(field, freq)) {
        ContourLine line;
        line.band = b;
        line.frequency = freq;
        line.closed = poly.closed;
        for (const auto& p : poly.points) {
          ContourVertex vx;
          vx.u = plane.u_min + p[0] * du;
          vx.v = plane.v_min + p[1] * dv;
          vx.k = plane.origin + vx.u * plane.u_dir + vx.v * plane.v_dir;
          const int giu = std::min(nu - 1, static_cast<int>(std::lround(p[0])));
          const int giv = std::min(nv - 1, static_cast<int>(std::lround(p[1])));
          const PlaneSample& s = samples[giu * nv + giv];
          vx.gamma = s.gamma(b);
          vx.W = {s.W(0, b), s.W(1, b), s.W(2, b)};
          line.vertices.push_back(vx);
        }
        result.push_back(std::move(line));
      }
    }
  return result;
}

double contour_area(const ContourLine& line) {
  if (!line.closed || line.vertices.size() < 3) return 0.0;
  double area = 0.0;
  const auto& v = line.vertices;
  for (size_t i = 0; i + 1 < v.size(); ++i)
    area += v[i].u * v[i + 1].v - v[i + 1].u * v[i].v;
  return 0.5 * std::abs(area);
}

PhaseDiagram phase_diagram(const LatticeGeometry& lattice,
                           const std::vector<double>& a_grid,
                           const std::vector<double>& muB_grid, int grid_n,
                           double window, double threshold_frac,
                           const EwaldConfig& cfg, int workers) {
  if (a_grid.empty() || muB_grid.empty())
    throw std::invalid_argument("phase_diagram: parameter grids must be non-empty");
  PhaseDiagram pd;
  pd.a_grid = a_grid;
  pd.muB_grid = muB_grid;
  pd.window = window;
  pd.grid_n = grid_n;
  pd.threshold_frac = threshold_frac;
  const int na = static_cast<int>(a_grid.size());
  const int nmu = static_cast<int>(muB_grid.size());
  pd.cells.resize(static_cast<size_t>(na) * nmu);

  parallel_for(na * nmu, workers, [&](int idx) {
    PhaseDiagramCell& cell = pd.cells[idx];
    cell.a_over_lambda = a_grid[idx / nmu];
    cell.muB = muB_grid[idx % nmu];
    try {
      const ArrayParams params(cell.a_over_lambda, cell.muB);
      WeylSearchOptions opts;
      opts.axis_base = default_weyl_axis_base(lattice);
      const auto nodes = find_weyl_nodes(lattice, params, opts, cfg);
      if (nodes.empty()) {
        cell.error = "no Weyl node located";
        return;
      }
      const WeylNode& node = nodes.front();
      cell.omega_w = node.weyl_frequency;
      cell.k_w = node.k_position.norm();
      cell.weyl_in_light_cone = node.in_light_cone;
      const auto freqs = bz_grid_frequencies(lattice, params, grid_n, cfg, 1);
      cell.dos_near_weyl = window_state_count(freqs, cell.omega_w, window);
      const int nb = static_cast<int>(freqs.front().size());
      cell.isolated = cell.dos_near_weyl <= threshold_frac * nb;
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  });
  return pd;
}

} // namespace weylarray
