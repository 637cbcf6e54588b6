#include "weylarray/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "weylarray/spectral.hpp"

namespace weylarray {

Vec3 default_weyl_axis_base(const LatticeGeometry& lattice) {
  if (lattice.n_sublattices() == 1) return Vec3(M_PI, M_PI, 0.0);  // M point
  return Vec3::Zero();
}

namespace {

double pair_gap(const Eigen::VectorXd& freqs, int p) {
  return freqs(p + 1) - freqs(p);
}

double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       int max_iter, double* t_out) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 < f2) { *t_out = x1; return f1; }
  *t_out = x2;
  return f2;
}

// smallest adjacent gap near a target frequency (band identities reshuffle
// between k-points, so chase the spectrum, not the sorted index)
double gap_near_frequency(const Eigen::VectorXd& freqs, double omega, double halo) {
  double best = std::numeric_limits<double>::max();
  for (int p = 0; p + 1 < freqs.size(); ++p) {
    const double mid = 0.5 * (freqs(p) + freqs(p + 1));
    if (std::abs(mid - omega) < halo) best = std::min(best, pair_gap(freqs, p));
  }
  return best;
}

} // namespace

std::vector<WeylNode> find_weyl_nodes(const LatticeGeometry& lattice,
                                      const ArrayParams& params,
                                      const WeylSearchOptions& opts,
                                      const EwaldConfig& cfg) {
  std::vector<WeylNode> nodes;
  const Vec3 dir = opts.axis_dir.normalized();

  auto make_node = [&](const Vec3& k, double gap, double omega, int band) {
    WeylNode n;
    n.k_position = k / M_PI;
    n.weyl_frequency = omega;
    n.residual_gap = gap;
    n.in_light_cone = in_light_cone(k, params.k0a);
    n.band_lower = band;
    return n;
  };

  if (opts.mode == WeylSearchOptions::Mode::axis_restricted) {
    const int ns = opts.scan_samples;
    const double big = std::numeric_limits<double>::infinity();
    std::vector<Eigen::VectorXd> freqs(ns);
    std::vector<double> ts(ns);
    std::vector<bool> valid(ns, true);
    for (int j = 0; j < ns; ++j) {
      ts[j] = (j + 1) * M_PI / ns;  // t in (0, pi]
      try {
        freqs[j] = solve_bands(lattice, params, opts.axis_base + ts[j] * dir, cfg)
                       .frequencies;
      } catch (const singular_configuration_error&) {
        valid[j] = false;  // grazed a diffraction resonance; measure-zero
      }
    }
    int first_valid = 0;
    while (first_valid < ns && !valid[first_valid]) ++first_valid;
    if (first_valid == ns) return nodes;
    const int nb = static_cast<int>(freqs[first_valid].size());

    // the Weyl crossing lives between the Zeeman-split levels of the
    // near-resonant triplet. At Gamma that triplet is exactly degenerate for
    // muB = 0 and splits into s0 -+ muB, so locate s0 field-free and take the
    // window [s0 - |muB|, s0 + |muB|]. Degeneracies outside it (upper
    // polariton cluster, photon-line passages) are not candidates.
    const ArrayParams params0(params.a_over_lambda, 0.0);
    const Eigen::VectorXd f_gamma0 =
        solve_bands(lattice, params0, opts.axis_base, cfg).frequencies;
    double s0 = f_gamma0(0);
    for (int i = 1; i < f_gamma0.size(); ++i)
      if (std::abs(f_gamma0(i)) < std::abs(s0)) s0 = f_gamma0(i);
    const double win_lo = s0 - std::abs(params.zeeman_ratio);
    const double win_hi = s0 + std::abs(params.zeeman_ratio);

    // transverse probe directions confirm the touching is an isolated point
    // (structural degeneracies on BZ faces and whole-line doublets are not)
    Vec3 perp1 = dir.cross(Vec3(1, 0, 0));
    if (perp1.norm() < 0.5) perp1 = dir.cross(Vec3(0, 1, 0));
    perp1.normalize();
    const Vec3 perp2 = dir.cross(perp1).normalized();

    std::vector<double> found_t;
    for (int p = 0; p + 1 < nb; ++p) {
      std::vector<double> g(ns);
      std::vector<double> finite;
      for (int j = 0; j < ns; ++j) {
        g[j] = valid[j] ? pair_gap(freqs[j], p) : big;
        if (valid[j]) finite.push_back(g[j]);
      }
      std::nth_element(finite.begin(), finite.begin() + finite.size() / 2,
                       finite.end());
      if (finite[finite.size() / 2] < opts.min_median_gap) continue;  // doublet

      auto gap_at = [&](double t) {
        try {
          const Eigen::VectorXd f =
              solve_bands(lattice, params, opts.axis_base + t * dir, cfg).frequencies;
          return pair_gap(f, p);
        } catch (const singular_configuration_error&) {
          return big;
        }
      };

      for (int j = 0; j < ns; ++j) {
        if (!valid[j]) continue;
        const bool left_ok = (j == 0) || g[j] <= g[j - 1];
        const bool right_ok = (j == ns - 1) || g[j] <= g[j + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = (j == 0) ? 0.25 * ts[0] : ts[j - 1];
        const double hi = (j == ns - 1) ? ts[j] : ts[j + 1];
        double t_best = ts[j];
        const double gap = golden_minimize(gap_at, lo, hi, opts.max_refine, &t_best);
        if (gap >= opts.gap_tol) continue;
        // converged onto the excluded Gamma end or the BZ-face endpoint
        if (t_best < 0.6 * ts[0] || t_best > M_PI - 1e-6) continue;

        const Vec3 kw = opts.axis_base + t_best * dir;
        // polariton-line passages masquerade as crossings; the gap landscape
        // is not trustworthy within a thin shell around |k| = k0
        if (std::abs(kw.norm() - params.k0a) < 0.05) continue;

        const Eigen::VectorXd f = solve_bands(lattice, params, kw, cfg).frequencies;
        const double omega = 0.5 * (f(p) + f(p + 1));
        if (omega < win_lo || omega > win_hi) continue;

        const double open_threshold = std::max(10.0 * opts.gap_tol, 3.0 * gap);
        bool opens = true;
        for (const Vec3& d : {perp1, perp2}) {
          try {
            const Eigen::VectorXd fp =
                solve_bands(lattice, params, kw + 0.1 * d, cfg).frequencies;
            if (gap_near_frequency(fp, omega, 2.0) < open_threshold) opens = false;
          } catch (const singular_configuration_error&) {
            opens = false;
          }
        }
        if (!opens) continue;

        bool dup = false;
        for (double t0 : found_t)
          if (std::abs(t0 - t_best) < 1e-6) dup = true;
        if (dup) continue;
        found_t.push_back(t_best);

        nodes.push_back(make_node(kw, gap, omega, p));
        nodes.push_back(make_node(opts.axis_base - t_best * dir, gap, omega, p));
      }
    }
    // outermost crossing first: when several survive, the tracked node of the
    // mid-spectrum pair is the one farthest out, and callers may also match
    // by continuity along a parameter sweep
    std::stable_sort(nodes.begin(), nodes.end(), [&](const WeylNode& a,
                                                     const WeylNode& b) {
      const double ta = std::abs((a.k_position * M_PI - opts.axis_base).dot(dir));
      const double tb = std::abs((b.k_position * M_PI - opts.axis_base).dot(dir));
      if (std::abs(ta - tb) > 1e-12) return ta > tb;
      return (a.k_position * M_PI - opts.axis_base).dot(dir) >
             (b.k_position * M_PI - opts.axis_base).dot(dir);
    });
    return nodes;
  }

  // full-3d validation mode: multistart Nelder-Mead on the min adjacent gap
  auto min_gap = [&](const Vec3& k, int* pair_out = nullptr) {
    const Eigen::VectorXd f = solve_bands(lattice, params, k, cfg).frequencies;
    double mn = std::numeric_limits<double>::max();
    for (int p = 0; p + 1 < f.size(); ++p)
      if (pair_gap(f, p) < mn) {
        mn = pair_gap(f, p);
        if (pair_out) *pair_out = p;
      }
    return mn;
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uni(-M_PI, M_PI);
  std::vector<Vec3> minima;
  for (int trial = 0; trial < opts.multistarts; ++trial) {
    std::array<Vec3, 4> simplex;
    simplex[0] = Vec3(uni(rng), uni(rng), uni(rng));
    for (int d = 0; d < 3; ++d) simplex[d + 1] = simplex[0] + 0.3 * Vec3::Unit(d);
    std::array<double, 4> fv;
    for (int i = 0; i < 4; ++i) fv[i] = min_gap(simplex[i]);
    for (int it = 0; it < 150; ++it) {
      std::array<int, 4> order{0, 1, 2, 3};
      std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
      if (fv[order[0]] < 0.2 * opts.gap_tol) break;
      const Vec3 centroid =
          (simplex[order[0]] + simplex[order[1]] + simplex[order[2]]) / 3.0;
      const Vec3 worst = simplex[order[3]];
      const Vec3 refl = centroid + (centroid - worst);
      const double fr = min_gap(refl);
      if (fr < fv[order[0]]) {
        const Vec3 expd = centroid + 2.0 * (centroid - worst);
        const double fe = min_gap(expd);
        if (fe < fr) { simplex[order[3]] = expd; fv[order[3]] = fe; }
        else         { simplex[order[3]] = refl; fv[order[3]] = fr; }
      } else if (fr < fv[order[2]]) {
        simplex[order[3]] = refl;
        fv[order[3]] = fr;
      } else {
        const Vec3 contr = centroid + 0.5 * (worst - centroid);
        const double fc = min_gap(contr);
        if (fc < fv[order[3]]) { simplex[order[3]] = contr; fv[order[3]] = fc; }
        else {
          for (int i = 1; i < 4; ++i) {
            simplex[order[i]] =
                simplex[order[0]] + 0.5 * (simplex[order[i]] - simplex[order[0]]);
            fv[order[i]] = min_gap(simplex[order[i]]);
          }
        }
      }
    }
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (fv[i] < fv[best]) best = i;
    if (fv[best] >= opts.gap_tol) continue;
    const Vec3 kw = lattice.reduce_to_bz(simplex[best]);
    bool dup = false;
    for (const auto& m : minima)
      if ((m - kw).norm() < 0.05) dup = true;
    if (dup) continue;
    int pair = 0;
    const double gap = min_gap(kw, &pair);
    const Eigen::VectorXd f = solve_bands(lattice, params, kw, cfg).frequencies;
    const double omega = 0.5 * (f(pair) + f(pair + 1));
    // isolated point degeneracies only: the gap near this frequency must open
    // in every direction (whole-face and whole-line degeneracies do not)
    bool opens = true;
    for (int d = 0; d < 3 && opens; ++d)
      for (double sgn : {-1.0, 1.0}) {
        const Eigen::VectorXd fp =
            solve_bands(lattice, params, kw + sgn * 0.1 * Vec3::Unit(d), cfg)
                .frequencies;
        if (gap_near_frequency(fp, omega, 2.0) < 10.0 * opts.gap_tol) opens = false;
      }
    if (!opens) continue;
    minima.push_back(kw);
    nodes.push_back(make_node(kw, gap, omega, pair));
  }
  return nodes;
}

int chirality(const LatticeGeometry& lattice, const ArrayParams& params,
              const WeylNode& node, double sphere_radius, int mesh_n,
              const EwaldConfig& cfg) {
  const Vec3 center = node.k_position * M_PI;
  const int band = std::max(node.band_lower, 0);
  const int nth = mesh_n, nph = mesh_n;

  std::vector<Eigen::VectorXcd> states(static_cast<size_t>(nth + 1) * nph);
  auto state_at = [&](const Vec3& k) {
    const BandSolution sol = solve_bands(lattice, params, k, cfg, true);
    return Eigen::VectorXcd(sol.coefficients.col(band));
  };
  for (int i = 0; i <= nth; ++i) {
    const double th = M_PI * i / nth;
    if (i == 0 || i == nth) {
      // poles evaluated once and shared: merged pole plaquettes stay gauge-consistent
      const Vec3 k = center + sphere_radius * Vec3(0, 0, std::cos(th));
      const Eigen::VectorXcd u = state_at(k);
      for (int j = 0; j < nph; ++j) states[i * nph + j] = u;
      continue;
    }
    for (int j = 0; j < nph; ++j) {
      const double ph = 2.0 * M_PI * j / nph;
      const Vec3 n(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                   std::cos(th));
      states[i * nph + j] = state_at(center + sphere_radius * n);
    }
  }

  auto link = [&](int ia, int ja, int ib, int jb) {
    const cplx ov = states[ia * nph + (ja % nph)].dot(states[ib * nph + (jb % nph)]);
    return ov / std::abs(ov);
  };

  double total = 0.0;
  for (int i = 0; i < nth; ++i)
    for (int j = 0; j < nph; ++j) {
      const cplx hol = link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) *
                       link(i + 1, j + 1, i, j + 1) * link(i, j + 1, i, j);
      total += std::arg(hol);
    }
  const double q = total / (2.0 * M_PI);
  const double rounded = std::round(q);
  if (std::abs(q - rounded) > 0.1)
    throw inconclusive_flux_error(
        "chirality: Berry flux not quantized (adjust radius or mesh)", q);
  return static_cast<int>(rounded);
}

std::pair<bool, double> isolation_check(const LatticeGeometry& lattice,
                                        const ArrayParams& params, WeylNode& node,
                                        double window, int grid_n,
                                        double threshold_frac, const EwaldConfig& cfg,
                                        int workers) {
  const auto freqs = bz_grid_frequencies(lattice, params, grid_n, cfg, workers);
  const double count = window_state_count(freqs, node.weyl_frequency, window);
  const int nb = static_cast<int>(freqs.front().size());
  node.dos_window_count = count;
  node.isolated = count <= threshold_frac * nb;
  return {node.isolated, count};
}

} // namespace weylarray
