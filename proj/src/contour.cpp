#include "weylarray/contour.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace weylarray {

namespace {

// Unique id per grid edge; seam edges canonicalized onto their twins.
// Horizontal edge h(iu,iv): (iu,iv)-(iu+1,iv); vertical v(iu,iv): (iu,iv)-(iu,iv+1).
struct EdgeIds {
  int nu, nv;
  bool tu, tv;
  long long horizontal(int iu, int iv) const {
    if (tv && iv == nv - 1) iv = 0;
    return 2LL * (static_cast<long long>(iu) * nv + iv);
  }
  long long vertical(int iu, int iv) const {
    if (tu && iu == nu - 1) iu = 0;
    return 2LL * (static_cast<long long>(iu) * nv + iv) + 1;
  }
};

struct Crossing {
  double u, v;
};

double interp(double f0, double f1, double level) {
  const double d = f1 - f0;
  if (std::abs(d) < 1e-300) return 0.5;
  double t = (level - f0) / d;
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  return t;
}

} // namespace

std::vector<PlanePolyline> marching_squares(const GridField& field, double level) {
  const int nu = field.nu, nv = field.nv;
  if (nu < 2 || nv < 2) throw std::invalid_argument("marching_squares: grid too small");
  const EdgeIds ids{nu, nv, field.torus_u, field.torus_v};

  std::map<long long, Crossing> points;
  std::vector<std::pair<long long, long long>> segments;

  auto emit = [&](long long ea, Crossing ca, long long eb, Crossing cb) {
    points.emplace(ea, ca);
    points.emplace(eb, cb);
    segments.emplace_back(ea, eb);
  };

  for (int iu = 0; iu + 1 < nu; ++iu)
    for (int iv = 0; iv + 1 < nv; ++iv) {
      const double f00 = field.at(iu, iv);
      const double f10 = field.at(iu + 1, iv);
      const double f01 = field.at(iu, iv + 1);
      const double f11 = field.at(iu + 1, iv + 1);
      int code = 0;
      if (f00 >= level) code |= 1;
      if (f10 >= level) code |= 2;
      if (f11 >= level) code |= 4;
      if (f01 >= level) code |= 8;
      if (code == 0 || code == 15) continue;

      // crossings on the four cell edges
      const long long eb = ids.horizontal(iu, iv);       // bottom
      const long long et = ids.horizontal(iu, iv + 1);   // top
      const long long el = ids.vertical(iu, iv);         // left
      const long long er = ids.vertical(iu + 1, iv);     // right
      const Crossing cb{iu + interp(f00, f10, level), static_cast<double>(iv)};
      const Crossing ct{iu + interp(f01, f11, level), static_cast<double>(iv + 1)};
      const Crossing cl{static_cast<double>(iu), iv + interp(f00, f01, level)};
      const Crossing cr{static_cast<double>(iu + 1), iv + interp(f10, f11, level)};

      switch (code) {
        case 1:  case 14: emit(el, cl, eb, cb); break;
        case 2:  case 13: emit(eb, cb, er, cr); break;
        case 4:  case 11: emit(er, cr, et, ct); break;
        case 8:  case 7:  emit(et, ct, el, cl); break;
        case 3:  case 12: emit(el, cl, er, cr); break;
        case 6:  case 9:  emit(eb, cb, et, ct); break;
        case 5: {
          const double center = 0.25 * (f00 + f10 + f01 + f11);
          if (center >= level) { emit(el, cl, et, ct); emit(eb, cb, er, cr); }
          else                 { emit(el, cl, eb, cb); emit(er, cr, et, ct); }
          break;
        }
        case 10: {
          const double center = 0.25 * (f00 + f10 + f01 + f11);
          if (center >= level) { emit(el, cl, eb, cb); emit(er, cr, et, ct); }
          else                 { emit(el, cl, et, ct); emit(eb, cb, er, cr); }
          break;
        }
        default: break;
      }
    }

  // polyline assembly through shared edges
  std::multimap<long long, size_t> by_edge;
  for (size_t s = 0; s < segments.size(); ++s) {
    by_edge.emplace(segments[s].first, s);
    by_edge.emplace(segments[s].second, s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<PlanePolyline> lines;

  auto walk = [&](size_t start, long long start_edge) {
    PlanePolyline line;
    long long edge = start_edge;
    size_t seg = start;
    line.points.push_back({points.at(edge).u, points.at(edge).v});
    for (;;) {
      used[seg] = true;
      const long long other =
          (segments[seg].first == edge) ? segments[seg].second : segments[seg].first;
      line.points.push_back({points.at(other).u, points.at(other).v});
      edge = other;
      size_t nxt = segments.size();
      auto range = by_edge.equal_range(edge);
      for (auto it = range.first; it != range.second; ++it)
        if (!used[it->second]) { nxt = it->second; break; }
      if (nxt == segments.size()) break;
      seg = nxt;
    }
    if (edge == start_edge && line.points.size() > 2) line.closed = true;
    return line;
  };

  // open chains first: start from edges of degree 1
  std::map<long long, int> degree;
  for (const auto& s : segments) {
    degree[s.first]++;
    degree[s.second]++;
  }
  for (size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    long long start_edge = -1;
    if (degree[segments[s].first] == 1) start_edge = segments[s].first;
    else if (degree[segments[s].second] == 1) start_edge = segments[s].second;
    if (start_edge >= 0) lines.push_back(walk(s, start_edge));
  }
  for (size_t s = 0; s < segments.size(); ++s)
    if (!used[s]) lines.push_back(walk(s, segments[s].first));  // cycles

  return lines;
}

} // namespace weylarray
