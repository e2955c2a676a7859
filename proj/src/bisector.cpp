#include "mink/bisector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

namespace mink {
namespace {

double fvalue(const Gauge& g, const Vec& x, const Vec& y, const Vec& z) {
  return g.eval(z - x) - g.eval(z - y);
}

BisectorLabel label_of(double f, double band_tol) {
  if (f > band_tol) return BisectorLabel::Positive;
  if (f < -band_tol) return BisectorLabel::Negative;
  return BisectorLabel::Band;
}

// Edge key: (axis, ix, iy) with axis 0 for horizontal (to ix+1) and 1 for
// vertical (to iy+1).
using EdgeKey = std::tuple<int, int, int>;

struct Stitcher {
  std::map<EdgeKey, Vec> crossing;
  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
};

}  // namespace

const char* label_name(BisectorLabel l) {
  switch (l) {
    case BisectorLabel::Negative:
      return "NEGATIVE";
    case BisectorLabel::Positive:
      return "POSITIVE";
    case BisectorLabel::Band:
      return "BAND";
  }
  return "?";
}

BisectorLabel classify_point(const Gauge& g, const Vec& x, const Vec& y, const Vec& z,
                             double band_tol) {
  require(g.dim() == 2, "bisector sampling is planar");
  return label_of(fvalue(g, x, y, z), band_tol);
}

double default_band_tol(const Gauge& g, const Vec& min_corner, const Vec& max_corner) {
  const double diag = (max_corner - min_corner).norm();
  double lip = 0.0;
  if (g.is_polytopal()) {
    for (const Vec& a : g.halfspaces()) lip = std::max(lip, a.norm());
  } else {
    for (int i = 0; i < 256; ++i) {
      const double th = 2.0 * M_PI * i / 256.0;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      lip = std::max(lip, g.eval(u));
    }
  }
  return 1e-3 * diag * std::max(lip, 1e-6);
}

BisectorSample sample_bisector(const Gauge& g, const Vec& x, const Vec& y,
                               const Vec& min_corner, const Vec& max_corner, int nx, int ny,
                               double band_tol) {
  require(g.dim() == 2, "bisector sampling is planar");
  require(nx >= 2 && ny >= 2, "resolution must be at least 2x2");
  require(max_corner[0] > min_corner[0] && max_corner[1] > min_corner[1],
          "window is degenerate");

  BisectorSample s;
  s.min_corner = min_corner;
  s.max_corner = max_corner;
  s.nx = nx;
  s.ny = ny;
  s.x = x;
  s.y = y;
  s.band_tol = band_tol > 0.0 ? band_tol : default_band_tol(g, min_corner, max_corner);

  const double hx = (max_corner[0] - min_corner[0]) / (nx - 1);
  const double hy = (max_corner[1] - min_corner[1]) / (ny - 1);
  auto at = [&](int ix, int iy) {
    Vec z(2);
    z << min_corner[0] + ix * hx, min_corner[1] + iy * hy;
    return z;
  };

  s.values.resize(static_cast<std::size_t>(nx) * ny);
  s.labels.resize(s.values.size());
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const double f = fvalue(g, x, y, at(ix, iy));
      s.values[static_cast<std::size_t>(iy) * nx + ix] = f;
      s.labels[static_cast<std::size_t>(iy) * nx + ix] = label_of(f, s.band_tol);
    }

  // Marching squares on sign(F), zeros counted as positive; crossing points
  // are interpolated and then polished along the grid edge until within the
  // band.
  auto val = [&](int ix, int iy) { return s.values[static_cast<std::size_t>(iy) * nx + ix]; };
  auto positive = [&](double f) { return f >= 0.0; };

  Stitcher st;
  auto edge_point = [&](int axis, int ix, int iy) -> const Vec& {
    const EdgeKey key{axis, ix, iy};
    auto it = st.crossing.find(key);
    if (it != st.crossing.end()) return it->second;
    const Vec p0 = at(ix, iy);
    const Vec p1 = axis == 0 ? at(ix + 1, iy) : at(ix, iy + 1);
    const double f0 = val(ix, iy);
    const double f1 = axis == 0 ? val(ix + 1, iy) : val(ix, iy + 1);
    double t = f0 / (f0 - f1);
    t = std::clamp(t, 0.0, 1.0);
    Vec p = p0 + t * (p1 - p0);
    double fp = fvalue(g, x, y, p);
    // Bisection polish along the edge.
    if (std::abs(fp) > 0.5 * s.band_tol) {
      double lo = 0.0, hi = 1.0;
      double flo = f0;
      for (int it2 = 0; it2 < 60; ++it2) {
        const double mid = 0.5 * (lo + hi);
        const Vec pm = p0 + mid * (p1 - p0);
        const double fm = fvalue(g, x, y, pm);
        if (std::abs(fm) <= 0.25 * s.band_tol) {
          p = pm;
          fp = fm;
          break;
        }
        if (positive(fm) == positive(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        p = pm;
      }
    }
    return st.crossing.emplace(key, std::move(p)).first->second;
  };

  auto add_segment = [&](int axis_a, int ixa, int iya, int axis_b, int ixb, int iyb) {
    edge_point(axis_a, ixa, iya);
    edge_point(axis_b, ixb, iyb);
    st.segments.push_back({{axis_a, ixa, iya}, {axis_b, ixb, iyb}});
  };

  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double f00 = val(ix, iy), f10 = val(ix + 1, iy);
      const double f01 = val(ix, iy + 1), f11 = val(ix + 1, iy + 1);
      int code = 0;
      if (positive(f00)) code |= 1;
      if (positive(f10)) code |= 2;
      if (positive(f11)) code |= 4;
      if (positive(f01)) code |= 8;
      if (code == 0 || code == 15) continue;

      // Edges: bottom (0,ix,iy), right (1,ix+1,iy), top (0,ix,iy+1),
      // left (1,ix,iy).
      switch (code) {
        case 1:
        case 14:
          add_segment(0, ix, iy, 1, ix, iy);
          break;
        case 2:
        case 13:
          add_segment(0, ix, iy, 1, ix + 1, iy);
          break;
        case 4:
        case 11:
          add_segment(1, ix + 1, iy, 0, ix, iy + 1);
          break;
        case 8:
        case 7:
          add_segment(0, ix, iy + 1, 1, ix, iy);
          break;
        case 3:
        case 12:
          add_segment(1, ix, iy, 1, ix + 1, iy);
          break;
        case 6:
        case 9:
          add_segment(0, ix, iy, 0, ix, iy + 1);
          break;
        case 5:
        case 10: {
          // Saddle: split by the center sign.
          const Vec center = 0.5 * (at(ix, iy) + at(ix + 1, iy + 1));
          const bool center_pos = positive(fvalue(g, x, y, center));
          if (center_pos == (code == 5)) {
            // Negative corners isolated on the 10/01 diagonal.
            add_segment(0, ix, iy, 1, ix + 1, iy);
            add_segment(0, ix, iy + 1, 1, ix, iy);
          } else {
            add_segment(0, ix, iy, 1, ix, iy);
            add_segment(1, ix + 1, iy, 0, ix, iy + 1);
          }
          break;
        }
        default:
          break;
      }
    }
  }

  // Stitch segments into polylines by shared edge keys.
  std::map<EdgeKey, std::vector<int>> incident;
  for (int i = 0; i < static_cast<int>(st.segments.size()); ++i) {
    incident[st.segments[i].first].push_back(i);
    incident[st.segments[i].second].push_back(i);
  }
  std::vector<bool> used(st.segments.size(), false);
  for (int i = 0; i < static_cast<int>(st.segments.size()); ++i) {
    if (used[i]) continue;
    std::vector<EdgeKey> chain{st.segments[i].first, st.segments[i].second};
    used[i] = true;
    // Extend forward then backward.
    for (int dir = 0; dir < 2; ++dir) {
      while (true) {
        const EdgeKey tip = dir == 0 ? chain.back() : chain.front();
        int next = -1;
        for (int sidx : incident[tip])
          if (!used[sidx]) {
            next = sidx;
            break;
          }
        if (next < 0) break;
        used[next] = true;
        const auto& seg = st.segments[next];
        const EdgeKey other = seg.first == tip ? seg.second : seg.first;
        if (dir == 0)
          chain.push_back(other);
        else
          chain.insert(chain.begin(), other);
      }
    }
    std::vector<Vec> poly;
    poly.reserve(chain.size());
    for (const EdgeKey& k : chain) poly.push_back(st.crossing.at(k));
    s.contours.push_back(std::move(poly));
  }
  return s;
}

namespace {

void write_or_throw(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_bisector_csv(const BisectorSample& s, const std::string& path) {
  std::string out = "zx,zy,F,label\n";
  const double hx = (s.max_corner[0] - s.min_corner[0]) / (s.nx - 1);
  const double hy = (s.max_corner[1] - s.min_corner[1]) / (s.ny - 1);
  for (int iy = 0; iy < s.ny; ++iy) {
    for (int ix = 0; ix < s.nx; ++ix) {
      const std::size_t id = static_cast<std::size_t>(iy) * s.nx + ix;
      out += format_double(s.min_corner[0] + ix * hx);
      out += ',';
      out += format_double(s.min_corner[1] + iy * hy);
      out += ',';
      out += format_double(s.values[id]);
      out += ',';
      out += label_name(s.labels[id]);
      out += '\n';
    }
  }
  write_or_throw(path, out);
}

void emit_bisector_svg(const BisectorSample& s, const std::string& path) {
  // y axis flipped so the picture is upright.
  const double hx = (s.max_corner[0] - s.min_corner[0]) / (s.nx - 1);
  const double hy = (s.max_corner[1] - s.min_corner[1]) / (s.ny - 1);
  auto fd = [](double v) { return format_double(v, 9); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  out += fd(s.min_corner[0] - 0.5 * hx) + " " + fd(-s.max_corner[1] - 0.5 * hy) + " " +
         fd(s.max_corner[0] - s.min_corner[0] + hx) + " " +
         fd(s.max_corner[1] - s.min_corner[1] + hy) + "\">\n";

  auto color = [](BisectorLabel l) {
    switch (l) {
      case BisectorLabel::Negative:
        return "#9ecae1";
      case BisectorLabel::Positive:
        return "#fdae6b";
      case BisectorLabel::Band:
        return "#cccccc";
    }
    return "#000000";
  };

  // Row-merged cells, one rect per run of equal labels.
  for (int iy = 0; iy < s.ny; ++iy) {
    int ix = 0;
    while (ix < s.nx) {
      const BisectorLabel l = s.labels[static_cast<std::size_t>(iy) * s.nx + ix];
      int run = 1;
      while (ix + run < s.nx && s.labels[static_cast<std::size_t>(iy) * s.nx + ix + run] == l)
        ++run;
      const double x0 = s.min_corner[0] + (ix - 0.5) * hx;
      const double ytop = s.min_corner[1] + (iy + 0.5) * hy;
      out += "<rect x=\"" + fd(x0) + "\" y=\"" + fd(-ytop) + "\" width=\"" + fd(run * hx) +
             "\" height=\"" + fd(hy) + "\" fill=\"" + color(l) + "\"/>\n";
      ix += run;
    }
  }

  for (const auto& poly : s.contours) {
    out += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"" +
           fd(0.35 * std::min(hx, hy)) + "\" points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (i) out += ' ';
      out += fd(poly[i][0]) + "," + fd(-poly[i][1]);
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  write_or_throw(path, out);
}

}  // namespace mink
