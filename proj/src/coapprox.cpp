#include "mink/coapprox.hpp"

#include "mink/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mink {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Frame {
  const Gauge& g;
  const Flat& k;
  Vec x, y;
  Vec xp, yp;  // x - base, y - base

  Frame(const Gauge& gauge, const Flat& flat, const Vec& yy, const Vec& xx)
      : g(gauge), k(flat), x(xx), y(yy), xp(xx - flat.base()), yp(yy - flat.base()) {}

  double value(const Vec& s) const {
    const Vec z = k.point_at(s);
    return g.eval(x - z) - g.eval(y - z);
  }
};

/// Limit of gauge(w0 - t*u) - gauge(w1 - t*u) as t -> infinity. For
/// polytopal gauges the limiting facet set makes this exact including ties;
/// otherwise it is the directional-derivative identity grad(-u).(w0 - w1).
double recession_limit(const Gauge& g, const Vec& u, const Vec& w0, const Vec& w1) {
  if (g.is_polytopal()) {
    const auto& normals = g.halfspaces();
    double beta_min = kInf;
    for (const Vec& a : normals) beta_min = std::min(beta_min, a.dot(u));
    double m0 = -kInf, m1 = -kInf;
    for (const Vec& a : normals) {
      if (a.dot(u) > beta_min + 1e-9 * (1.0 + std::abs(beta_min))) continue;
      m0 = std::max(m0, a.dot(w0));
      m1 = std::max(m1, a.dot(w1));
    }
    return m0 - m1;
  }
  return g.gradient(-u).dot(w0 - w1);
}

/// Recession cuts for the master program; x-independent.
struct RecessionCuts {
  // per limiting facet i: row a_i with right-hand side max_j in M a_j.(y-p)
  std::vector<std::pair<int, double>> facet_rows;
  // affine terms lin.t + b bounding v from below (smooth gauges)
  std::vector<std::pair<Vec, double>> affine_terms;
};

RecessionCuts build_recession_cuts(const Gauge& g, const Flat& k, const Vec& y) {
  RecessionCuts cuts;
  const Vec yp = y - k.base();
  for (int j = 0; j < k.dim(); ++j) {
    for (double sgn : {1.0, -1.0}) {
      const Vec dir = sgn * k.onb().col(j);
      if (g.is_polytopal()) {
        const auto& normals = g.halfspaces();
        double beta_min = kInf;
        for (const Vec& a : normals) beta_min = std::min(beta_min, a.dot(dir));
        std::vector<int> active;
        double rhs = -kInf;
        for (int i = 0; i < static_cast<int>(normals.size()); ++i) {
          if (normals[i].dot(dir) > beta_min + 1e-9 * (1.0 + std::abs(beta_min))) continue;
          active.push_back(i);
          rhs = std::max(rhs, normals[i].dot(yp));
        }
        for (int i : active) cuts.facet_rows.push_back({i, rhs});
      } else {
        const Vec grad = g.gradient(-dir);
        cuts.affine_terms.push_back({Vec(k.onb().transpose() * grad), grad.dot(-yp)});
      }
    }
  }
  return cuts;
}

struct Candidate {
  double value = -kInf;
  Vec s;
  bool asymptotic = false;
};

int grid_per_axis(int k, const SearchBudget& budget) {
  int n;
  if (k == 1)
    n = 2049;
  else if (k == 2)
    n = 65;
  else if (k == 3)
    n = 25;
  else
    n = 9;
  const double cap = std::pow(static_cast<double>(std::max(budget.max_grid_evals, 16)),
                              1.0 / std::max(k, 1));
  return std::max(3, std::min(n, static_cast<int>(cap)));
}

void local_refine(const Frame& f, Candidate& c, double radius, int rounds) {
  const int k = f.k.dim();
  Vec s = c.s;
  double best = c.value;
  double r = radius;
  for (int it = 0; it < 3 * rounds && r > 1e-14 * (1.0 + s.norm()); ++it) {
    bool improved = false;
    std::vector<int> idx(k, -1);
    while (true) {
      Vec cand = s;
      bool all_zero = true;
      for (int j = 0; j < k; ++j) {
        cand[j] += idx[j] * r;
        if (idx[j] != 0) all_zero = false;
      }
      if (!all_zero) {
        const double v = f.value(cand);
        if (v > best + 1e-16) {
          best = v;
          s = cand;
          improved = true;
          break;
        }
      }
      int j = 0;
      for (; j < k; ++j) {
        if (++idx[j] <= 1) break;
        idx[j] = -1;
      }
      if (j == k) break;
    }
    if (!improved) r *= 0.5;
  }
  c.value = best;
  c.s = s;
}

/// Sup candidates for V at x: lattice, refined local maxima, polytopal
/// breakpoint/arrangement points, contact points, recession limits.
std::vector<Candidate> gather_candidates(const Frame& f, const SearchBudget& budget) {
  const int k = f.k.dim();
  const Mat& u = f.k.onb();
  const double r = budget.range_scale * (1.0 + f.x.norm() + f.y.norm());
  std::vector<Candidate> out;

  // (a) lattice over [-R, R]^k, keeping the best few cells
  const int n = grid_per_axis(k, budget);
  auto worse = [](const Candidate& a, const Candidate& b) { return a.value > b.value; };
  std::vector<Candidate> top;
  std::vector<int> idx(k, 0);
  while (true) {
    Vec s(k);
    for (int j = 0; j < k; ++j) s[j] = -r + 2.0 * r * idx[j] / (n - 1);
    top.push_back({f.value(s), s, false});
    std::push_heap(top.begin(), top.end(), worse);
    if (top.size() > 4) {
      std::pop_heap(top.begin(), top.end(), worse);
      top.pop_back();
    }
    int j = 0;
    for (; j < k; ++j) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
    if (j == k) break;
  }

  // (b) local refinement
  const double cell = 2.0 * r / (n - 1);
  for (Candidate& c : top) {
    local_refine(f, c, cell, budget.refine_rounds);
    out.push_back(c);
  }

  // Contact candidates.
  for (const Vec& z : {f.x, f.k.project(f.y), f.k.base()})
    out.push_back({f.value(f.k.parameters_of(z)), f.k.parameters_of(z), false});

  // (c) exact piecewise-linear candidates
  if (f.g.is_polytopal()) {
    const auto& normals = f.g.halfspaces();
    const int m = static_cast<int>(normals.size());
    if (k == 1) {
      const Vec dir = u.col(0);
      std::vector<double> alpha0(m), alpha1(m), beta(m);
      for (int i = 0; i < m; ++i) {
        alpha0[i] = normals[i].dot(f.xp);
        alpha1[i] = normals[i].dot(f.yp);
        beta[i] = normals[i].dot(dir);
      }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          const double db = beta[i] - beta[j];
          if (std::abs(db) <= 1e-12) continue;
          for (const double num : {alpha0[i] - alpha0[j], alpha1[i] - alpha1[j]}) {
            const double s0 = num / db;
            if (std::abs(s0) > 1e7) continue;
            Vec s(1);
            s[0] = s0;
            out.push_back({f.value(s), s, false});
          }
        }
    } else if (k == 2 && m <= 16) {
      struct Line {
        double nx, ny, c;
      };
      std::vector<Line> lines;
      for (int term = 0; term < 2; ++term) {
        const Vec& w = term == 0 ? f.xp : f.yp;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) {
            const Vec nn = u.transpose() * (normals[j] - normals[i]);
            const double c = normals[j].dot(w) - normals[i].dot(w);
            if (nn.norm() > 1e-12) lines.push_back({nn[0], nn[1], c});
          }
      }
      for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          const double det = lines[i].nx * lines[j].ny - lines[i].ny * lines[j].nx;
          if (std::abs(det) <= 1e-12) continue;
          Vec s(2);
          s[0] = (lines[i].c * lines[j].ny - lines[j].c * lines[i].ny) / det;
          s[1] = (lines[i].nx * lines[j].c - lines[j].nx * lines[i].c) / det;
          if (s.cwiseAbs().maxCoeff() > 1e7) continue;
          out.push_back({f.value(s), s, false});
        }
    }
  }

  // (d) recession directions: doubling probe plus the exact limit. The
  // probe stops at 1e8 regardless: beyond that the difference of two
  // t-sized gauge values is dominated by rounding.
  for (int j = 0; j < k; ++j) {
    for (double sgn : {1.0, -1.0}) {
      const Vec dir = sgn * u.col(j);
      double t = std::max(r, 1.0);
      Vec s = Vec::Zero(k);
      s[j] = sgn * t;
      double prev = f.value(s);
      for (int it = 0; it < 40 && t < 1e8; ++it) {
        t *= 2.0;
        s[j] = sgn * t;
        const double v = f.value(s);
        const bool stable = std::abs(v - prev) < 1e-10;
        prev = v;
        if (stable) break;
      }
      out.push_back({prev, s, true});

      Candidate lim;
      lim.value = recession_limit(f.g, dir, f.xp, f.yp);
      lim.s = Vec::Zero(k);
      lim.s[j] = sgn * 1024.0 * r;
      lim.asymptotic = true;
      out.push_back(lim);
    }
  }
  return out;
}

Candidate best_candidate(const std::vector<Candidate>& cands) {
  Candidate best = cands.front();
  for (const Candidate& c : cands)
    if (c.value > best.value) best = c;
  return best;
}

struct MasterResult {
  Vec t;
  double value = -kInf;
  bool reliable = false;  // certified lower bound on min V
};

std::vector<LinearConstraint> master_rows(const Gauge& g, const Flat& k, const Vec& y,
                                          const std::vector<Vec>& zs,
                                          const RecessionCuts& rec) {
  const int kk = k.dim();
  const int n = kk + 1;
  const auto& normals = g.halfspaces();
  const Mat& u = k.onb();
  const Vec& p = k.base();
  std::vector<LinearConstraint> rows;
  rows.reserve(zs.size() * normals.size() + rec.facet_rows.size());
  for (const Vec& z : zs) {
    const double rhs_gauge = g.eval(y - z);
    for (const Vec& a : normals) {
      Vec row(n);
      row.head(kk) = u.transpose() * a;
      row[kk] = -1.0;
      rows.push_back({row, rhs_gauge - a.dot(p - z)});
    }
  }
  for (const auto& [i, rhs] : rec.facet_rows) {
    Vec row(n);
    row.head(kk) = u.transpose() * normals[i];
    row[kk] = -1.0;
    rows.push_back({row, rhs});
  }
  return rows;
}

MasterResult solve_master_lp(const Gauge& g, const Flat& k, const Vec& y,
                             const std::vector<Vec>& zs, const RecessionCuts& rec, double box) {
  const int kk = k.dim();
  const int n = kk + 1;
  auto rows = master_rows(g, k, y, zs, rec);
  Vec c = Vec::Zero(n);
  c[n - 1] = 1.0;
  MasterResult out;
  for (int attempt = 0; attempt < 2; ++attempt) {
    LpResult r = solve_lp(c, rows, box);
    if (r.status != LpStatus::Optimal) return out;
    out.t = r.x.head(kk);
    out.value = r.value;
    out.reliable = !r.hit_box;
    if (out.reliable) break;
    box *= 100.0;
  }
  return out;
}

Vec lexicographic_polish(const Gauge& g, const Flat& k, const Vec& y,
                         const std::vector<Vec>& zs, const RecessionCuts& rec, double v_opt,
                         double box) {
  const int kk = k.dim();
  const int n = kk + 1;
  auto rows = master_rows(g, k, y, zs, rec);
  {
    Vec row = Vec::Zero(n);
    row[kk] = 1.0;
    rows.push_back({row, v_opt + 1e-11 * (1.0 + std::abs(v_opt))});
  }
  Vec t(kk);
  for (int j = 0; j < kk; ++j) {
    Vec c = Vec::Zero(n);
    c[j] = 1.0;
    LpResult r = solve_lp(c, rows, box);
    if (r.status != LpStatus::Optimal) return Vec();
    t[j] = r.x[j];
    Vec hi = Vec::Zero(n), lo = Vec::Zero(n);
    hi[j] = 1.0;
    lo[j] = -1.0;
    const double slack = 1e-11 * (1.0 + std::abs(t[j]));
    rows.push_back({hi, t[j] + slack});
    rows.push_back({lo, -t[j] + slack});
  }
  return t;
}

MasterResult solve_master_smooth(const Gauge& g, const Flat& k, const Vec& y,
                                 const std::vector<Vec>& zs, const RecessionCuts& rec,
                                 const std::vector<Vec>& seeds, double range) {
  const int kk = k.dim();
  std::vector<double> cz;
  cz.reserve(zs.size());
  for (const Vec& z : zs) cz.push_back(g.eval(y - z));

  auto fval = [&](const Vec& t) {
    const Vec x = k.point_at(t);
    double best = -kInf;
    for (std::size_t i = 0; i < zs.size(); ++i)
      best = std::max(best, g.eval(x - zs[i]) - cz[i]);
    for (const auto& [lin, b] : rec.affine_terms) best = std::max(best, lin.dot(t) + b);
    return best;
  };
  auto fsub = [&](const Vec& t) -> Vec {
    const Vec x = k.point_at(t);
    double best = -kInf;
    Vec grad = Vec::Zero(kk);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double v = g.eval(x - zs[i]) - cz[i];
      if (v > best) {
        best = v;
        const Vec w = x - zs[i];
        grad = w.norm() > 1e-13 ? Vec(k.onb().transpose() * g.gradient(w)) : Vec(Vec::Zero(kk));
      }
    }
    for (const auto& [lin, b] : rec.affine_terms) {
      if (lin.dot(t) + b > best) {
        best = lin.dot(t) + b;
        grad = lin;
      }
    }
    return grad;
  };

  Vec t = Vec::Zero(kk);
  double best = kInf;
  auto consider = [&](const Vec& s) {
    const double v = fval(s);
    if (v < best) {
      best = v;
      t = s;
    }
  };
  for (const Vec& s : seeds) consider(s);
  {
    const int n = 17;
    std::vector<int> idx(kk, 0);
    while (true) {
      Vec s(kk);
      for (int j = 0; j < kk; ++j) s[j] = -range + 2.0 * range * idx[j] / (n - 1);
      consider(s);
      int j = 0;
      for (; j < kk; ++j) {
        if (++idx[j] < n) break;
        idx[j] = 0;
      }
      if (j == kk) break;
    }
  }

  std::vector<Vec> dirs;
  for (int j = 0; j < kk; ++j) {
    Vec e = Vec::Zero(kk);
    e[j] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  if (kk >= 2) {
    for (int a = 0; a < kk; ++a)
      for (int b = a + 1; b < kk; ++b) {
        Vec d = Vec::Zero(kk);
        d[a] = M_SQRT1_2;
        d[b] = M_SQRT1_2;
        dirs.push_back(d);
        dirs.push_back(-d);
        d[b] = -M_SQRT1_2;
        dirs.push_back(d);
        dirs.push_back(-d);
      }
  }

  double radius = std::max(range / 8.0, 1e-6);
  for (int it = 0; it < 500 && radius > 1e-13 * (1.0 + t.norm()); ++it) {
    bool improved = false;
    const Vec sub = fsub(t);
    if (sub.norm() > 1e-13) {
      const Vec d = -sub / sub.norm();
      for (double step : {radius * 4.0, radius, radius * 0.25}) {
        if (fval(t + step * d) < best - 1e-16) {
          t = t + step * d;
          best = fval(t);
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (const Vec& d : dirs) {
        if (fval(t + radius * d) < best - 1e-16) {
          t = t + radius * d;
          best = fval(t);
          improved = true;
          break;
        }
      }
    }
    if (!improved) radius *= 0.5;
  }

  MasterResult out;
  out.t = t;
  out.value = best;
  out.reliable = false;
  return out;
}

void push_z(std::vector<Vec>& zs, const Vec& z) {
  for (const Vec& q : zs)
    if ((q - z).norm() <= 1e-10 * (1.0 + z.norm())) return;
  zs.push_back(z);
}

}  // namespace

std::pair<double, ViolationProbe> violation(const Gauge& g, const Flat& k, const Vec& y,
                                            const Vec& x, const SearchBudget& budget) {
  require(g.dim() == k.ambient_dim() && g.dim() == static_cast<int>(y.size()) &&
              g.dim() == static_cast<int>(x.size()),
          "violation: dimension mismatch");
  require(k.contains(x, 1e-9 * (1.0 + x.norm())), "violation: x is not on K");
  Frame f(g, k, y, x);
  const Candidate best = best_candidate(gather_candidates(f, budget));
  ViolationProbe probe;
  probe.z = k.point_at(best.s);
  probe.value = best.value;
  probe.is_asymptotic = best.asymptotic;
  return {best.value, probe};
}

double audit_violation(const Gauge& g, const Flat& k, const Vec& y, const Vec& x,
                       int z_samples, std::uint64_t seed) {
  require(k.contains(x, 1e-8 * (1.0 + x.norm())), "audit: x is not on K");
  Frame f(g, k, y, x);
  const int kk = k.dim();
  const double r = 8.0 * (1.0 + x.norm() + y.norm());
  double worst = -kInf;

  const int lattice = std::max(2, (z_samples * 3) / 5);
  const int per_axis = std::max(2, static_cast<int>(std::floor(std::pow(lattice, 1.0 / kk))));
  std::vector<int> idx(kk, 0);
  while (true) {
    Vec s(kk);
    for (int j = 0; j < kk; ++j) s[j] = -r + 2.0 * r * idx[j] / (per_axis - 1);
    worst = std::max(worst, f.value(s));
    int j = 0;
    for (; j < kk; ++j) {
      if (++idx[j] < per_axis) break;
      idx[j] = 0;
    }
    if (j == kk) break;
  }

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int nrand = std::max(0, z_samples - lattice);
  for (int i = 0; i < nrand; ++i) worst = std::max(worst, f.value(rng.in_box(kk, r)));

  for (int j = 0; j < kk; ++j)
    for (double sgn : {1.0, -1.0})
      worst = std::max(worst, recession_limit(g, sgn * k.onb().col(j), f.xp, f.yp));
  return worst;
}

CoapproxResult coapprox_solve(const Gauge& g, const Flat& k, const Vec& y, double tol,
                              const SearchBudget& budget) {
  require(tol > 0.0, "coapprox: tolerance must be positive");
  require(g.dim() == k.ambient_dim() && g.dim() == static_cast<int>(y.size()),
          "coapprox: dimension mismatch");

  CoapproxResult res;
  if (k.contains(y, 1e-9 * (1.0 + y.norm()))) {
    res.status = CoapproxStatus::NonEmpty;
    res.witness = y;
    res.violation_at_witness = 0.0;
    return res;
  }

  const int kk = k.dim();
  const Mat& u = k.onb();
  const Vec& p = k.base();
  const double range = budget.range_scale * (1.0 + y.norm() + p.norm());
  const double box = std::max(1e5, 1e3 * range);
  const bool polytopal = g.is_polytopal();

  std::vector<Vec> zs;
  push_z(zs, k.project(y));
  push_z(zs, p);
  for (int j = 0; j < kk; ++j)
    for (double c : {-range, -0.25 * range, 0.25 * range, range}) push_z(zs, p + c * u.col(j));

  const RecessionCuts rec = build_recession_cuts(g, k, y);

  std::vector<Vec> seeds;
  seeds.push_back(k.parameters_of(k.project(y)));
  if (g.kind() == GaugeKind::Ellipsoid) {
    const Mat& m = g.metric();
    const Mat umu = u.transpose() * m * u;
    seeds.push_back(Vec(umu.ldlt().solve(u.transpose() * (m * (y - p)))));
  }

  double lower = -kInf;
  bool lower_valid = false;
  double v_best = kInf;
  Vec x_best;
  double master_last = -kInf;
  int rounds = 0;
  int polish_rounds = 0;

  for (; rounds < budget.max_rounds; ++rounds) {
    MasterResult master;
    if (polytopal) {
      master = solve_master_lp(g, k, y, zs, rec, box);
      if (master.t.size() == 0) break;
      if (master.reliable) {
        lower = std::max(lower, master.value);
        lower_valid = true;
      }
    } else {
      master = solve_master_smooth(g, k, y, zs, rec, seeds, range);
      seeds.push_back(master.t);
      // Keep the projection seeds, rotate out the oldest iterate.
      if (seeds.size() > 6) seeds.erase(seeds.begin() + 2);
    }
    master_last = master.value;

    const Vec xhat = k.point_at(master.t);
    Frame f(g, k, y, xhat);
    const auto cands = gather_candidates(f, budget);
    const Candidate best = best_candidate(cands);
    if (best.value < v_best) {
      v_best = best.value;
      x_best = xhat;
    }

    if (polytopal && lower_valid && lower > 2.0 * tol) {
      res.status = CoapproxStatus::Empty;
      res.emptiness_lower_bound = lower;
      res.violation_at_witness = v_best;
      res.active_z = zs;
      res.iterations = rounds + 1;
      return res;
    }

    const double gap = v_best - master.value;
    const bool tight = gap <= std::max(1e-10 * (1.0 + std::abs(v_best)), tol * 1e-4);

    if (v_best <= tol && (tight || !polytopal || polish_rounds >= 40)) {
      if (polytopal) {
        const Vec t = lexicographic_polish(g, k, y, zs, rec, master.value, box);
        if (t.size() == kk) {
          const Vec xlex = k.point_at(t);
          Frame flex(g, k, y, xlex);
          const double vlex = best_candidate(gather_candidates(flex, budget)).value;
          if (vlex <= tol) {
            x_best = xlex;
            v_best = vlex;
          }
        }
      }
      res.status = CoapproxStatus::NonEmpty;
      res.witness = x_best;
      res.violation_at_witness = v_best;
      res.active_z = zs;
      res.iterations = rounds + 1;
      return res;
    }
    if (v_best <= tol) ++polish_rounds;

    // Add the strongest few new probes as cuts.
    std::vector<Candidate> sorted = cands;
    std::sort(sorted.begin(), sorted.end(),
              [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    const std::size_t before = zs.size();
    int added = 0;
    for (const Candidate& c : sorted) {
      if (c.asymptotic) continue;  // recession behavior is in the cuts already
      push_z(zs, k.point_at(c.s));
      if (++added >= 3) break;
    }
    if (zs.size() == before) break;  // oracle exhausted
  }

  res.iterations = rounds;
  res.active_z = zs;
  res.violation_at_witness = v_best;
  if (v_best <= tol) {
    res.status = CoapproxStatus::NonEmpty;
    res.witness = x_best;
    return res;
  }
  if (polytopal && lower_valid && lower > 2.0 * tol) {
    res.status = CoapproxStatus::Empty;
    res.emptiness_lower_bound = lower;
    return res;
  }
  if (!polytopal && master_last > std::max(100.0 * tol, 2.0 * tol)) {
    // Wide-margin heuristic certificate: the sampled relaxation optimum is
    // trusted only far from the decision threshold.
    res.status = CoapproxStatus::Empty;
    res.emptiness_lower_bound = master_last * (1.0 - 1e-6);
    return res;
  }
  res.status = CoapproxStatus::Undecided;
  if (x_best.size() > 0) res.witness = x_best;
  return res;
}

std::pair<Vec, double> best_approx(const Gauge& g, const Flat& k, const Vec& y) {
  require(g.dim() == k.ambient_dim() && g.dim() == static_cast<int>(y.size()),
          "best_approx: dimension mismatch");
  if (k.contains(y, 1e-9 * (1.0 + y.norm()))) return {y, 0.0};

  const int kk = k.dim();
  const Mat& u = k.onb();
  const Vec& p = k.base();

  if (g.is_polytopal()) {
    const auto& normals = g.halfspaces();
    const int n = kk + 1;
    std::vector<LinearConstraint> rows;
    for (const Vec& a : normals) {
      Vec row(n);
      row.head(kk) = u.transpose() * a;
      row[kk] = -1.0;
      rows.push_back({row, a.dot(y - p)});
    }
    Vec c = Vec::Zero(n);
    c[kk] = 1.0;
    const double box = 1e6 * (1.0 + y.norm() + p.norm());
    LpResult r = solve_lp(c, rows, box);
    require(r.status == LpStatus::Optimal, "best_approx: program failed");
    const double t_opt = r.value;
    {
      Vec row = Vec::Zero(n);
      row[kk] = 1.0;
      rows.push_back({row, t_opt + 1e-11 * (1.0 + std::abs(t_opt))});
    }
    Vec s(kk);
    for (int j = 0; j < kk; ++j) {
      Vec cj = Vec::Zero(n);
      cj[j] = 1.0;
      LpResult rj = solve_lp(cj, rows, box);
      require(rj.status == LpStatus::Optimal, "best_approx: tie-break program failed");
      s[j] = rj.x[j];
      Vec hi = Vec::Zero(n), lo = Vec::Zero(n);
      hi[j] = 1.0;
      lo[j] = -1.0;
      const double slack = 1e-11 * (1.0 + std::abs(s[j]));
      rows.push_back({hi, s[j] + slack});
      rows.push_back({lo, -s[j] + slack});
    }
    const Vec x = k.point_at(s);
    return {x, g.eval(x - y)};
  }

  // Smooth: cyclic golden-section descent on the convex profile.
  auto fval = [&](const Vec& s) { return g.eval(p + u * s - y); };
  const double range = 8.0 * (1.0 + y.norm() + p.norm());
  Vec s = k.parameters_of(k.project(y));
  const double phi = 0.6180339887498949;
  for (int pass = 0; pass < 60; ++pass) {
    double moved = 0.0;
    for (int j = 0; j < kk; ++j) {
      double a = s[j] - range, b = s[j] + range;
      for (int it = 0; it < 90; ++it) {
        const double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        Vec s1 = s, s2 = s;
        s1[j] = x1;
        s2[j] = x2;
        if (fval(s1) <= fval(s2))
          b = x2;
        else
          a = x1;
      }
      const double nj = 0.5 * (a + b);
      moved = std::max(moved, std::abs(nj - s[j]));
      s[j] = nj;
    }
    if (moved < 1e-13 * (1.0 + s.norm())) break;
  }
  const Vec x = k.point_at(s);
  return {x, fval(s)};
}

Vec functional_coapprox_2d(const Gauge& g, const Flat& k, const Vec& y) {
  require(g.dim() == 2 && k.ambient_dim() == 2 && k.dim() == 1,
          "functional route: planar gauge and a line required");
  require(is_norm(g, 1e-9), "functional route: gauge must be a norm");
  require(k.contains(Vec::Zero(2), 1e-9), "functional route: line must pass through 0");
  const Vec u = k.onb().col(0);
  const Vec x0 = g.boundary_point(u);

  Vec f;
  if (g.is_polytopal()) {
    // Any supporting normal at x0 works; ball vertices just carry a cone of
    // them.
    const auto& normals = g.halfspaces();
    f = normals.front();
    double best = -kInf;
    for (const Vec& a : normals) {
      const double v = a.dot(x0);
      if (v > best) {
        best = v;
        f = a;
      }
    }
  } else if (g.kind() == GaugeKind::Euclidean) {
    f = x0;
  } else if (g.kind() == GaugeKind::Ellipsoid) {
    f = g.metric() * x0;
  } else {
    f = g.gradient(x0);
  }
  const double fu = f.dot(u);
  require(std::abs(fu) > 1e-12, "functional route: degenerate supporting functional");
  return (f.dot(y) / fu) * u;
}

}  // namespace mink
