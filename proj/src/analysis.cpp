#include "mink/analysis.hpp"

#include "mink/witness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace mink {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Vec embed3(const Vec& v2) {
  Vec v(3);
  v << v2[0], v2[1], 0.0;
  return v;
}

std::string point_str(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + ")";
}

}  // namespace

void SuiteReport::margin(const std::string& name, double v) {
  auto it = worst_margins.find(name);
  if (it == worst_margins.end() || v > it->second) worst_margins[name] = v;
}

double l1_gauge_eval(const TruncatedSequence& s) {
  double sup = 0.0;
  double sum = 0.0, comp = 0.0;
  for (double v : s.entries) {
    require(std::isfinite(v), "sequence entries must be finite");
    sup = std::max(sup, std::abs(v));
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return std::max(sup, sum + comp);
}

SuiteReport l1_example_check(int n_max, int m) {
  require(n_max >= 2, "n_max must be >= 2");
  require(m >= n_max, "m must be >= n_max");
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "sequence-gauge-example";

  for (int n = 1; n <= n_max; ++n) {
    TruncatedSequence xn;
    xn.entries.assign(n, 1.0 / n);
    const double gx = l1_gauge_eval(xn);
    ++rep.cases;
    if (std::abs(gx - 1.0) > 1e-15)
      rep.fail("gauge(x_" + std::to_string(n) + ")", "value " + format_double(gx));
    rep.margin("xn_deviation", std::abs(gx - 1.0));

    TruncatedSequence mxn;
    mxn.entries.assign(n, -1.0 / n);
    const double gmx = l1_gauge_eval(mxn);
    ++rep.cases;
    if (gmx != 1.0 / n)
      rep.fail("gauge(-x_" + std::to_string(n) + ")", "value " + format_double(gmx));
  }

  TruncatedSequence x0;
  for (int i = 0; i < m; ++i) x0.entries.push_back(std::ldexp(1.0, -i));
  const double gx0 = l1_gauge_eval(x0);
  const double closed = 2.0 - std::ldexp(1.0, 1 - m);
  ++rep.cases;
  if (gx0 != closed)
    rep.fail("gauge(x0)", "value " + format_double(gx0) + " expected " + format_double(closed));

  // gauge(x0 - x_n) stays inside the unit ball while converging to 1.
  for (int n = 1; n <= n_max; ++n) {
    TruncatedSequence diff;
    for (int i = 0; i < m; ++i) {
      double v = std::ldexp(1.0, -i);
      if (i < n) v -= 1.0 / n;
      diff.entries.push_back(v);
    }
    const double gd = l1_gauge_eval(diff);
    ++rep.cases;
    if (gd > 1.0 + 1e-15) rep.fail("gauge(x0-x_" + std::to_string(n) + ") <= 1",
                                   "value " + format_double(gd));
    rep.margin("x0_minus_xn_gap", 1.0 - gd);
  }

  rep.wall_ms = ms_since(t0);
  return rep;
}

double parallelogram_defect(const Gauge& g, int sample_count, std::uint64_t seed) {
  require(is_norm(g, 1e-9), "parallelogram defect requires a norm");
  const int d = g.dim();
  std::vector<std::pair<Vec, Vec>> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec ei = Vec::Zero(d), ej = Vec::Zero(d);
      ei[i] = 1.0;
      ej[j] = 1.0;
      pairs.push_back({ei, ej});
      pairs.push_back({ei + ej, ei - ej});
    }
  Rng rng(seed);
  while (static_cast<int>(pairs.size()) < sample_count)
    pairs.push_back({rng.in_box(d, 2.0), rng.in_box(d, 2.0)});

  double defect = 0.0;
  for (const auto& [u, v] : pairs) {
    const double a = g.eval(u + v), b = g.eval(u - v), cu = g.eval(u), cv = g.eval(v);
    defect = std::max(defect, std::abs(a * a + b * b - 2.0 * cu * cu - 2.0 * cv * cv));
  }
  return defect;
}

SuiteReport projection_coapprox_check(const Gauge& g, int trials, std::uint64_t seed) {
  require(g.kind() == GaugeKind::Euclidean || g.kind() == GaugeKind::Ellipsoid,
          "projection check requires an inner-product gauge");
  require(parallelogram_defect(g, 200, 7) <= 1e-8,
          "projection check requires an inner-product gauge");
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "projection-coapproximation";
  const int d = g.dim();
  const Mat m = g.kind() == GaugeKind::Ellipsoid ? g.metric() : Mat(Mat::Identity(d, d));
  Rng rng(seed ^ 0xab5c0deULL);

  const double tol = 1e-6;
  for (int t = 0; t < trials; ++t) {
    const int k = 1 + (t % (d - 1));
    const Flat flat = random_flat(rng, d, k);
    const Vec y = rng.in_box(d, 3.0);

    const Mat umu = flat.onb().transpose() * m * flat.onb();
    const Vec params = umu.ldlt().solve(flat.onb().transpose() * (m * (y - flat.base())));
    const Vec z0 = flat.point_at(params);

    const double v0 = audit_violation(g, flat, y, z0, 4000, seed + t);
    ++rep.cases;
    if (v0 > tol)
      rep.fail("projection passes audit @" + std::to_string(t),
               "violation " + format_double(v0) + " flat base " + point_str(flat.base()) +
                   " y " + point_str(y));
    rep.margin("projection_violation", v0);

    const Vec zp = z0 + 1e-2 * flat.onb().col(0);
    const double v1 = audit_violation(g, flat, y, zp, 4000, seed + t);
    ++rep.cases;
    if (!(v1 > 0.0))
      rep.fail("perturbed projection fails audit @" + std::to_string(t),
               "violation " + format_double(v1));
    rep.margin("perturbed_violation_negated", -v1);
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

Gauge random_symmetric_polygon(Rng& rng, int min_vertices, int max_vertices) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int nv = min_vertices + rng.uniform_int(max_vertices - min_vertices + 1);
    std::vector<double> angles;
    for (int i = 0; i < nv; ++i) angles.push_back(rng.uniform(0.0, M_PI));
    std::sort(angles.begin(), angles.end());
    std::vector<Vec> pts;
    for (double th : angles) {
      const double r = rng.uniform(0.5, 1.5);
      Vec p(2);
      p << r * std::cos(th), r * std::sin(th);
      pts.push_back(p);
      pts.push_back(-p);
    }
    try {
      Gauge g = Gauge::from_vertices(2, pts);
      if (is_norm(g, 1e-9)) return g;
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error("failed to draw a symmetric polygon gauge");
}

Gauge random_asymmetric_polygon(Rng& rng, int min_vertices, int max_vertices) {
  for (int attempt = 0; attempt < 128; ++attempt) {
    const int nv = min_vertices + rng.uniform_int(max_vertices - min_vertices + 1);
    std::vector<double> angles;
    for (int i = 0; i < nv; ++i) angles.push_back(rng.uniform(0.0, 2.0 * M_PI));
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 2.0 * M_PI - angles.back();
    for (int i = 1; i < nv; ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
    if (max_gap > 2.6) continue;
    std::vector<Vec> pts;
    for (double th : angles) {
      const double r = rng.uniform(0.4, 1.6);
      Vec p(2);
      p << r * std::cos(th), r * std::sin(th);
      pts.push_back(p);
    }
    try {
      Gauge g = Gauge::from_vertices(2, pts);
      if (!is_norm(g, 1e-9)) return g;
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error("failed to draw an asymmetric polygon gauge");
}

Gauge random_polytope_3d(Rng& rng, bool symmetric) {
  for (int attempt = 0; attempt < 128; ++attempt) {
    const int n = 6 + rng.uniform_int(5);
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) {
      const Vec u = rng.unit_vector(3);
      const double r = rng.uniform(0.4, 1.6);
      pts.push_back(r * u);
      if (symmetric) pts.push_back(-r * u);
    }
    try {
      Gauge g = Gauge::from_vertices(3, pts);
      if (symmetric == is_norm(g, 1e-9)) return g;
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error("failed to draw a 3D polytope gauge");
}

Mat random_spd(Rng& rng, int dim) {
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
  Mat m = a.transpose() * a + 0.3 * Mat::Identity(dim, dim);
  return m;
}

Flat random_flat(Rng& rng, int ambient_dim, int flat_dim, double scale) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec> dirs;
    for (int i = 0; i < flat_dim; ++i) dirs.push_back(rng.unit_vector(ambient_dim));
    Mat m(ambient_dim, flat_dim);
    for (int i = 0; i < flat_dim; ++i) m.col(i) = dirs[i];
    Eigen::JacobiSVD<Mat> svd(m);
    if (svd.singularValues().minCoeff() < 0.3) continue;
    return Flat(rng.in_box(ambient_dim, scale), dirs);
  }
  throw std::runtime_error("failed to draw a flat");
}

SuiteReport verify_theorems(const TheoremSuiteConfig& cfg) {
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "theorem-suites";
  const double tol = cfg.tol;

  if (cfg.run_a) {
    // Symmetric planar gauges: every sampled line admits a certified best
    // coapproximation.
    Rng rng(cfg.seed ^ 0xa11ce5ULL);
    for (int i = 0; i < cfg.a_gauges; ++i) {
      const Gauge g = random_symmetric_polygon(rng);
      for (int j = 0; j < cfg.a_pairs; ++j) {
        const Flat k = random_flat(rng, 2, 1);
        const Vec y = rng.in_box(2, 3.0);
        ++rep.cases;
        const CoapproxResult r = coapprox_solve(g, k, y, tol);
        if (r.status != CoapproxStatus::NonEmpty) {
          rep.fail("A:" + std::to_string(i) + ":" + std::to_string(j),
                   "status not nonempty; y " + point_str(y));
          continue;
        }
        const double audit = audit_violation(g, k, y, *r.witness, 10000, cfg.seed + j);
        rep.margin("A_audit_violation", audit);
        if (audit > tol)
          rep.fail("A:" + std::to_string(i) + ":" + std::to_string(j),
                   "audit violation " + format_double(audit));
      }
    }
  }

  if (cfg.run_b) {
    // Asymmetric planar gauges: the chord witness exists and verifies.
    Rng rng(cfg.seed ^ 0xb0b5ULL);
    for (int i = 0; i < cfg.b_gauges; ++i) {
      const Gauge g = random_asymmetric_polygon(rng);
      ++rep.cases;
      const auto w = construct_witness(g);
      if (!w) {
        rep.fail("B:" + std::to_string(i), "no witness for an asymmetric gauge");
        continue;
      }
      rep.margin("B_lambda_minus_1_negated", -(w->lambda - 1.0));
      std::string log;
      if (!verify_witness(g, *w, &log))
        rep.fail("B:" + std::to_string(i), "witness failed verification:\n" + log);
    }
  }

  if (cfg.run_c) {
    // Witness lines extend to non-coproximinal planes in the 3D product.
    Rng rng(cfg.seed ^ 0xcafeULL);
    for (int i = 0; i < cfg.c_gauges; ++i) {
      const Gauge g2 = random_asymmetric_polygon(rng);
      ++rep.cases;
      const auto w = construct_witness(g2);
      if (!w) {
        rep.fail("C:" + std::to_string(i), "no planar witness");
        continue;
      }
      const Gauge g3 = Gauge::product_with_interval(g2);
      const Flat x0(embed3(w->x0), {embed3(w->x1 - w->x0)});
      const Vec y0 = embed3(w->target);
      const SeparationOutcome ext = extend_to_hyperplane(g3, x0, y0, cfg.seed + i);
      if (ext.status != SeparationStatus::Ok) {
        rep.fail("C:" + std::to_string(i), "separation failed: " + ext.detail);
        continue;
      }
      rep.margin("C_margin_negated", -ext.witness->margin);
      const CoapproxResult r = coapprox_solve(g3, *ext.witness->hyperplane, y0, tol);
      if (r.status != CoapproxStatus::Empty)
        rep.fail("C:" + std::to_string(i), "returned plane is not certified non-coproximinal");
    }
  }

  if (cfg.run_d) {
    // 3D: inner-product balls keep every plane coproximinal; the max norm
    // admits an emptiness certificate under randomized search.
    Rng rng(cfg.seed ^ 0xd1ceULL);
    const Gauge euclid = Gauge::euclidean(3);
    const Gauge ellip = Gauge::ellipsoid(random_spd(rng, 3));
    for (const Gauge* g : {&euclid, &ellip}) {
      for (int i = 0; i < cfg.d_planes; ++i) {
        const Flat k = random_flat(rng, 3, 2);
        const Vec y = rng.in_box(3, 3.0);
        ++rep.cases;
        const CoapproxResult r = coapprox_solve(*g, k, y, tol);
        if (r.status != CoapproxStatus::NonEmpty) {
          rep.fail("D:ip:" + std::to_string(i), "plane not certified coproximinal");
          continue;
        }
        const double audit = audit_violation(*g, k, y, *r.witness, 10000, cfg.seed + i);
        rep.margin("D_audit_violation", audit);
        if (audit > tol) rep.fail("D:ip:" + std::to_string(i), "audit " + format_double(audit));
      }
    }
    const Gauge linf = Gauge::lp(3, std::numeric_limits<double>::infinity());
    ++rep.cases;
    int found_at = -1;
    for (int i = 0; i < cfg.d_draws; ++i) {
      const Flat k = random_flat(rng, 3, 2);
      const Vec y = rng.in_box(3, 3.0);
      const CoapproxResult r = coapprox_solve(linf, k, y, tol);
      if (r.status == CoapproxStatus::Empty) {
        found_at = i;
        rep.margin("D_empty_lower_bound", *r.emptiness_lower_bound);
        break;
      }
    }
    if (found_at < 0)
      rep.fail("D:linf", "inconclusive: no emptiness certificate in " +
                             std::to_string(cfg.d_draws) + " draws");
  }

  rep.wall_ms = ms_since(t0);
  return rep;
}

}  // namespace mink
