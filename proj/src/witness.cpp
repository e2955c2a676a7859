#include "mink/witness.hpp"

#include "mink/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mink {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
  while (a <= -M_PI) a += 2.0 * M_PI;
  while (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

/// Outer-normal directions of supporting lines at boundary point p, as an
/// angular arc [lo, hi] (width < pi). Polygonal route: active half-space
/// normals.
struct Arc {
  double lo = 0.0, hi = 0.0;
  bool valid = false;
};

Arc normal_cone_arc(const Gauge& g, const Vec& p) {
  Arc arc;
  std::vector<double> angles;
  for (const Vec& a : g.halfspaces()) {
    if (a.dot(p) >= 1.0 - 1e-9 * (1.0 + p.norm())) angles.push_back(std::atan2(a[1], a[0]));
  }
  if (angles.empty()) return arc;
  const double ref = angles.front();
  double lo = 0.0, hi = 0.0;
  for (double t : angles) {
    const double rel = wrap_angle(t - ref);
    lo = std::min(lo, rel);
    hi = std::max(hi, rel);
  }
  arc.lo = ref + lo;
  arc.hi = ref + hi;
  arc.valid = true;
  return arc;
}

/// Smooth fallback: unit outer normal at boundary point p from the gauge
/// gradient.
Vec smooth_normal(const Gauge& g, const Vec& p) {
  Vec n = g.gradient(p);
  return n / n.norm();
}

struct SInterval {
  double lo = 0.0, hi = 0.0;
  bool valid = false;
};

/// { s : gauge(q0 + s*w) <= 1 }; exact interval arithmetic for polytopes,
/// golden bracketing plus bisection otherwise.
SInterval chord_interval(const Gauge& g, const Vec& q0, const Vec& w) {
  SInterval out;
  if (g.is_polytopal()) {
    double lo = -kInf, hi = kInf;
    for (const Vec& a : g.halfspaces()) {
      const double c = a.dot(w);
      const double r = 1.0 - a.dot(q0);
      if (c > 1e-13) {
        hi = std::min(hi, r / c);
      } else if (c < -1e-13) {
        lo = std::max(lo, r / c);
      } else if (r < 0.0) {
        return out;
      }
    }
    if (lo > hi || !std::isfinite(lo) || !std::isfinite(hi)) return out;
    out.lo = lo;
    out.hi = hi;
    out.valid = true;
    return out;
  }
  auto f = [&](double s) { return g.eval(q0 + s * w); };
  // Convex profile: locate the minimum, then bisect both crossings of 1.
  const double phi = 0.6180339887498949;
  double a = -64.0, b = 64.0;
  for (int it = 0; it < 200; ++it) {
    const double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    if (f(x1) <= f(x2))
      b = x2;
    else
      a = x1;
  }
  const double smin = 0.5 * (a + b);
  if (f(smin) > 1.0) return out;
  auto crossing = [&](double inside, double dir) {
    double step = 1.0;
    double outp = inside + dir * step;
    while (f(outp) <= 1.0 && step < 1e12) {
      step *= 2.0;
      outp = inside + dir * step;
    }
    double loc = inside, hic = outp;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (loc + hic);
      if (f(mid) <= 1.0)
        loc = mid;
      else
        hic = mid;
    }
    return 0.5 * (loc + hic);
  };
  out.lo = crossing(smin, -1.0);
  out.hi = crossing(smin, +1.0);
  out.valid = true;
  return out;
}

// Angular separation of the supporting cones at the endpoints (negative
// when they admit a common parallel supporting line, i.e. the chord is an
// affine diameter).
double chord_cone_gap(const Gauge& g, const Vec& x1, const Vec& x0, bool& exact) {
  if (g.is_polytopal()) {
    exact = true;
    const Arc c1 = normal_cone_arc(g, x1);
    const Arc c0 = normal_cone_arc(g, x0);
    if (!c1.valid || !c0.valid) return -1.0;
    const Arc c0_neg{c0.lo + M_PI, c0.hi + M_PI, true};
    const double wa = c1.hi - c1.lo;
    const double wb = c0_neg.hi - c0_neg.lo;
    double s = wrap_angle(c0_neg.lo - c1.lo);
    if (s < 0) s += 2.0 * M_PI;
    // Gap on either side of the circle between the two arcs.
    const double gap = std::min(s - wa, 2.0 * M_PI - (s + wb));
    return gap;
  }
  exact = false;
  const Vec n1 = smooth_normal(g, x1);
  const Vec n0 = smooth_normal(g, x0);
  // Parallel supporting lines <=> opposite normals.
  const double cosang = std::clamp(-n1.dot(n0), -1.0, 1.0);
  return std::acos(cosang) - 1e-3;
}

std::vector<Vec> chord_scan_directions(const Gauge& g) {
  std::vector<Vec> dirs;
  if (g.has_ball_vertices()) {
    const auto& verts = g.ball_vertices();
    for (const Vec& v : verts)
      if (v.norm() > 1e-12) dirs.push_back(v / v.norm());
    const int nv = static_cast<int>(verts.size());
    for (int i = 0; i < nv; ++i) {
      const Vec mid = 0.5 * (verts[i] + verts[(i + 1) % nv]);
      if (mid.norm() > 1e-12) dirs.push_back(mid / mid.norm());
    }
  }
  // Strided enumeration of the angular grid so that any prefix of the scan
  // already covers the circle.
  for (int i = 0; i < 720; ++i) {
    const int j = (i * 289) % 720;  // gcd(289, 720) == 1
    const double th = 2.0 * M_PI * j / 720.0;
    Vec u(2);
    u << std::cos(th), std::sin(th);
    dirs.push_back(u);
  }
  return dirs;
}

Vec rot90(const Vec& w) {
  Vec n(2);
  n << -w[1], w[0];
  return n / n.norm();
}

}  // namespace

std::optional<Chord> find_non_diameter_chord(const Gauge& g) {
  require(g.dim() == 2, "chord search is planar");
  if (is_norm(g, 1e-9)) return std::nullopt;
  for (const Vec& u : chord_scan_directions(g)) {
    const Vec x1 = g.boundary_point(u);
    const Vec x0 = g.boundary_point(-u);
    bool exact = true;
    if (chord_cone_gap(g, x1, x0, exact) > 1e-7) return Chord{x0, x1, exact};
  }
  throw std::runtime_error("chord scan exhausted without certification");
}

ChordWitness construct_witness_from_chord(const Gauge& g, const Vec& x0, const Vec& x1) {
  require(g.dim() == 2, "witness construction is planar");
  const Vec w = x1 - x0;
  require(w.norm() > 1e-12, "degenerate chord");
  const Vec n = rot90(w);

  // Extent of the ball along the transversal direction.
  const double tau_hi = g.support(n);
  const double tau_lo = -g.support(-n);

  auto chord_len = [&](double tau) -> double {
    const SInterval iv = chord_interval(g, tau * n, w);
    return iv.valid ? iv.hi - iv.lo : -1.0;
  };

  // Width profiles of convex bodies are concave on their support interval.
  const double phi = 0.6180339887498949;
  double a = tau_lo, b = tau_hi;
  for (int it = 0; it < 220; ++it) {
    const double x1t = b - phi * (b - a), x2t = a + phi * (b - a);
    if (chord_len(x1t) >= chord_len(x2t))
      b = x2t;
    else
      a = x1t;
  }
  const double tau_star = 0.5 * (a + b);
  const SInterval best = chord_interval(g, tau_star * n, w);
  const SInterval base = chord_interval(g, Vec::Zero(2), w);
  require(best.valid && base.valid, "witness construction: chord family degenerated");

  const double lambda = (best.hi - best.lo) / (base.hi - base.lo);
  if (lambda < 1.0 + 1e-6)
    throw std::runtime_error("witness construction: maximal parallel chord is not longer");

  ChordWitness out;
  out.x0 = base.lo * w;  // == x0 up to arithmetic
  out.x1 = base.hi * w;
  out.y0 = tau_star * n + best.lo * w;
  out.y1 = tau_star * n + best.hi * w;
  out.lambda = lambda;
  out.k = Flat(out.x0, {out.x1 - out.x0});
  out.target = out.y1;
  return out;
}

std::optional<ChordWitness> construct_witness(const Gauge& g) {
  require(g.dim() == 2, "witness construction is planar");
  if (is_norm(g, 1e-9)) return std::nullopt;
  // A certified chord arbitrarily close to an affine diameter gives a
  // parallel-chord factor barely above 1 and razor-thin margins everywhere
  // downstream, so the scan keeps the first chord whose factor is solidly
  // above 1 and falls back to the best one seen.
  constexpr double kSolidLambda = 1.05;
  std::optional<ChordWitness> best;
  int examined = 0;
  for (const Vec& u : chord_scan_directions(g)) {
    const Vec x1 = g.boundary_point(u);
    const Vec x0 = g.boundary_point(-u);
    bool exact = true;
    if (chord_cone_gap(g, x1, x0, exact) <= 1e-7) continue;
    ++examined;
    ChordWitness w;
    try {
      w = construct_witness_from_chord(g, x0, x1);
    } catch (const std::exception&) {
      continue;
    }
    if (w.lambda >= kSolidLambda) return w;
    if (!best || w.lambda > best->lambda) best = std::move(w);
    if (examined >= 64) break;
  }
  if (best) return best;
  throw std::runtime_error("chord scan found no usable witness chord");
}

bool verify_witness(const Gauge& g, const ChordWitness& w, std::string* report) {
  std::ostringstream log;
  bool ok = true;
  auto step = [&](const char* name, bool pass) {
    log << (pass ? "[ok]   " : "[FAIL] ") << name << "\n";
    ok = ok && pass;
    return pass;
  };

  const double sphere_tol = 1e-8;
  step("x0 on unit sphere", std::abs(g.eval(w.x0) - 1.0) <= sphere_tol);
  step("x1 on unit sphere", std::abs(g.eval(w.x1) - 1.0) <= sphere_tol);
  step("y0 on unit sphere", std::abs(g.eval(w.y0) - 1.0) <= sphere_tol);
  step("y1 on unit sphere", std::abs(g.eval(w.y1) - 1.0) <= sphere_tol);

  // 0 in [x0, x1].
  {
    const Vec d = w.x1 - w.x0;
    const double t = d.squaredNorm() > 0 ? -w.x0.dot(d) / d.squaredNorm() : -1.0;
    const bool inside =
        t >= -1e-8 && t <= 1.0 + 1e-8 && (w.x0 + t * d).norm() <= 1e-8 * (1.0 + d.norm());
    step("0 in [x0, x1]", inside);
  }

  // Parallel chord relation.
  {
    const Vec lhs = w.y1 - w.y0;
    const Vec rhs = w.lambda * (w.x1 - w.x0);
    step("y1 - y0 == lambda (x1 - x0)", (lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()));
    step("lambda > 1", w.lambda > 1.0 + 1e-6);
  }

  if (!w.k) {
    step("witness line present", false);
  } else {
    const Flat& k = *w.k;
    // K meets the ball exactly in the chord.
    const Vec u = k.onb().col(0);
    const SInterval iv = chord_interval(g, k.base(), u);
    if (step("K meets ball", iv.valid)) {
      const double s0 = k.parameters_of(w.x0)[0];
      const double s1 = k.parameters_of(w.x1)[0];
      const double lo = std::min(s0, s1), hi = std::max(s0, s1);
      step("K cap ball == [x0, x1]",
           std::abs(iv.lo - lo) <= 1e-7 * (1.0 + std::abs(lo)) &&
               std::abs(iv.hi - hi) <= 1e-7 * (1.0 + std::abs(hi)));

      // Translated chord interval must be disjoint (1D arithmetic).
      const double shift = u.dot(w.y1 - w.y0);
      const double tlo = iv.lo + shift, thi = iv.hi + shift;
      step("translate disjoint", tlo > iv.hi + 1e-12 || thi < iv.lo - 1e-12);
    }

    const CoapproxResult r = coapprox_solve(g, k, w.target);
    step("coapprox certificate empty", r.status == CoapproxStatus::Empty);
  }

  if (report) *report = log.str();
  return ok;
}

SeparationOutcome extend_to_hyperplane(const Gauge& g, const Flat& x0, const Vec& y0,
                                       std::uint64_t seed) {
  SeparationOutcome out;
  require(g.dim() == 3 && x0.ambient_dim() == 3 && x0.dim() == 1,
          "separation: ambient dimension 3 with a line required");
  require(x0.contains(Vec::Zero(3), 1e-9), "separation: line must pass through 0");

  const CoapproxResult pre = coapprox_solve(g, x0, y0);
  if (pre.status != CoapproxStatus::Empty) {
    out.status = SeparationStatus::PreconditionFailed;
    out.detail = "coapprox on X0 did not certify emptiness";
    return out;
  }

  // Audit family Z on X0: lattice + seeded + the solver's own active points.
  std::vector<Vec> zfam = x0.sample(8.0 * (1.0 + y0.norm()), 41, seed ^ 0x51ab12cdULL);
  for (const Vec& z : pre.active_z) zfam.push_back(z);

  std::vector<double> radii;
  radii.reserve(zfam.size());
  for (const Vec& z : zfam) radii.push_back(g.eval(y0 - z));
  auto feasible = [&](const Vec& q) {
    for (std::size_t i = 0; i < zfam.size(); ++i)
      if (g.eval(q - zfam[i]) > radii[i] + 1e-9) return false;
    return true;
  };

  // Sample the intersection set C. y0 is always a member; the set is often
  // lower-dimensional (every ball touches y0), so box rejection draws are
  // combined with directional probes that bisect the feasible ray length
  // from y0.
  std::vector<Vec> cs;
  cs.push_back(y0);
  Rng rng(seed ^ 0xc5a11e5ULL);
  double window = 2.0 * (1.0 + y0.norm());
  auto probe_direction = [&](const Vec& d) {
    double lo = 0.0, hi = window;
    if (!feasible(y0 + 1e-7 * d)) return;
    while (feasible(y0 + hi * d) && hi < 64.0 * window) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(y0 + mid * d) ? lo : hi) = mid;
    }
    if (lo > 1e-7) {
      for (double f : {1.0, 0.75, 0.5, 0.25, 0.125, 0.0625})
        cs.push_back(y0 + f * lo * d);
    }
  };
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Zero(3);
    e[i] = 1.0;
    probe_direction(e);
    probe_direction(-e);
  }
  for (int i = 0; i < 600; ++i) probe_direction(rng.unit_vector(3));

  for (int attempt = 0; attempt < 2; ++attempt) {
    const int draws = attempt == 0 ? 8000 : 16000;
    const double scales[] = {1.0 / 64.0, 1.0 / 16.0, 1.0 / 4.0, 1.0};
    for (int i = 0; i < draws && static_cast<int>(cs.size()) < 400; ++i) {
      const Vec q = y0 + rng.in_box(3, window * scales[i % 4]);
      if (feasible(q)) cs.push_back(q);
    }
    if (static_cast<int>(cs.size()) >= 10) break;
    window *= 2.0;
  }
  if (static_cast<int>(cs.size()) < 10) {
    out.status = SeparationStatus::Undecided;
    out.detail = "too few feasible samples of C";
    return out;
  }

  // Smallest enlargement index: 1/n0 below the gauge distance from every
  // sample of C to X0.
  double dmin = kInf;
  for (const Vec& c : cs) dmin = std::min(dmin, best_approx(g, x0, c).second);
  if (!(dmin > 0.0)) {
    out.status = SeparationStatus::Undecided;
    out.detail = "a sample of C touches X0";
    return out;
  }
  int n0 = -1;
  for (int n = 1; n <= 64; ++n) {
    if (1.0 / n <= dmin + 1e-15) {
      n0 = n;
      break;
    }
  }
  if (n0 < 0) {
    out.status = SeparationStatus::Undecided;
    out.detail = "no enlargement index up to 64 clears X0";
    return out;
  }

  // Margin-maximizing functional: h.u = 0 on the line, h <= -margin on the
  // C samples and on points of their 1/(2n)-ball enlargement (the open
  // enlargement is what the functional must clear), |h|_inf <= 1. Variables
  // (eta1, eta2, margin) in the orthogonal complement basis of the line
  // direction.
  const Vec u0 = x0.onb().col(0);
  Eigen::FullPivHouseholderQR<Mat> qr((Mat(u0)));
  const Mat q = qr.matrixQ();
  const Vec b1 = q.col(1), b2 = q.col(2);

  std::vector<Vec> ball_dirs;
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Zero(3);
    e[i] = 1.0;
    ball_dirs.push_back(g.boundary_point(e));
    ball_dirs.push_back(g.boundary_point(-e));
  }
  for (int i = 0; i < 8; ++i) {
    Vec d(3);
    d << (i & 1 ? 1 : -1), (i & 2 ? 1 : -1), (i & 4 ? 1 : -1);
    ball_dirs.push_back(g.boundary_point(d));
  }

  std::vector<int> enlargement_steps;
  for (int n = n0; n < 64; n *= 2) enlargement_steps.push_back(n);
  enlargement_steps.push_back(64);

  LpResult lp;
  int n_used = n0;
  for (int n : enlargement_steps) {
    std::vector<LinearConstraint> rows;
    auto add_point = [&](const Vec& cpt) {
      Vec row(3);
      row << b1.dot(cpt), b2.dot(cpt), 1.0;
      rows.push_back({row, 0.0});
    };
    for (const Vec& c : cs) {
      add_point(c);
      for (const Vec& b : ball_dirs) add_point(c + b / (2.0 * n));
    }
    for (int i = 0; i < 3; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec row(3);
        row << sgn * b1[i], sgn * b2[i], 0.0;
        rows.push_back({row, 1.0});
      }
    }
    Vec obj(3);
    obj << 0.0, 0.0, -1.0;  // maximize margin
    lp = solve_lp(obj, rows, 1e4);
    n_used = n;
    if (lp.status == LpStatus::Optimal && lp.x[2] > 1e-10) break;
  }
  n0 = n_used;
  if (lp.status != LpStatus::Optimal || lp.x[2] <= 1e-10) {
    out.status = SeparationStatus::Undecided;
    out.detail = "no separating functional with positive margin";
    return out;
  }

  SeparationWitness w;
  w.h.coeffs = lp.x[0] * b1 + lp.x[1] * b2;
  w.h.alpha = g.support(w.h.coeffs);
  w.margin = lp.x[2];
  w.n0 = n0;
  w.y0 = y0;
  w.x0_line = x0;
  w.c_samples = cs;

  // Null space of h containing the line direction.
  Vec other = b1 * lp.x[1] - b2 * lp.x[0];
  if (other.norm() <= 1e-12) {
    out.status = SeparationStatus::Undecided;
    out.detail = "degenerate functional";
    return out;
  }
  other /= other.norm();
  w.hyperplane = Flat(Vec::Zero(3), {u0, other});

  out.status = SeparationStatus::Ok;
  out.witness = std::move(w);
  return out;
}

}  // namespace mink
