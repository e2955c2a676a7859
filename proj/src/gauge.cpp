#include "mink/gauge.hpp"

#include "mink/linprog.hpp"
#include "mink/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mink {

struct Gauge::Data {
  GaugeKind kind = GaugeKind::Euclidean;
  int dim = 0;
  std::vector<Vec> normals;   // evaluation list for Halfspaces; structure for L1/LInf, dim <= 3
  std::vector<Vec> facet_list;
  std::vector<Vec> vertices;  // canonical ball vertices, or VertexLp input points
  Mat emat;                   // Ellipsoid / Shifted metric
  Mat emat_inv;
  bool base_euclid = false;   // Shifted: base was euclidean
  Vec offset;                 // Shifted
};

namespace {

using DataPtr = std::shared_ptr<const Gauge::Data>;

constexpr double kTiny = 1e-12;

void dedupe_vectors(std::vector<Vec>& v) {
  std::vector<Vec> out;
  for (const Vec& p : v) {
    bool dup = false;
    for (const Vec& q : out)
      if ((p - q).norm() <= 1e-10 * (1.0 + p.norm())) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  v = std::move(out);
}

// Keeps normals that support at least a (dim-1)-face, i.e. touch >= dim
// vertices; drops vacuous rows entirely (they can never attain the max).
void classify_normals(Gauge::Data& d) {
  if (d.vertices.empty()) {
    d.facet_list = d.normals;
    return;
  }
  std::vector<Vec> kept, facets;
  for (const Vec& a : d.normals) {
    int touched = 0;
    for (const Vec& v : d.vertices)
      if (a.dot(v) >= 1.0 - 1e-8 * (1.0 + v.norm())) ++touched;
    if (touched == 0) continue;
    kept.push_back(a);
    if (touched >= d.dim) facets.push_back(a);
  }
  d.normals = std::move(kept);
  d.facet_list = std::move(facets);
}

double eval_halfspaces(const std::vector<Vec>& normals, const Vec& x) {
  double best = 0.0;
  for (const Vec& a : normals) best = std::max(best, a.dot(x));
  return best;
}

// Shifted ball c + {w : w^T M w <= 1}: gauge value solves
// (x - t c)^T M (x - t c) = t^2, the positive root of
// t^2 (1 - c^T M c) + 2 t <x, M c> - x^T M x = 0.
double eval_shifted(const Mat& m, const Vec& c, const Vec& x) {
  const Vec mc = m * c;
  const double kappa = 1.0 - c.dot(mc);
  const double q = x.dot(mc);
  const double r2 = x.dot(m * x);
  if (r2 <= 0.0) return 0.0;
  return (-q + std::sqrt(q * q + kappa * r2)) / kappa;
}

DataPtr make(Gauge::Data&& d) { return std::make_shared<const Gauge::Data>(std::move(d)); }

void check_probe_definite(const Gauge& g) {
  for (const Vec& u : direction_samples(g.dim())) {
    const double v = g.eval(u);
    require(std::isfinite(v) && v > 1e-9,
            "unit ball must be bounded with the origin in its interior");
  }
}

std::vector<Vec> sign_combination_normals(int dim) {
  std::vector<Vec> out;
  const int n = 1 << dim;
  for (int mask = 0; mask < n; ++mask) {
    Vec a(dim);
    for (int i = 0; i < dim; ++i) a[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    out.push_back(a);
  }
  return out;
}

std::vector<Vec> axis_normals(int dim) {
  std::vector<Vec> out;
  for (int i = 0; i < dim; ++i) {
    Vec a = Vec::Zero(dim);
    a[i] = 1.0;
    out.push_back(a);
    out.push_back(-a);
  }
  return out;
}

}  // namespace

Gauge Gauge::from_halfspaces(int dim, std::vector<Vec> normals) {
  require(dim >= 1, "dimension must be positive");
  require(!normals.empty(), "half-space polytope needs at least one normal");
  for (const Vec& a : normals) {
    require(static_cast<int>(a.size()) == dim, "normal dimension mismatch");
    require(all_finite(a), "normals must be finite");
    require(a.norm() > kTiny, "zero normal");
  }
  dedupe_vectors(normals);
  require(points_positively_span(normals, dim), "unit ball is unbounded");
  Data d;
  d.kind = GaugeKind::Halfspaces;
  d.dim = dim;
  d.normals = std::move(normals);
  if (dim <= 3) {
    d.vertices = enumerate_vertices(d.normals, dim);
    classify_normals(d);
  } else {
    d.facet_list = d.normals;
  }
  return Gauge(make(std::move(d)));
}

Gauge Gauge::from_vertices(int dim, std::vector<Vec> vertices) {
  require(dim >= 1, "dimension must be positive");
  require(static_cast<int>(vertices.size()) >= dim + 1,
          "vertex polytope needs at least dim+1 points");
  for (const Vec& v : vertices) {
    require(static_cast<int>(v.size()) == dim, "vertex dimension mismatch");
    require(all_finite(v), "vertices must be finite");
  }
  dedupe_vectors(vertices);
  if (dim <= 3) {
    std::vector<Vec> normals = facet_normals_from_vertices(vertices, dim);
    return from_halfspaces(dim, std::move(normals));
  }
  Data d;
  d.kind = GaugeKind::VertexLp;
  d.dim = dim;
  d.vertices = std::move(vertices);
  Gauge g(make(std::move(d)));
  check_probe_definite(g);
  return g;
}

Gauge Gauge::euclidean(int dim) {
  require(dim >= 1, "dimension must be positive");
  Data d;
  d.kind = GaugeKind::Euclidean;
  d.dim = dim;
  return Gauge(make(std::move(d)));
}

Gauge Gauge::lp(int dim, double p) {
  require(dim >= 1, "dimension must be positive");
  if (p == 2.0) return euclidean(dim);
  Data d;
  d.dim = dim;
  if (p == 1.0) {
    d.kind = GaugeKind::L1;
    if (dim <= 3) d.normals = sign_combination_normals(dim);
  } else if (std::isinf(p)) {
    d.kind = GaugeKind::LInf;
    if (dim <= 3) d.normals = axis_normals(dim);
  } else {
    throw std::invalid_argument("lp gauge supports p in {1, 2, inf} only");
  }
  if (dim <= 3) {
    d.vertices = enumerate_vertices(d.normals, dim);
    classify_normals(d);
  }
  return Gauge(make(std::move(d)));
}

Gauge Gauge::ellipsoid(Mat m) {
  require(m.rows() == m.cols() && m.rows() >= 1, "ellipsoid matrix must be square");
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + m.cwiseAbs().maxCoeff()),
          "ellipsoid matrix must be symmetric");
  Eigen::LLT<Mat> llt(m);
  require(llt.info() == Eigen::Success, "ellipsoid matrix must be positive definite");
  Data d;
  d.kind = GaugeKind::Ellipsoid;
  d.dim = static_cast<int>(m.rows());
  d.emat = 0.5 * (m + m.transpose());
  d.emat_inv = llt.solve(Mat::Identity(d.dim, d.dim));
  return Gauge(make(std::move(d)));
}

Gauge Gauge::shifted(const Gauge& base, const Vec& offset) {
  require(static_cast<int>(offset.size()) == base.dim(), "offset dimension mismatch");
  require(all_finite(offset), "offset must be finite");
  if (offset.norm() <= kTiny) return base;
  // 0 interior of (offset + ball)  <=>  -offset interior of ball.
  require(base.eval(-offset) < 1.0 - 1e-9,
          "shifted ball must keep the origin in its interior");
  switch (base.kind()) {
    case GaugeKind::Halfspaces:
    case GaugeKind::L1:
    case GaugeKind::LInf: {
      require(base.dim() <= 3 || base.kind() == GaugeKind::Halfspaces,
              "shifted lp gauge supported for dim <= 3");
      std::vector<Vec> normals;
      for (const Vec& a : base.halfspaces()) {
        const double off = 1.0 + a.dot(offset);
        require(off > 1e-9, "shifted ball must keep the origin in its interior");
        normals.push_back(a / off);
      }
      return from_halfspaces(base.dim(), std::move(normals));
    }
    case GaugeKind::VertexLp: {
      std::vector<Vec> verts;
      for (const Vec& v : base.ball_vertices()) verts.push_back(v + offset);
      return from_vertices(base.dim(), std::move(verts));
    }
    case GaugeKind::Euclidean: {
      Data d;
      d.kind = GaugeKind::Shifted;
      d.dim = base.dim();
      d.emat = Mat::Identity(d.dim, d.dim);
      d.emat_inv = d.emat;
      d.base_euclid = true;
      d.offset = offset;
      return Gauge(make(std::move(d)));
    }
    case GaugeKind::Ellipsoid: {
      Data d;
      d.kind = GaugeKind::Shifted;
      d.dim = base.dim();
      d.emat = base.metric();
      d.emat_inv = base.d_->emat_inv;
      d.offset = offset;
      return Gauge(make(std::move(d)));
    }
    case GaugeKind::Shifted: {
      Data d;
      d.kind = GaugeKind::Shifted;
      d.dim = base.dim();
      d.emat = base.metric();
      d.emat_inv = base.d_->emat_inv;
      d.base_euclid = base.d_->base_euclid;
      d.offset = base.shift_offset() + offset;
      const Vec& c = d.offset;
      require(c.dot(d.emat * c) < 1.0 - 1e-9,
              "shifted ball must keep the origin in its interior");
      return Gauge(make(std::move(d)));
    }
  }
  throw std::logic_error("unreachable gauge kind");
}

Gauge Gauge::product_with_interval(const Gauge& planar) {
  require(planar.dim() == 2, "product gauge takes a planar gauge");
  require(planar.is_polytopal(), "product gauge requires a polytopal planar factor");
  std::vector<Vec> normals;
  for (const Vec& a : planar.halfspaces()) {
    Vec b(3);
    b << a[0], a[1], 0.0;
    normals.push_back(b);
  }
  Vec top(3), bottom(3);
  top << 0.0, 0.0, 1.0;
  bottom << 0.0, 0.0, -1.0;
  normals.push_back(top);
  normals.push_back(bottom);
  return from_halfspaces(3, std::move(normals));
}

int Gauge::dim() const { return d_->dim; }
GaugeKind Gauge::kind() const { return d_->kind; }

double Gauge::eval(const Vec& x) const {
  require(static_cast<int>(x.size()) == d_->dim, "gauge_eval: dimension mismatch");
  require(all_finite(x), "gauge_eval: point must be finite");
  switch (d_->kind) {
    case GaugeKind::Halfspaces:
      return eval_halfspaces(d_->normals, x);
    case GaugeKind::L1:
      return x.lpNorm<1>();
    case GaugeKind::LInf:
      return x.lpNorm<Eigen::Infinity>();
    case GaugeKind::Euclidean:
      return x.norm();
    case GaugeKind::Ellipsoid:
      return std::sqrt(std::max(0.0, x.dot(d_->emat * x)));
    case GaugeKind::Shifted:
      return eval_shifted(d_->emat, d_->offset, x);
    case GaugeKind::VertexLp: {
      if (x.norm() <= kTiny) return 0.0;
      // Polar form: gauge(x) = max{ a.x : a.v_j <= 1 for all vertices }.
      std::vector<LinearConstraint> rows;
      rows.reserve(d_->vertices.size());
      for (const Vec& v : d_->vertices) rows.push_back({v, 1.0});
      LpResult r = solve_lp(-x, rows, 1e7);
      require(r.status == LpStatus::Optimal && !r.hit_box,
              "vertex polytope gauge: polar program failed (origin not interior?)");
      return -r.value;
    }
  }
  throw std::logic_error("unreachable gauge kind");
}

Gauge Gauge::reversed() const {
  Data d = *d_;
  for (Vec& a : d.normals) a = -a;
  for (Vec& a : d.facet_list) a = -a;
  for (Vec& v : d.vertices) v = -v;
  if (d.kind == GaugeKind::Shifted) d.offset = -d.offset;
  if (d.dim == 2) {
    sort_by_angle(d.normals);
    sort_by_angle(d.facet_list);
    sort_by_angle(d.vertices);
  }
  return Gauge(make(std::move(d)));
}

bool Gauge::is_polytopal() const {
  switch (d_->kind) {
    case GaugeKind::Halfspaces:
      return true;
    case GaugeKind::L1:
    case GaugeKind::LInf:
      return !d_->normals.empty();
    default:
      return false;
  }
}

const std::vector<Vec>& Gauge::halfspaces() const {
  require(is_polytopal(), "no half-space description for this gauge");
  return d_->normals;
}

const std::vector<Vec>& Gauge::facets() const {
  require(is_polytopal(), "no facet description for this gauge");
  return d_->facet_list;
}

bool Gauge::has_ball_vertices() const { return !d_->vertices.empty() && d_->kind != GaugeKind::VertexLp; }

const std::vector<Vec>& Gauge::ball_vertices() const {
  require(!d_->vertices.empty(), "no vertex description for this gauge");
  return d_->vertices;
}

double Gauge::support(const Vec& u) const {
  require(static_cast<int>(u.size()) == d_->dim, "support: dimension mismatch");
  switch (d_->kind) {
    case GaugeKind::Halfspaces: {
      if (!d_->vertices.empty()) {
        double best = -1e300;
        for (const Vec& v : d_->vertices) best = std::max(best, v.dot(u));
        return best;
      }
      std::vector<LinearConstraint> rows;
      for (const Vec& a : d_->normals) rows.push_back({a, 1.0});
      LpResult r = solve_lp(-u, rows, 1e7);
      require(r.status == LpStatus::Optimal, "support: program failed");
      return -r.value;
    }
    case GaugeKind::VertexLp: {
      double best = -1e300;
      for (const Vec& v : d_->vertices) best = std::max(best, v.dot(u));
      return best;
    }
    case GaugeKind::L1:
      return u.lpNorm<Eigen::Infinity>();
    case GaugeKind::LInf:
      return u.lpNorm<1>();
    case GaugeKind::Euclidean:
      return u.norm();
    case GaugeKind::Ellipsoid:
      return std::sqrt(std::max(0.0, u.dot(d_->emat_inv * u)));
    case GaugeKind::Shifted: {
      const double base = std::sqrt(std::max(0.0, u.dot(d_->emat_inv * u)));
      return d_->offset.dot(u) + base;
    }
  }
  throw std::logic_error("unreachable gauge kind");
}

Vec Gauge::boundary_point(const Vec& dir) const {
  const double v = eval(dir);
  require(v > kTiny, "boundary_point: direction must be nonzero");
  return dir / v;
}

Vec Gauge::gradient(const Vec& x) const {
  require(x.norm() > kTiny, "gradient undefined at 0");
  switch (d_->kind) {
    case GaugeKind::Halfspaces: {
      int best = 0;
      double bv = -1e300;
      for (std::size_t i = 0; i < d_->normals.size(); ++i) {
        const double v = d_->normals[i].dot(x);
        if (v > bv) {
          bv = v;
          best = static_cast<int>(i);
        }
      }
      return d_->normals[best];
    }
    case GaugeKind::L1: {
      Vec g(d_->dim);
      for (int i = 0; i < d_->dim; ++i) g[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
      return g;
    }
    case GaugeKind::LInf: {
      int k = 0;
      for (int i = 1; i < d_->dim; ++i)
        if (std::abs(x[i]) > std::abs(x[k])) k = i;
      Vec g = Vec::Zero(d_->dim);
      g[k] = x[k] >= 0 ? 1.0 : -1.0;
      return g;
    }
    case GaugeKind::Euclidean:
      return x / x.norm();
    case GaugeKind::Ellipsoid: {
      const Vec mx = d_->emat * x;
      return mx / std::sqrt(std::max(kTiny, x.dot(mx)));
    }
    case GaugeKind::Shifted: {
      const Vec mc = d_->emat * d_->offset;
      const double kappa = 1.0 - d_->offset.dot(mc);
      const double q = x.dot(mc);
      const Vec mx = d_->emat * x;
      const double s = std::sqrt(std::max(kTiny, q * q + kappa * x.dot(mx)));
      return (-mc + (q * mc + kappa * mx) / s) / kappa;
    }
    case GaugeKind::VertexLp: {
      std::vector<LinearConstraint> rows;
      for (const Vec& v : d_->vertices) rows.push_back({v, 1.0});
      LpResult r = solve_lp(-x, rows, 1e7);
      require(r.status == LpStatus::Optimal, "gradient: polar program failed");
      return r.x;
    }
  }
  throw std::logic_error("unreachable gauge kind");
}

Gauge Gauge::restricted_to_plane(const Mat& basis) const {
  require(basis.rows() == d_->dim && basis.cols() == 2, "basis must be dim x 2");
  require((basis.transpose() * basis - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9,
          "basis columns must be orthonormal");
  switch (d_->kind) {
    case GaugeKind::Halfspaces:
    case GaugeKind::L1:
    case GaugeKind::LInf: {
      std::vector<Vec> normals;
      for (const Vec& a : halfspaces()) {
        Vec b = basis.transpose() * a;
        if (b.norm() > kTiny) normals.push_back(b);
      }
      return from_halfspaces(2, std::move(normals));
    }
    case GaugeKind::Euclidean:
      return euclidean(2);
    case GaugeKind::Ellipsoid:
      return ellipsoid(basis.transpose() * d_->emat * basis);
    case GaugeKind::Shifted: {
      const Mat m2 = basis.transpose() * d_->emat * basis;
      const Vec rhs = basis.transpose() * (d_->emat * d_->offset);
      const Vec w = m2.ldlt().solve(rhs);
      const double rho2 = 1.0 - d_->offset.dot(d_->emat * d_->offset) + w.dot(m2 * w);
      require(rho2 > kTiny, "plane misses the shifted ball");
      return shifted(ellipsoid(m2 / rho2), w);
    }
    case GaugeKind::VertexLp:
      throw std::invalid_argument("plane restriction unsupported for high-dimensional vertex polytopes");
  }
  throw std::logic_error("unreachable gauge kind");
}

const Mat& Gauge::metric() const {
  require(d_->kind == GaugeKind::Ellipsoid || d_->kind == GaugeKind::Shifted,
          "no metric for this gauge");
  return d_->emat;
}

const Vec& Gauge::shift_offset() const {
  require(d_->kind == GaugeKind::Shifted, "not a shifted gauge");
  return d_->offset;
}

bool Gauge::shift_base_is_euclidean() const {
  require(d_->kind == GaugeKind::Shifted, "not a shifted gauge");
  return d_->base_euclid;
}

std::vector<Vec> direction_samples(int dim) {
  std::vector<Vec> dirs;
  if (dim == 2) {
    dirs.reserve(720);
    for (int i = 0; i < 720; ++i) {
      const double th = 2.0 * M_PI * i / 720.0;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      dirs.push_back(u);
    }
  } else if (dim == 3) {
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    dirs.reserve(2000);
    for (int i = 0; i < 2000; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / 2000.0;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec u(3);
      u << r * std::cos(ga * i), r * std::sin(ga * i), z;
      dirs.push_back(u);
    }
  } else {
    Rng rng(12345);
    dirs.reserve(2000);
    for (int i = 0; i < 2000; ++i) dirs.push_back(rng.unit_vector(dim));
  }
  return dirs;
}

bool is_norm(const Gauge& g, double tol) {
  require(tol > 0.0, "tolerance must be positive");
  if (g.has_ball_vertices()) {
    // Exact: the ball equals its reflection iff the vertex set does.
    const auto& verts = g.ball_vertices();
    for (const Vec& v : verts) {
      bool matched = false;
      for (const Vec& w : verts)
        if ((v + w).norm() <= tol * (1.0 + v.norm())) {
          matched = true;
          break;
        }
      if (!matched) return false;
    }
    return true;
  }
  double worst = 0.0;
  for (const Vec& u : direction_samples(g.dim())) {
    const double a = g.eval(u), b = g.eval(-u);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    if (worst > tol) return false;
  }
  return true;
}

double sym_norm_eval(const Gauge& g, const Vec& x) {
  return std::max(g.eval(x), g.eval(-x));
}

namespace {

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? f1 : f2;
}

// Minimum of g2 over one facet {a.x == 1} of g1's ball.
double facet_min(const Gauge& g1, const Gauge& g2, const Vec& a, bool& approx) {
  const int dim = g1.dim();
  std::vector<const Vec*> active;
  for (const Vec& v : g1.ball_vertices())
    if (a.dot(v) >= 1.0 - 1e-8 * (1.0 + v.norm())) active.push_back(&v);
  if (active.size() < static_cast<std::size_t>(dim)) return 1e300;

  if (g2.is_polytopal()) {
    // min t  s.t.  b_j.x <= t,  a.x == 1,  other facets keep x on the ball.
    std::vector<LinearConstraint> rows;
    const int n = dim + 1;
    for (const Vec& b : g2.halfspaces()) {
      Vec row(n);
      row.head(dim) = b;
      row[dim] = -1.0;
      rows.push_back({row, 0.0});
    }
    for (const Vec& f : g1.halfspaces()) {
      Vec row = Vec::Zero(n);
      row.head(dim) = f;
      rows.push_back({row, 1.0});
    }
    Vec eq = Vec::Zero(n);
    eq.head(dim) = a;
    Vec c = Vec::Zero(n);
    c[dim] = 1.0;
    LpResult r = solve_lp_eq(c, rows, {{eq, 1.0}}, 1e6);
    if (r.status != LpStatus::Optimal) return 1e300;
    return r.value;
  }

  approx = true;
  if (dim == 2) {
    // Facet is a segment; g2 is convex along it.
    const Vec v0 = *active.front();
    const Vec v1 = *active.back();
    auto f = [&](double t) { return g2.eval(v0 + t * (v1 - v0)); };
    double best = std::min(f(0.0), f(1.0));
    best = std::min(best, golden_min(f, 0.0, 1.0, 80));
    return best;
  }
  // dim == 3: coordinate pattern search over convex combinations of the
  // facet's vertices.
  const int k = static_cast<int>(active.size());
  Vec w = Vec::Constant(k, 1.0 / k);
  auto point = [&](const Vec& weights) {
    Vec x = Vec::Zero(dim);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      const double wi = std::max(0.0, weights[i]);
      x += wi * (*active[i]);
      s += wi;
    }
    return Vec(x / std::max(s, 1e-12));
  };
  double best = g2.eval(point(w));
  for (int i = 0; i < k; ++i) {
    Vec e = Vec::Zero(k);
    e[i] = 1.0;
    best = std::min(best, g2.eval(point(e)));
  }
  double step = 0.5;
  for (int round = 0; round < 200 && step > 1e-10; ++round) {
    bool improved = false;
    for (int i = 0; i < k; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec cand = w;
        cand[i] = std::max(0.0, cand[i] + sgn * step);
        const double val = g2.eval(point(cand));
        if (val < best - 1e-15) {
          best = val;
          w = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

EquivalenceConstants equivalence_constants(const Gauge& g1, const Gauge& g2) {
  require(g1.dim() == g2.dim(), "equivalence constants: dimension mismatch");
  const int dim = g1.dim();
  EquivalenceConstants out;

  std::vector<Vec> dirs = direction_samples(dim);
  auto add_dirs = [&](const std::vector<Vec>& src) {
    for (const Vec& v : src)
      if (v.norm() > kTiny) dirs.push_back(v / v.norm());
  };
  if (g1.has_ball_vertices()) add_dirs(g1.ball_vertices());
  if (g2.has_ball_vertices()) add_dirs(g2.ball_vertices());
  if (g1.is_polytopal()) add_dirs(g1.halfspaces());
  if (g2.is_polytopal()) add_dirs(g2.halfspaces());

  double c0 = 1e300, c1 = -1e300;
  for (const Vec& u : dirs) {
    const double r = g2.eval(u) / g1.eval(u);
    c0 = std::min(c0, r);
    c1 = std::max(c1, r);
  }

  if (g1.has_ball_vertices()) {
    // Max of a convex function over the ball sits at a vertex.
    for (const Vec& v : g1.ball_vertices()) c1 = std::max(c1, g2.eval(v));
    bool approx = false;
    for (const Vec& a : g1.facets()) c0 = std::min(c0, facet_min(g1, g2, a, approx));
    out.approximate = approx || !g2.is_polytopal();
  } else {
    out.approximate = true;
    if (dim == 2) {
      // Polish both extremes over the angle.
      auto ratio = [&](double th) {
        Vec u(2);
        u << std::cos(th), std::sin(th);
        return g2.eval(u) / g1.eval(u);
      };
      const double h = 2.0 * M_PI / 720.0;
      double th_min = 0.0, th_max = 0.0, rmin = 1e300, rmax = -1e300;
      for (int i = 0; i < 720; ++i) {
        const double r = ratio(i * h);
        if (r < rmin) {
          rmin = r;
          th_min = i * h;
        }
        if (r > rmax) {
          rmax = r;
          th_max = i * h;
        }
      }
      c0 = std::min(c0, golden_min(ratio, th_min - h, th_min + h, 80));
      auto neg = [&](double th) { return -ratio(th); };
      c1 = std::max(c1, -golden_min(neg, th_max - h, th_max + h, 80));
    } else {
      // Tangent-plane pattern polish around the sampled extremes.
      auto polish = [&](Vec u, int sense) {
        double best = sense * g2.eval(u) / g1.eval(u);
        double step = 0.05;
        while (step > 1e-9) {
          bool improved = false;
          for (int i = 0; i < dim; ++i) {
            for (double sgn : {1.0, -1.0}) {
              Vec cand = u;
              cand[i] += sgn * step;
              if (cand.norm() < kTiny) continue;
              cand /= cand.norm();
              const double val = sense * g2.eval(cand) / g1.eval(cand);
              if (val < best - 1e-15) {
                best = val;
                u = cand;
                improved = true;
              }
            }
          }
          if (!improved) step *= 0.5;
        }
        return sense * best;
      };
      Vec umin = dirs.front(), umax = dirs.front();
      double rmin = 1e300, rmax = -1e300;
      for (const Vec& u : dirs) {
        const double r = g2.eval(u) / g1.eval(u);
        if (r < rmin) {
          rmin = r;
          umin = u;
        }
        if (r > rmax) {
          rmax = r;
          umax = u;
        }
      }
      c0 = std::min(c0, polish(umin, +1));
      c1 = std::max(c1, polish(umax, -1));
    }
  }

  // Sandwich audit on seeded samples; never report constants the samples
  // contradict.
  Rng rng(0xc0175eedULL);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = rng.in_box(dim, 5.0);
    const double v1 = g1.eval(x), v2 = g2.eval(x);
    if (v1 <= kTiny) continue;
    const double r = v2 / v1;
    if (r < c0) {
      c0 = r;
      out.approximate = true;
    }
    if (r > c1) {
      c1 = r;
      out.approximate = true;
    }
  }
  out.c0 = c0;
  out.c1 = c1;
  return out;
}

bool ball_membership(const Gauge& g, const Vec& center, double radius,
                     const Vec& x, BallKind kind, double tol) {
  require(radius >= 0.0, "radius must be non-negative");
  const double v = g.eval(x - center);
  switch (kind) {
    case BallKind::Closed:
      return v <= radius + tol;
    case BallKind::Open:
      return v < radius - tol;
    case BallKind::Sphere:
      return std::abs(v - radius) <= tol;
  }
  return false;
}

}  // namespace mink
