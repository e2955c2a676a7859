#include "mink/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace mink {
namespace {

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

void push_unique(std::vector<Vec>& out, const Vec& p) {
  for (const Vec& q : out)
    if ((q - p).norm() <= 1e-8 * (1.0 + p.norm())) return;
  out.push_back(p);
}

}  // namespace

std::vector<Vec> convex_hull_2d(std::vector<Vec> pts) {
  require(!pts.empty(), "hull: no points");
  for (const Vec& p : pts) require(p.size() == 2, "hull: points must be 2D");
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& a, const Vec& b) { return (a - b).norm() < 1e-12; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<Vec> enumerate_vertices(const std::vector<Vec>& normals, int dim) {
  require(dim == 2 || dim == 3, "vertex enumeration restricted to dim 2 or 3");
  const int m = static_cast<int>(normals.size());
  std::vector<Vec> verts;
  auto feasible = [&](const Vec& x) {
    for (const Vec& a : normals)
      if (a.dot(x) > 1.0 + 1e-8) return false;
    return true;
  };
  if (dim == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        Mat A(2, 2);
        A.row(0) = normals[i].transpose();
        A.row(1) = normals[j].transpose();
        const double det = A.determinant();
        if (std::abs(det) <= 1e-10 * normals[i].norm() * normals[j].norm()) continue;
        Vec x = A.partialPivLu().solve(Vec::Ones(2));
        if (feasible(x)) push_unique(verts, x);
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          Mat A(3, 3);
          A.row(0) = normals[i].transpose();
          A.row(1) = normals[j].transpose();
          A.row(2) = normals[k].transpose();
          const double scale = normals[i].norm() * normals[j].norm() * normals[k].norm();
          if (std::abs(A.determinant()) <= 1e-10 * scale) continue;
          Vec x = A.partialPivLu().solve(Vec::Ones(3));
          if (feasible(x)) push_unique(verts, x);
        }
  }
  if (dim == 2) {
    sort_by_angle(verts);
  } else {
    std::sort(verts.begin(), verts.end(), [](const Vec& a, const Vec& b) {
      for (int i = 0; i < 3; ++i) {
        if (a[i] < b[i] - 1e-12) return true;
        if (a[i] > b[i] + 1e-12) return false;
      }
      return false;
    });
  }
  return verts;
}

std::vector<Vec> facet_normals_from_vertices(const std::vector<Vec>& verts, int dim) {
  // The polar body { a : v.a <= 1 } is bounded exactly when 0 is interior
  // to conv(V); its vertices are then the facet normals of the hull.
  require(points_positively_span(verts, dim),
          "unit ball must contain the origin in its interior");
  std::vector<Vec> normals = enumerate_vertices(verts, dim);
  require(!normals.empty(), "degenerate vertex body");
  return normals;
}

void sort_by_angle(std::vector<Vec>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
  });
}

bool points_positively_span(const std::vector<Vec>& points, int dim, double margin) {
  if (points.empty()) return false;
  // An escape direction u solves p.u <= 0 for all p with u != 0. Maximize
  // each +-coordinate of u inside the unit box; any positive optimum is an
  // escape ray.
  std::vector<LinearConstraint> rows;
  rows.reserve(points.size());
  for (const Vec& p : points) {
    require(static_cast<int>(p.size()) == dim, "span test: dimension mismatch");
    rows.push_back({p, 0.0});
  }
  for (int k = 0; k < dim; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec c = Vec::Zero(dim);
      c[k] = -sgn;  // maximize sgn * u_k
      const LpResult r = solve_lp(c, rows, 1.0);
      if (r.status != LpStatus::Optimal) return false;
      if (-r.value > margin) return false;
    }
  }
  return true;
}

}  // namespace mink
