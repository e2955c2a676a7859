#include "mink/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mink {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kCoefTol = 1e-12;

struct Row {
  Vec a;
  double b;
};

LpResult solve_rec(const Vec& c, std::vector<Row>& rows, double bound, Rng& rng);

LpResult solve_1d(const Vec& c, const std::vector<Row>& rows, double bound) {
  double lo = -bound, hi = bound;
  for (const Row& r : rows) {
    const double a0 = r.a[0];
    if (a0 > kCoefTol) {
      hi = std::min(hi, r.b / a0);
    } else if (a0 < -kCoefTol) {
      lo = std::max(lo, r.b / a0);
    } else if (r.b < -kFeasTol) {
      return {};
    }
  }
  if (lo > hi + kFeasTol) return {};
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  LpResult res;
  res.status = LpStatus::Optimal;
  res.x = Vec(1);
  res.x[0] = (c[0] < 0.0) ? hi : lo;
  res.value = c[0] * res.x[0];
  res.hit_box = std::abs(std::abs(res.x[0]) - bound) <= 1e-9 * (1.0 + bound);
  return res;
}

// Projects row r onto the hyperplane piv.a x == piv.b, eliminating
// coordinate j.
Row project_row(const Row& r, const Row& piv, int j) {
  const double f = r.a[j] / piv.a[j];
  const int n = static_cast<int>(r.a.size());
  Row out;
  out.a = Vec(n - 1);
  int t = 0;
  for (int l = 0; l < n; ++l) {
    if (l == j) continue;
    out.a[t++] = r.a[l] - f * piv.a[l];
  }
  out.b = r.b - f * piv.b;
  return out;
}

LpResult solve_rec(const Vec& c, std::vector<Row>& rows, double bound, Rng& rng) {
  const int n = static_cast<int>(c.size());
  if (n == 1) return solve_1d(c, rows, bound);

  rng.shuffle(rows);

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x = Vec(n);
  for (int j = 0; j < n; ++j) res.x[j] = (c[j] < 0.0) ? bound : -bound;
  res.hit_box = true;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.a.dot(res.x) <= r.b + kFeasTol) continue;

    // Violated: the optimum of the first i+1 constraints lies on this row's
    // boundary. Eliminate the best-conditioned coordinate and recurse.
    int j = 0;
    for (int l = 1; l < n; ++l)
      if (std::abs(r.a[l]) > std::abs(r.a[j])) j = l;
    if (std::abs(r.a[j]) <= kCoefTol) {
      if (r.b < -kFeasTol) return {};
      continue;
    }

    Vec sub_c(n - 1);
    {
      const double f = c[j] / r.a[j];
      int t = 0;
      for (int l = 0; l < n; ++l) {
        if (l == j) continue;
        sub_c[t++] = c[l] - f * r.a[l];
      }
    }
    std::vector<Row> sub_rows;
    sub_rows.reserve(i + 2);
    for (std::size_t l = 0; l < i; ++l) sub_rows.push_back(project_row(rows[l], r, j));
    // Box faces of the eliminated coordinate become ordinary constraints.
    Row box_hi, box_lo;
    box_hi.a = Vec::Zero(n);
    box_hi.a[j] = 1.0;
    box_hi.b = bound;
    box_lo.a = Vec::Zero(n);
    box_lo.a[j] = -1.0;
    box_lo.b = bound;
    sub_rows.push_back(project_row(box_hi, r, j));
    sub_rows.push_back(project_row(box_lo, r, j));

    LpResult sub = solve_rec(sub_c, sub_rows, bound, rng);
    if (sub.status != LpStatus::Optimal) return {};

    Vec x(n);
    int t = 0;
    double acc = r.b;
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      x[l] = sub.x[t];
      acc -= r.a[l] * sub.x[t];
      ++t;
    }
    x[j] = acc / r.a[j];
    res.x = x;
  }
  res.value = c.dot(res.x);
  res.hit_box = false;
  for (int j = 0; j < n; ++j)
    if (std::abs(res.x[j]) >= bound * (1.0 - 1e-9)) res.hit_box = true;
  return res;
}

}  // namespace

LpResult solve_lp(const Vec& c, const std::vector<LinearConstraint>& rows, double bound) {
  std::vector<Row> work;
  work.reserve(rows.size());
  for (const auto& r : rows) {
    require(r.a.size() == c.size(), "lp: constraint dimension mismatch");
    const double s = r.a.cwiseAbs().maxCoeff();
    if (s <= kCoefTol) {
      if (r.b < -kFeasTol) return {};
      continue;
    }
    work.push_back({r.a / s, r.b / s});
  }
  Rng rng(0x5eed5eedULL + 1315423911ULL * work.size());
  return solve_rec(c, work, bound, rng);
}

LpResult solve_lp_eq(const Vec& c, const std::vector<LinearConstraint>& rows,
                     const std::vector<LinearConstraint>& eqs, double bound) {
  // Eliminate equalities one at a time by substitution, remembering the
  // pivots so the solution can be lifted back.
  struct Pivot {
    Vec a;
    double b;
    int j;
  };
  std::vector<Pivot> pivots;
  Vec cur_c = c;
  std::vector<Row> cur_rows;
  for (const auto& r : rows) cur_rows.push_back({r.a, r.b});
  std::vector<Row> cur_eqs;
  for (const auto& e : eqs) cur_eqs.push_back({e.a, e.b});

  while (!cur_eqs.empty()) {
    Row e = cur_eqs.back();
    cur_eqs.pop_back();
    int j = 0;
    const int n = static_cast<int>(e.a.size());
    for (int l = 1; l < n; ++l)
      if (std::abs(e.a[l]) > std::abs(e.a[j])) j = l;
    if (std::abs(e.a[j]) <= kCoefTol) {
      if (std::abs(e.b) > kFeasTol) return {};
      continue;
    }
    pivots.push_back({e.a, e.b, j});
    const double f = cur_c[j] / e.a[j];
    Vec nc(n - 1);
    int t = 0;
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      nc[t++] = cur_c[l] - f * e.a[l];
    }
    cur_c = nc;
    std::vector<Row> nrows;
    nrows.reserve(cur_rows.size());
    for (const Row& r : cur_rows) nrows.push_back(project_row(r, e, j));
    cur_rows = nrows;
    std::vector<Row> neqs;
    neqs.reserve(cur_eqs.size());
    for (const Row& r : cur_eqs) neqs.push_back(project_row(r, e, j));
    cur_eqs = neqs;
  }

  LpResult red;
  if (cur_c.size() == 0) {
    // Fully determined by the equalities.
    red.status = LpStatus::Optimal;
    red.x = Vec(0);
    for (const Row& r : cur_rows)
      if (r.b < -kFeasTol) return {};
  } else {
    std::vector<LinearConstraint> pass;
    pass.reserve(cur_rows.size());
    for (const Row& r : cur_rows) pass.push_back({r.a, r.b});
    red = solve_lp(cur_c, pass, bound);
    if (red.status != LpStatus::Optimal) return red;
  }

  Vec x = red.x;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const int n = static_cast<int>(it->a.size());
    Vec full(n);
    int t = 0;
    double acc = it->b;
    for (int l = 0; l < n; ++l) {
      if (l == it->j) continue;
      full[l] = x[t];
      acc -= it->a[l] * x[t];
      ++t;
    }
    full[it->j] = acc / it->a[it->j];
    x = full;
  }
  LpResult out;
  out.status = LpStatus::Optimal;
  out.x = x;
  out.value = c.dot(x);
  out.hit_box = red.hit_box;
  return out;
}

}  // namespace mink
