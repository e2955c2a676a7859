#include "mink/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace mink;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("sequence gauge values") {
  for (int n = 1; n <= 50; ++n) {
    TruncatedSequence xn;
    xn.entries.assign(n, 1.0 / n);
    CHECK(std::abs(l1_gauge_eval(xn) - 1.0) <= 1e-15);
    TruncatedSequence mxn;
    mxn.entries.assign(n, -1.0 / n);
    CHECK(l1_gauge_eval(mxn) == 1.0 / n);
  }
  TruncatedSequence x0;
  for (int i = 0; i < 20; ++i) x0.entries.push_back(std::ldexp(1.0, -i));
  CHECK(l1_gauge_eval(x0) == 2.0 - std::ldexp(1.0, -19));

  // n = 5, m = 30 mixed value.
  TruncatedSequence diff;
  for (int i = 0; i < 30; ++i) {
    double v = std::ldexp(1.0, -i);
    if (i < 5) v -= 1.0 / 5.0;
    diff.entries.push_back(v);
  }
  CHECK(l1_gauge_eval(diff) == doctest::Approx(1.0 - std::ldexp(1.0, -29)).epsilon(1e-15));
  CHECK(l1_gauge_eval(diff) <= 1.0);
}

TEST_CASE("sequence example suite") {
  const auto rep = l1_example_check(10, 30);
  CHECK(rep.passed());
  CHECK(rep.cases > 20);
}

TEST_CASE("parallelogram defect") {
  CHECK(parallelogram_defect(Gauge::euclidean(2), 300, 1) <= 1e-9);
  CHECK(parallelogram_defect(Gauge::euclidean(3), 300, 1) <= 1e-9);
  CHECK(parallelogram_defect(Gauge::ellipsoid((Mat(2, 2) << 2, 0.3, 0.3, 1).finished()), 300, 1) <=
        1e-8);
  // Attained at u=(1,0), v=(0,1): |1 + 1 - 2 - 2| = 2.
  CHECK(parallelogram_defect(Gauge::lp(2, kInf), 300, 1) >= 2.0 - 1e-9);
  CHECK(parallelogram_defect(Gauge::lp(2, 1.0), 300, 1) >= 2.0 - 1e-9);
  CHECK_THROWS_AS(
      parallelogram_defect(Gauge::shifted(Gauge::euclidean(2), v2(0.3, 0)), 100, 1),
      std::invalid_argument);
}

TEST_CASE("projection check") {
  const auto rep = projection_coapprox_check(Gauge::euclidean(2), 10, 0);
  CHECK(rep.passed());
  const auto rep3 = projection_coapprox_check(Gauge::euclidean(3), 6, 0);
  CHECK(rep3.passed());
  const auto repe =
      projection_coapprox_check(Gauge::ellipsoid((Mat(2, 2) << 1, 0, 0, 4).finished()), 10, 0);
  CHECK(repe.passed());
  CHECK_THROWS_AS(projection_coapprox_check(Gauge::lp(2, 1.0), 5, 0), std::invalid_argument);
}

TEST_CASE("ellipsoid foot passes the audit") {
  // diag(1,4), K the x-axis, y = (0,1): the metric projection is the origin.
  const Gauge g = Gauge::ellipsoid((Mat(2, 2) << 1, 0, 0, 4).finished());
  const Flat k(v2(0, 0), {v2(1, 0)});
  const Vec y = v2(0, 1);
  // 1D normal equation in the metric: minimize (t)^2 + 4 => t = 0.
  const Vec foot = v2(0, 0);
  CHECK(audit_violation(g, k, y, foot, 4000, 3) <= 1e-9);
  CHECK(audit_violation(g, k, y, v2(0.01, 0), 4000, 3) > 0.0);
}

TEST_CASE("generators are reproducible and valid") {
  Rng a(5), b(5);
  const Gauge g1 = random_symmetric_polygon(a);
  const Gauge g2 = random_symmetric_polygon(b);
  REQUIRE(g1.ball_vertices().size() == g2.ball_vertices().size());
  for (std::size_t i = 0; i < g1.ball_vertices().size(); ++i)
    CHECK((g1.ball_vertices()[i] - g2.ball_vertices()[i]).norm() == 0.0);
  CHECK(is_norm(g1));

  Rng c(9);
  for (int i = 0; i < 5; ++i) {
    const Gauge g = random_asymmetric_polygon(c);
    CHECK_FALSE(is_norm(g));
  }
  Rng d(13);
  CHECK(is_norm(random_polytope_3d(d, true)));
  CHECK_FALSE(is_norm(random_polytope_3d(d, false)));
}

TEST_CASE("theorem suites at reduced scale") {
  TheoremSuiteConfig cfg;
  cfg.a_gauges = 3;
  cfg.a_pairs = 4;
  cfg.b_gauges = 4;
  cfg.c_gauges = 1;
  cfg.d_planes = 4;
  cfg.d_draws = 200;
  cfg.seed = 0;
  const auto rep = verify_theorems(cfg);
  for (const auto& f : rep.failures) MESSAGE(f.case_id, ": ", f.detail);
  CHECK(rep.passed());
  CHECK(rep.cases == 3 * 4 + 4 + 1 + 2 * 4 + 1);

  // Determinism of the full report.
  const auto rep2 = verify_theorems(cfg);
  CHECK(rep.cases == rep2.cases);
  CHECK(rep.failures.size() == rep2.failures.size());
  REQUIRE(rep.worst_margins.size() == rep2.worst_margins.size());
  for (const auto& [k, v] : rep.worst_margins) {
    REQUIRE(rep2.worst_margins.count(k) == 1);
    CHECK(rep2.worst_margins.at(k) == v);
  }
}
