#include "mink/coapprox.hpp"

#include "mink/analysis.hpp"
#include "mink/witness.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <limits>

using namespace mink;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Gauge triangle_gauge() { return Gauge::from_vertices(2, {v2(1, 0), v2(0, 1), v2(-1, -1)}); }

}  // namespace

TEST_CASE("violation: identical arguments vanish everywhere") {
  const Gauge g = Gauge::euclidean(2);
  const Flat k(v2(0, 0), {v2(1, 0)});
  const Vec y = v2(2, 0);  // on K
  const auto [v, probe] = violation(g, k, y, y);
  CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("violation: perpendicular foot") {
  const Gauge g = Gauge::euclidean(2);
  const Flat k(v2(0, 0), {v2(1, 0)});
  // sup_z |x-z| - sqrt(z^2+1) with x = 0: approaches 0 at infinity.
  const auto [v, probe] = violation(g, k, v2(0, 1), v2(0, 0));
  CHECK(std::abs(v) <= 1e-8);
  const double dense = oracle::line_violation_sup(
      [&](const Vec& w) { return w.norm(); }, v2(0, 0), v2(1, 0), v2(0, 1), v2(0, 0), 1e4, 40001);
  CHECK(v >= dense - 1e-8);
}

TEST_CASE("violation: precondition") {
  const Gauge g = Gauge::euclidean(2);
  const Flat k(v2(0, 0), {v2(1, 0)});
  CHECK_THROWS_AS(violation(g, k, v2(0, 1), v2(0, 1)), std::invalid_argument);
}

TEST_CASE("violation is convex along K") {
  Rng rng(19);
  const Gauge gauges[] = {triangle_gauge(), Gauge::euclidean(2)};
  for (const Gauge& g : gauges) {
    for (int trial = 0; trial < 10; ++trial) {
      const Flat k = random_flat(rng, 2, 1);
      const Vec y = rng.in_box(2, 2.0);
      const Vec x1 = k.point_at(Vec::Constant(1, rng.uniform(-2, 2)));
      const Vec x2 = k.point_at(Vec::Constant(1, rng.uniform(-2, 2)));
      const double th = rng.uniform(0.1, 0.9);
      const Vec xm = th * x1 + (1 - th) * x2;
      const double v1 = violation(g, k, y, x1).first;
      const double v2v = violation(g, k, y, x2).first;
      const double vm = violation(g, k, y, xm).first;
      CHECK(vm <= th * v1 + (1 - th) * v2v + 1e-8);
    }
  }
}

TEST_CASE("coapprox: y on K returns y") {
  const Gauge g = triangle_gauge();
  const Flat k(v2(1, 1), {v2(1, -1)});
  const Vec y = v2(2, 0);
  const auto r = coapprox_solve(g, k, y);
  REQUIRE(r.status == CoapproxStatus::NonEmpty);
  CHECK((*r.witness - y).norm() <= 1e-12);
  CHECK(r.iterations == 0);
}

TEST_CASE("coapprox: euclidean foot") {
  const Gauge g = Gauge::euclidean(2);
  const Flat k(v2(0, 0), {v2(1, 0)});
  const auto r = coapprox_solve(g, k, v2(3, 4));
  REQUIRE(r.status == CoapproxStatus::NonEmpty);
  CHECK((*r.witness - v2(3, 0)).norm() <= 1e-6);
  CHECK(audit_violation(g, k, v2(3, 4), *r.witness) <= 1e-6);
}

TEST_CASE("coapprox: witness target is certified empty") {
  const Gauge g = triangle_gauge();
  const auto w = construct_witness(g);
  REQUIRE(w.has_value());
  const auto r = coapprox_solve(g, w->line(), w->target);
  REQUIRE(r.status == CoapproxStatus::Empty);
  REQUIRE(r.emptiness_lower_bound.has_value());
  CHECK(*r.emptiness_lower_bound >= 2e-6);

  // Brute force double grid: every candidate x on K has positive violation.
  const Vec base = w->line().base();
  const Vec dir = w->line().onb().col(0);
  double min_sup = 1e300;
  for (int i = 0; i < 201; ++i) {
    const double t = -4.0 + 8.0 * i / 200.0;
    const Vec x = base + t * dir;
    double sup = oracle::line_violation_sup([&](const Vec& q) { return g.eval(q); }, base, dir,
                                            w->target, x, 50.0, 2001);
    min_sup = std::min(min_sup, sup);
  }
  CHECK(min_sup > 0.0);
  CHECK(*r.emptiness_lower_bound <= min_sup + 1e-6);
}

TEST_CASE("coapprox: translation invariance") {
  Rng rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    const Gauge g = random_symmetric_polygon(rng);
    const Flat k = random_flat(rng, 2, 1);
    const Vec y = rng.in_box(2, 2.0);
    const Vec shift = rng.in_box(2, 2.0);
    const auto r1 = coapprox_solve(g, k, y);
    const auto r2 = coapprox_solve(g, k.translated(shift), y + shift);
    REQUIRE(r1.status == r2.status);
    if (r1.status == CoapproxStatus::NonEmpty)
      CHECK((*r1.witness + shift - *r2.witness).norm() <= 1e-8);
  }
}

TEST_CASE("coapprox: reduction to the planar section") {
  Rng rng(37);
  for (int trial = 0; trial < 6; ++trial) {
    const Gauge g3 = random_polytope_3d(rng, trial % 2 == 0);
    Vec dir = rng.unit_vector(3);
    const Flat k3(v3(0, 0, 0), {dir});
    const Vec y = rng.in_box(3, 2.0);
    if (k3.contains(y, 1e-6)) continue;

    // Section spanned by the line and y.
    Vec w = y - dir * dir.dot(y);
    if (w.norm() < 1e-6) continue;
    w /= w.norm();
    Mat basis(3, 2);
    basis.col(0) = dir;
    basis.col(1) = w;
    const Gauge g2 = g3.restricted_to_plane(basis);
    const Flat k2(v2(0, 0), {v2(1, 0)});
    const Vec y2 = basis.transpose() * y;

    const auto r3 = coapprox_solve(g3, k3, y);
    const auto r2 = coapprox_solve(g2, k2, y2);
    REQUIRE(r2.status == r3.status);
    if (r3.status == CoapproxStatus::NonEmpty) {
      const Vec lifted = basis * *r2.witness;
      CHECK((lifted - *r3.witness).norm() <= 1e-8);
    }
  }
}

TEST_CASE("coapprox: norm lines are coproximinal") {
  Rng rng(43);
  for (int gi = 0; gi < 4; ++gi) {
    const Gauge g = random_symmetric_polygon(rng);
    for (int t = 0; t < 6; ++t) {
      const Flat k = random_flat(rng, 2, 1);
      const Vec y = rng.in_box(2, 3.0);
      const auto r = coapprox_solve(g, k, y);
      REQUIRE(r.status == CoapproxStatus::NonEmpty);
      CHECK(audit_violation(g, k, y, *r.witness, 4000, t) <= 1e-6);
    }
  }
}

TEST_CASE("solver status agrees with a dense brute-force oracle") {
  Rng rng(101);
  int empties = 0, nonempties = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Gauge g = random_asymmetric_polygon(rng);
    const Flat k = trial % 2 == 0 ? Flat(Vec::Zero(2), {rng.unit_vector(2)})
                                  : random_flat(rng, 2, 1);
    const Vec y = rng.in_box(2, 2.0);
    if (k.contains(y, 1e-6)) continue;
    const auto r = coapprox_solve(g, k, y, 1e-6);

    // Dense double grid plus far probes: an upper bound on min V that any
    // emptiness bound must respect, and an independent audit for witnesses.
    const Vec base = k.base();
    const Vec dir = k.onb().col(0);
    auto sup_at = [&](const Vec& x) {
      double sup = oracle::line_violation_sup([&](const Vec& q) { return g.eval(q); }, base, dir,
                                              y, x, 200.0, 20001);
      for (double t : {1e4, 1e5}) {
        for (double sgn : {-1.0, 1.0}) {
          const Vec z = base + sgn * t * dir;
          sup = std::max(sup, g.eval(x - z) - g.eval(y - z));
        }
      }
      return sup;
    };

    if (r.status == CoapproxStatus::Empty) {
      ++empties;
      double min_sup = 1e300;
      for (int i = 0; i <= 240; ++i) {
        const Vec x = base + (-6.0 + 12.0 * i / 240.0) * dir;
        min_sup = std::min(min_sup, sup_at(x));
      }
      CHECK(min_sup > 0.0);
      CHECK(*r.emptiness_lower_bound <= min_sup + 1e-6);
    } else if (r.status == CoapproxStatus::NonEmpty) {
      ++nonempties;
      CHECK(sup_at(*r.witness) <= 1.1e-6);
    } else {
      CHECK(false);  // polygon gauges always certify one way or the other
    }
  }
  CHECK(empties > 3);
  CHECK(nonempties > 3);
}

TEST_CASE("best_approx") {
  SUBCASE("point on flat") {
    const Gauge g = triangle_gauge();
    const Flat k(v2(0, 0), {v2(1, 0)});
    const auto [x, val] = best_approx(g, k, v2(2, 0));
    CHECK(val == 0.0);
    CHECK((x - v2(2, 0)).norm() <= 1e-12);
  }
  SUBCASE("euclidean foot") {
    const auto [x, val] = best_approx(Gauge::euclidean(2), Flat(v2(0, 0), {v2(1, 0)}), v2(3, 4));
    CHECK(val == doctest::Approx(4.0).epsilon(1e-9));
    CHECK((x - v2(3, 0)).norm() <= 1e-7);
  }
  SUBCASE("max-norm tie broken deterministically") {
    const Gauge g = Gauge::lp(2, kInf);
    const Flat k(v2(0, 0), {v2(1, 0)});
    const auto [x, val] = best_approx(g, k, v2(0, 1));
    CHECK(val == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.eval(x - v2(0, 1)) == doctest::Approx(1.0).epsilon(1e-9));
    const auto [x2, val2] = best_approx(g, k, v2(0, 1));
    CHECK((x - x2).norm() == 0.0);

    // 1D grid oracle for the optimal value.
    double best = 1e300;
    for (int i = 0; i <= 4000; ++i) {
      const double t = -2.0 + 4.0 * i / 4000.0;
      best = std::min(best, g.eval(v2(t, 0) - v2(0, 1)));
    }
    CHECK(val == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("functional coapproximation in the plane") {
  SUBCASE("euclidean matches the projection") {
    const Flat k(v2(0, 0), {v2(1, 0)});
    const Vec z = functional_coapprox_2d(Gauge::euclidean(2), k, v2(3, 4));
    CHECK((z - v2(3, 0)).norm() <= 1e-9);
  }
  SUBCASE("max norm uses the supporting coordinate functional") {
    const Flat k(v2(0, 0), {v2(1, 0)});
    const Gauge g = Gauge::lp(2, kInf);
    const Vec z = functional_coapprox_2d(g, k, v2(0.5, 0.7));
    CHECK((z - v2(0.5, 0)).norm() <= 1e-9);
    CHECK(audit_violation(g, k, v2(0.5, 0.7), z, 4000, 1) <= 1e-9);
  }
  SUBCASE("point on the line is fixed") {
    const Flat k(v2(0, 0), {v2(1, 0)});
    const Vec z = functional_coapprox_2d(Gauge::euclidean(2), k, v2(2, 0));
    CHECK((z - v2(2, 0)).norm() <= 1e-12);
  }
  SUBCASE("asymmetric gauges are rejected") {
    const Flat k(v2(0, 0), {v2(1, 0)});
    CHECK_THROWS_AS(functional_coapprox_2d(triangle_gauge(), k, v2(1, 1)),
                    std::invalid_argument);
  }
  SUBCASE("agrees with the generic solver on random norms") {
    Rng rng(53);
    for (int i = 0; i < 10; ++i) {
      const Gauge g = random_symmetric_polygon(rng);
      Vec dir = rng.unit_vector(2);
      const Flat k(v2(0, 0), {dir});
      const Vec y = rng.in_box(2, 2.0);
      const Vec z = functional_coapprox_2d(g, k, y);
      CHECK(audit_violation(g, k, y, z, 4000, i) <= 1e-6);
    }
  }
}
