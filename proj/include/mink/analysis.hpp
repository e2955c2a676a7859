#ifndef MINK_ANALYSIS_HPP
#define MINK_ANALYSIS_HPP

#include "mink/coapprox.hpp"
#include "mink/flat.hpp"
#include "mink/gauge.hpp"

#include <map>
#include <string>
#include <vector>

namespace mink {

/// Finitely supported sequence (xi_1, ..., xi_m), conceptually padded with
/// zeros.
struct TruncatedSequence {
  std::vector<double> entries;
};

/// max{ sup_i |xi_i|, sum_i xi_i }; the sum is compensated so the closed
/// forms of the worked examples are reproduced to the last bit.
double l1_gauge_eval(const TruncatedSequence& s);

struct SuiteFailure {
  std::string case_id;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  std::vector<SuiteFailure> failures;
  std::map<std::string, double> worst_margins;
  double wall_ms = 0.0;  // informational; never serialized

  bool passed() const { return failures.empty(); }
  void fail(const std::string& id, const std::string& detail) { failures.push_back({id, detail}); }
  void margin(const std::string& name, double v);
};

/// Sequence-space example on truncations: gauge(x_n) == 1, gauge(-x_n) ==
/// 1/n, gauge(x0^(m)) == 2 - 2^(1-m), and gauge(x0^(m) - x_n) <= 1 with the
/// convergence margins reported.
SuiteReport l1_example_check(int n_max, int m);

/// max over sampled pairs of |‖u+v‖^2 + ‖u-v‖^2 - 2‖u‖^2 - 2‖v‖^2|;
/// zero exactly for inner-product norms. Includes axis and diagonal pairs.
double parallelogram_defect(const Gauge& g, int sample_count, std::uint64_t seed);

/// For inner-product gauges: the metric projection onto random flats passes
/// the coapproximation audit, and perturbing it along the flat fails it.
SuiteReport projection_coapprox_check(const Gauge& g, int trials, std::uint64_t seed);

struct TheoremSuiteConfig {
  bool run_a = true;  // symmetric planar gauges: every line coproximinal
  bool run_b = true;  // asymmetric planar gauges: witness construction + verification
  bool run_c = true;  // planar witnesses extend to non-coproximinal planes in 3D
  bool run_d = true;  // 3D: inner-product gauges vs max-norm emptiness search
  int a_gauges = 20;
  int a_pairs = 50;
  int b_gauges = 20;
  int c_gauges = 3;
  int d_planes = 30;
  int d_draws = 500;
  std::uint64_t seed = 0;
  double tol = 1e-6;
};

SuiteReport verify_theorems(const TheoremSuiteConfig& cfg);

// Seeded generators used by the suites and tests.
Gauge random_symmetric_polygon(Rng& rng, int min_vertices = 3, int max_vertices = 8);
Gauge random_asymmetric_polygon(Rng& rng, int min_vertices = 4, int max_vertices = 9);
Gauge random_polytope_3d(Rng& rng, bool symmetric);
Mat random_spd(Rng& rng, int dim);
Flat random_flat(Rng& rng, int ambient_dim, int flat_dim, double scale = 2.0);

}  // namespace mink

#endif  // MINK_ANALYSIS_HPP
