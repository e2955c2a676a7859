#ifndef MINK_COAPPROX_HPP
#define MINK_COAPPROX_HPP

#include "mink/flat.hpp"
#include "mink/gauge.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mink {

struct SearchBudget {
  int max_grid_evals = 262144;  // 64^3
  int max_rounds = 200;
  int refine_rounds = 40;
  double range_scale = 8.0;
};

/// One witness point of the constraint family: z in K together with the
/// value gauge(x-z) - gauge(y-z). Asymptotic probes stand in for the limit
/// along a recession direction of K; their z is a far representative point.
struct ViolationProbe {
  Vec z;
  double value = 0.0;
  bool is_asymptotic = false;
};

enum class CoapproxStatus { NonEmpty, Empty, Undecided };

struct CoapproxResult {
  CoapproxStatus status = CoapproxStatus::Undecided;
  std::optional<Vec> witness;
  double violation_at_witness = 0.0;
  std::optional<double> emptiness_lower_bound;
  std::vector<Vec> active_z;
  int iterations = 0;
};

/// Approximates V(x) = sup_z in K [gauge(x-z) - gauge(y-z)] for x in K:
/// parameter grid, local refinement, exact breakpoint/arrangement candidates
/// for polytopal gauges, and recession-direction limits. Returns the value
/// and the maximizing probe.
std::pair<double, ViolationProbe> violation(const Gauge& g, const Flat& k,
                                            const Vec& y, const Vec& x,
                                            const SearchBudget& budget = {});

/// Cutting-plane solve of min_{x in K} V(x). NonEmpty when a witness with
/// V <= tol is found, Empty when the relaxation's lower bound exceeds 2*tol,
/// Undecided otherwise. Deterministic given (inputs, budget).
CoapproxResult coapprox_solve(const Gauge& g, const Flat& k, const Vec& y,
                              double tol = 1e-6, const SearchBudget& budget = {});

/// Minimizer of gauge(x - y) over x in K and the minimum value. Ties broken
/// toward the lexicographically smallest parameter vector.
std::pair<Vec, double> best_approx(const Gauge& g, const Flat& k, const Vec& y);

/// Two-dimensional norm, line through the origin: the intersection of
/// f^{-1}(f(y)) with K, where f supports the unit ball at K's boundary
/// point. The returned point is a best coapproximation of y.
Vec functional_coapprox_2d(const Gauge& g, const Flat& k, const Vec& y);

/// Worst violation of gauge(x-z) <= gauge(y-z) over a dense audit family of
/// z in K: lattice + seeded random points + recession limits.
double audit_violation(const Gauge& g, const Flat& k, const Vec& y, const Vec& x,
                       int z_samples = 10000, std::uint64_t seed = 0);

}  // namespace mink

#endif  // MINK_COAPPROX_HPP
