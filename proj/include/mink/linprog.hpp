#ifndef MINK_LINPROG_HPP
#define MINK_LINPROG_HPP

#include "mink/common.hpp"

namespace mink {

/// One inequality a.x <= b.
struct LinearConstraint {
  Vec a;
  double b = 0.0;
};

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double value = 0.0;
  /// True when the optimum touches the enclosing box; callers that rely on
  /// the optimum being interior should enlarge the box and re-solve.
  bool hit_box = false;
};

/// Minimizes c.x over { x : a_i.x <= b_i } intersected with |x_j| <= bound.
///
/// Randomized-incremental scheme for a handful of variables and up to a few
/// thousand constraints; the shuffle is seeded, so results are deterministic
/// for identical inputs.
LpResult solve_lp(const Vec& c, const std::vector<LinearConstraint>& rows,
                  double bound = 1e9);

/// Same with equality rows e.x == f, eliminated by substitution up front.
LpResult solve_lp_eq(const Vec& c, const std::vector<LinearConstraint>& rows,
                     const std::vector<LinearConstraint>& eqs,
                     double bound = 1e9);

}  // namespace mink

#endif  // MINK_LINPROG_HPP
