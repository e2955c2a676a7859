#ifndef MINK_FLAT_HPP
#define MINK_FLAT_HPP

#include "mink/common.hpp"

#include <optional>
#include <vector>

namespace mink {

/// An affine subspace: base point plus the span of k independent
/// directions. Stores the user's directions and an orthonormalized basis;
/// all numerics run on the latter. Immutable.
class Flat {
 public:
  Flat(Vec base, std::vector<Vec> directions);

  int ambient_dim() const { return static_cast<int>(base_.size()); }
  int dim() const { return static_cast<int>(onb_.cols()); }

  const Vec& base() const { return base_; }
  const std::vector<Vec>& directions() const { return user_dirs_; }
  const Mat& onb() const { return onb_; }

  Vec point_at(const Vec& params) const;
  Vec parameters_of(const Vec& x) const;

  /// Euclidean foot of y on the flat.
  Vec project(const Vec& y) const;
  bool contains(const Vec& x, double tol) const;

  /// Deterministic points of the flat whose parameters cover
  /// [-bound, bound]^k: a lattice including the endpoints, topped up with
  /// seeded uniform draws when the lattice cannot match `count` exactly.
  std::vector<Vec> sample(double bound, int count, std::uint64_t seed) const;

  Flat translated(const Vec& v) const;

 private:
  Vec base_;
  std::vector<Vec> user_dirs_;
  Mat onb_;  // ambient_dim x k, orthonormal columns
};

/// f(x) = coeffs.x, with an optional attached level `alpha` (e.g. the
/// maximum of f on a designated unit ball).
struct LinearFunctional {
  Vec coeffs;
  std::optional<double> alpha;
  double operator()(const Vec& x) const { return coeffs.dot(x); }
};

/// The hyperplane { x : f(x) == level } as a Flat.
Flat hyperplane_from_functional(const LinearFunctional& f, double level);

/// Inverse of the above for flats of codimension 1; alpha is left unset.
LinearFunctional functional_from_hyperplane(const Flat& h);

}  // namespace mink

#endif  // MINK_FLAT_HPP
