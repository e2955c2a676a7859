#ifndef MINK_GAUGE_HPP
#define MINK_GAUGE_HPP

#include "mink/common.hpp"

#include <memory>
#include <vector>

namespace mink {

enum class GaugeKind {
  Halfspaces,  ///< unit ball {x : a_i.x <= 1}; canonical form for polytopes of dim <= 3
  VertexLp,    ///< hull of stored vertices, evaluated through the polar LP (dim > 3)
  Euclidean,
  L1,
  LInf,
  Ellipsoid,   ///< unit ball {x : x^T M x <= 1}, M symmetric positive definite
  Shifted,     ///< translated euclidean/ellipsoid ball, evaluated in closed form
};

/// A gauge: the Minkowski functional of a bounded convex body with the
/// origin in its interior. Asymmetric in general. Immutable after
/// construction; all member functions are const and safe to call
/// concurrently.
class Gauge {
 public:
  static Gauge from_vertices(int dim, std::vector<Vec> vertices);
  static Gauge from_halfspaces(int dim, std::vector<Vec> normals);
  static Gauge euclidean(int dim);
  static Gauge lp(int dim, double p);  // p in {1, 2, inf}
  static Gauge ellipsoid(Mat m);
  /// Unit ball translated by `offset`; requires the origin to stay interior.
  /// Polytopal bases are renormalized exactly; euclidean/ellipsoid bases use
  /// a closed-form evaluation.
  static Gauge shifted(const Gauge& base, const Vec& offset);
  /// Three-dimensional gauge whose ball is (planar ball) x [-1, 1].
  static Gauge product_with_interval(const Gauge& planar);

  int dim() const;
  GaugeKind kind() const;

  /// min{ t > 0 : x/t in unit ball }, 0 at x = 0.
  double eval(const Vec& x) const;
  double operator()(const Vec& x) const { return eval(x); }

  /// Gauge of the point-reflected ball: reversed().eval(x) == eval(-x).
  Gauge reversed() const;

  /// Exact half-space description available (max-of-linear-forms evaluation).
  bool is_polytopal() const;
  const std::vector<Vec>& halfspaces() const;
  /// Facet normals actually supporting a (dim-1)-face; subset of halfspaces().
  const std::vector<Vec>& facets() const;
  bool has_ball_vertices() const;
  const std::vector<Vec>& ball_vertices() const;

  /// Support function of the unit ball: max{ u.x : eval(x) <= 1 }.
  double support(const Vec& u) const;
  /// dir / eval(dir); the point where the ray through dir leaves the ball.
  Vec boundary_point(const Vec& dir) const;

  /// A (sub)gradient of the gauge at x != 0.
  Vec gradient(const Vec& x) const;

  /// Gauge of (unit ball intersected with span of the two orthonormal
  /// columns of `basis`), expressed in basis coordinates.
  Gauge restricted_to_plane(const Mat& basis) const;

  const Mat& metric() const;       // Ellipsoid / Shifted
  const Vec& shift_offset() const; // Shifted
  bool shift_base_is_euclidean() const;

  struct Data;  // definition private to the implementation

 private:
  explicit Gauge(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Deterministic unit directions: 720 equiangular in 2D, 2000 Fibonacci
/// sphere points in 3D, 2000 seeded draws otherwise.
std::vector<Vec> direction_samples(int dim);

/// True iff eval(u) == eval(-u) everywhere, decided exactly from the vertex
/// set for canonical polytopes and from the direction sample otherwise.
bool is_norm(const Gauge& g, double tol = 1e-9);

/// max{ eval(x), eval(-x) }; the smallest norm above both the gauge and its
/// reverse.
double sym_norm_eval(const Gauge& g, const Vec& x);

struct EquivalenceConstants {
  double c0 = 0.0;
  double c1 = 0.0;
  /// Set when a sampled/refined path contributed instead of exact
  /// vertex/facet programs.
  bool approximate = false;
};

/// Best constants with c0*g1(x) <= g2(x) <= c1*g1(x); exact for polytopal
/// pairs, sampled with refinement otherwise.
EquivalenceConstants equivalence_constants(const Gauge& g1, const Gauge& g2);

enum class BallKind { Closed, Open, Sphere };

bool ball_membership(const Gauge& g, const Vec& center, double radius,
                     const Vec& x, BallKind kind, double tol);

}  // namespace mink

#endif  // MINK_GAUGE_HPP
