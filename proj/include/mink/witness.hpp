#ifndef MINK_WITNESS_HPP
#define MINK_WITNESS_HPP

#include "mink/coapprox.hpp"
#include "mink/flat.hpp"
#include "mink/gauge.hpp"

#include <optional>
#include <string>

namespace mink {

/// A chord [x0, x1] of the unit sphere through 0 together with a strictly
/// longer parallel chord [y0, y1]; K is the line through the first chord and
/// `target` (= y1) has no best coapproximation in K.
struct ChordWitness {
  Vec x0, x1;
  Vec y0, y1;
  double lambda = 0.0;  // (y1 - y0) = lambda * (x1 - x0), lambda > 1
  std::optional<Flat> k;
  Vec target;

  const Flat& line() const { return *k; }
};

struct Chord {
  Vec x0, x1;
  /// False when certification fell back to sampled supporting-line normals
  /// (smooth asymmetric bodies) instead of exact normal cones.
  bool certified_exact = true;
};

/// Scans chord directions of the planar unit ball for a chord through 0
/// that is not an affine diameter (no pair of parallel supporting lines at
/// its endpoints). Returns nullopt iff the gauge is a norm.
std::optional<Chord> find_non_diameter_chord(const Gauge& g);

/// Builds the full witness from a certified chord by maximizing the length
/// of the parallel chords (golden section on the concave width profile).
std::optional<ChordWitness> construct_witness(const Gauge& g);

/// Same construction for a caller-supplied chord through 0.
ChordWitness construct_witness_from_chord(const Gauge& g, const Vec& x0, const Vec& x1);

/// Re-derives the defining inclusion chain of the witness: sphere values,
/// 0 in [x0,x1], the parallel-chord factor, K meeting the ball exactly in
/// [x0,x1], interval disjointness after translation, and finally the solver
/// emptiness certificate. Appends a step report when `report` is non-null.
bool verify_witness(const Gauge& g, const ChordWitness& w, std::string* report = nullptr);

struct SeparationWitness {
  LinearFunctional h;
  std::optional<Flat> hyperplane;  // null space of h
  std::optional<Flat> x0_line;
  Vec y0;
  int n0 = 0;
  double margin = 0.0;
  std::vector<Vec> c_samples;
};

enum class SeparationStatus { Ok, PreconditionFailed, Undecided };

struct SeparationOutcome {
  SeparationStatus status = SeparationStatus::Undecided;
  std::optional<SeparationWitness> witness;
  std::string detail;
};

/// Extends a non-coproximinal line X0 (through 0, ambient dim 3) to a
/// separating hyperplane H with h == 0 on X0 and h <= -margin on sampled
/// points of the ball-intersection set C; H is itself a candidate
/// non-coproximinal plane for y0.
SeparationOutcome extend_to_hyperplane(const Gauge& g, const Flat& x0, const Vec& y0,
                                       std::uint64_t seed = 0);

}  // namespace mink

#endif  // MINK_WITNESS_HPP
