#ifndef MINK_POLYTOPE_HPP
#define MINK_POLYTOPE_HPP

#include "mink/common.hpp"
#include "mink/linprog.hpp"

#include <vector>

namespace mink {

/// Convex hull in the plane (monotone chain). Returns the extreme points in
/// counter-clockwise order, collinear points dropped.
std::vector<Vec> convex_hull_2d(std::vector<Vec> pts);

/// Vertices of { x : n_i.x <= 1 } for dim 2 or 3, found by enumerating all
/// d-subsets of active constraints. Assumes the polytope is bounded; callers
/// check boundedness separately (positively spanning normals).
std::vector<Vec> enumerate_vertices(const std::vector<Vec>& normals, int dim);

/// Facet normals a (with offsets scaled to 1, i.e. conv(verts) = {a.x <= 1})
/// of the hull of `verts`, dim 2 or 3. Requires 0 in the interior; that is
/// exactly when the polar body { a : v_j.a <= 1 } is bounded.
std::vector<Vec> facet_normals_from_vertices(const std::vector<Vec>& verts, int dim);

/// Sorts 2D points counter-clockwise by angle around the origin.
void sort_by_angle(std::vector<Vec>& pts);

/// True iff no u != 0 has p.u <= 0 for every p, decided by small linear
/// programs (exact up to the solver tolerance). For ball vertices this is
/// "0 lies in the interior of the hull"; for half-space normals it is
/// "the ball is bounded".
bool points_positively_span(const std::vector<Vec>& points, int dim, double margin = 1e-8);

}  // namespace mink

#endif  // MINK_POLYTOPE_HPP
