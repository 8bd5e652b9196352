#pragma once
// Slow reference implementations used to cross-check the fast structures:
// an exact solver for obstacle-free scenes, a dense visibility-graph solver
// for scenes with obstacles, numeric verifiers for the trigonometric length
// identities behind the cone construction, and naive re-derivations of the
// point-location and theta-graph outputs.  Everything here favors
// obviousness over speed.

#include <vector>

#include "zos/sampling.hpp"
#include "zos/scene.hpp"
#include "zos/theta.hpp"
#include "zos/trapmap.hpp"

namespace zos {

enum class OracleMethod {
  CompleteGraphExact,  // Dijkstra over regions with exact pairwise distances
  DenseVisibility,     // dense boundary sampling + visibility graph
  GridDijkstra,        // uniform grid approximation (similarity queries)
  NaiveScan,           // brute-force structure cross-checks
};

struct OracleReport {
  double oracle_value = 0.0;
  OracleMethod method = OracleMethod::CompleteGraphExact;
  // Worst-case gap between oracle_value and the true optimum; 0 when the
  // method is exact.  Each solver documents how its bound is derived.
  double error_bound = 0.0;
  std::vector<Point> witness;  // polyline realizing oracle_value
};

// Exact optimum for a scene whose regions are all weight 0.  Travel inside a
// region is free and the plane has weight 1, so the optimum equals the
// shortest path in the complete graph over {regions} + {s, t} with edge
// weights the exact pairwise set distances.  Throws std::invalid_argument
// when the scene contains obstacles.
OracleReport exact_zero_region_sp(const Scene& scene, Point s, Point t);

// Reference approximation for scenes with obstacles: Dijkstra over a dense
// graph of boundary samples (at least `samples_per_region` per region, all
// polygon corners included when they are coarser than that), tangent points
// of the obstacles seen from s, t and from each other, and s, t themselves.
// Straight edges connect mutually visible nodes and are priced with
// zero-region overlaps subtracted, so the solver uses the same cost model as
// the spanner; obstacle boundaries contribute arc edges between consecutive
// samples.  error_bound = (2n + 2) * max adjacent-sample arc gap, covering
// one endpoint snap per region crossing on both sides of every hop; it
// shrinks linearly in `samples_per_region`.  Requires samples_per_region
// >= 50.  Unreachable targets report an infinite value and empty witness.
OracleReport dense_obstacle_sp(const Scene& scene, Point s, Point t,
                               int samples_per_region);

// Uniform-grid approximation for obstacle-free scenes, used to cross-check
// the similarity pipeline.  Nodes form a `resolution` x `resolution` lattice
// over the hull of the scene bounds and {s, t}; 8-neighbor edges cost their
// Euclidean length, except that an edge is free when both endpoints lie
// within one cell diagonal of a common 0-region (so free travel through
// regions thinner than a cell is still visible to the grid).  s and t snap
// to their nearest nodes.
//
// error_bound derivation (delta = cell diagonal, R = zero-region count,
// X = free runs along the witness, kappa = sqrt(4 - 2*sqrt(2)), the worst
// 8-neighbor/Euclidean length ratio):
//   - the witness becomes a legal continuous path by diving into the nearby
//     region and back at every free run, adding at most 2*delta per run, so
//     optimum <= value + 2*delta*X + snap;
//   - conversely some optimal path visits each convex 0-region at most once
//     (an excursion that returns to a convex region can be shortcut through
//     it for free), so it has at most 2R + 2 weight transitions; snapping it
//     to the lattice keeps free chords on free edges and inflates paid parts
//     by at most kappa plus 2*delta per transition, so
//     value <= kappa*optimum + 2*delta*(2R + 2) + snap.
// Both sides are folded into one symmetric bound:
//   error_bound = (kappa - 1)*value + 2*delta*(2R + 2 + X) + snap.
// Requires resolution >= 2; throws std::invalid_argument when the scene
// contains obstacles (boundary-hugging geodesics have no grid analogue).
OracleReport grid_weighted_sp(const Scene& scene, Point s, Point t,
                              int resolution);

// Absolute residuals of the two length identities checked by a verifier.
struct ResidualPair {
  double first = 0.0;
  double second = 0.0;
};

// Snapping a segment onto a cone boundary: for a segment pq making angle
// alpha with the upper cone ray from p (and beta = theta - alpha with the
// lower), drop q onto the upper ray along the direction perpendicular to the
// lower ray, giving q'.  Verifies
//   first:  | ||pq'|| - (cos(beta)/cos(theta)) * ||pq|| |
//   second: | ||qq'|| - (sin(alpha)/cos(theta)) * ||pq|| |
// Requires 0 < alpha < theta < pi/6.
ResidualPair verify_cone_snap(double alpha, double theta);

// Stretch of the cone-aligned enclosing quadrilateral: with q' as above and
// p' the symmetric drop of p (from the ray of q opposite the lower cone
// direction onto the perpendicular of the upper ray), let c be the
// intersection of lines pq' and qp'.  Verifies
//   first:  | ||p'q'|| - (1/cos(theta)) * ||pq|| |
//   second: | (||cp'|| + ||cq'||)
//             - ((sin(alpha)+sin(beta))/(cos(theta)sin(theta))) * ||pq|| |
// Requires 0 < alpha < theta < pi/6.
ResidualPair verify_cone_stretch(double alpha, double theta);

// Max ratio of boundary-arc length to chord length over adjacent pairs of
// the shape's directional extreme samples.  The sampling density guarantees
// the ratio never exceeds sec(theta/2).
double verify_arc_chord_bound(const ConvexShape& shape,
                              const DirectionSet& ds, double tol);

// Face containing `world`, found by scanning every face of the map and
// returning the smallest containing id (same tie rule as TrapMap::locate).
// Throws std::out_of_range when no face contains the point.
int naive_locate(const TrapMap& map, Point world);

// Brute-force cone-nearest re-derivation of the theta-graph, with the
// cone/bisector arithmetic spelled out in raw angles.  Returns edges sorted
// by (a, b) for direct comparison.
std::vector<ThetaEdge> naive_theta(const std::vector<SamplePoint>& points,
                                   const DirectionSet& ds,
                                   const std::vector<RegionWeight>& weights,
                                   const std::vector<SimplifiedRegion>& obstacles,
                                   double tol);

}  // namespace zos
