#pragma once
// Theta-graph over sample points.  Each point connects, per cone of the
// direction set, to the cone's nearest neighbor by projected distance onto
// the cone bisector.  Edges inside one weight-0 region are dropped (travel
// there is free via anchors); in obstacle-aware mode, candidates whose
// connecting segment cuts through a simplified obstacle's interior are
// skipped entirely.

#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "zos/sampling.hpp"

namespace zos {

struct ThetaEdge {
  int a = -1, b = -1;  // sample point ids, a < b
  double length = 0.0;
};

class ThetaEdgeSet {
 public:
  ThetaEdgeSet() = default;

  double theta() const { return ds_.theta; }
  int cone_count() const { return ds_.m; }
  const std::vector<ThetaEdge>& edges() const { return edges_; }

 private:
  friend ThetaEdgeSet build_theta(const std::vector<SamplePoint>&,
                                  const DirectionSet&,
                                  const std::vector<RegionWeight>&,
                                  const std::vector<SimplifiedRegion>&,
                                  double);
  friend std::vector<ThetaEdge> insert_point(
      ThetaEdgeSet&, const SamplePoint&, const std::vector<SamplePoint>&);

  bool add_edge(const SamplePoint& u, const SamplePoint& v);

  DirectionSet ds_;
  std::vector<RegionWeight> weights_;  // region id -> weight class
  std::vector<std::shared_ptr<const ConvexShape>> obstacles_;
  std::vector<ThetaEdge> edges_;
  std::set<std::pair<int, int>> present_;
  double tol_ = 0.0;
};

// Full construction.  `region_weights` is indexed by region id (empty means
// every region is weight 0); `obstacles` may be empty for the plain graph.
ThetaEdgeSet build_theta(const std::vector<SamplePoint>& points,
                         const DirectionSet& ds,
                         const std::vector<RegionWeight>& region_weights,
                         const std::vector<SimplifiedRegion>& obstacles,
                         double tol);

// Dynamic insertion of p (already appended to `all_points`): forward edges
// from p's cones plus reverse repairs where p now beats a vertex's recorded
// cone neighbor.  Repairs may add edges a full rebuild would not keep, but
// every added edge is a valid cone member; a point duplicating an existing
// location adds nothing.  Returns the edges added.
std::vector<ThetaEdge> insert_point(ThetaEdgeSet& theta, const SamplePoint& p,
                                    const std::vector<SamplePoint>& all_points);

// True when the open segment between a and b passes through the interior of
// the shape by more than tol (touching a boundary or sliding along an edge
// does not count).  Shared by the construction and its tests.
bool segment_blocked(Point a, Point b, const ConvexShape& shape, double tol);

}  // namespace zos
