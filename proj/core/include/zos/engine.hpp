#pragma once
// The routing structure: boundary samples of every region are wired into a
// sparse weighted graph (anchor stars inside 0-regions, region-to-region
// connectors from per-direction trapezoidal decompositions, cone-nearest
// edges, and boundary chords along obstacles).  Queries splice s and t into
// a private overlay, run Dijkstra, and expand the abstract path into a
// geometric weighted path in the original environment.

#include <optional>
#include <utility>
#include <vector>

#include "zos/sampling.hpp"
#include "zos/scene.hpp"
#include "zos/theta.hpp"
#include "zos/trapmap.hpp"

namespace zos {

enum class EdgeKind {
  Anchor,         // zero-weight star edge inside one 0-region
  TrapAdjacency,  // anchors of two 0-regions facing each other across a face
  TrapWall,       // vertical attachment between a sample and a facing region
  Theta,          // cone-nearest neighbor edge
  Boundary,       // chord between adjacent samples on one obstacle
  Query,          // overlay edge created while inserting a query point
};

struct GraphEdge {
  int a = -1, b = -1;  // vertex ids, a < b for structural edges
  double weight = 0.0;
  EdgeKind kind = EdgeKind::Theta;
  // Obstacle-free boundary points realizing a region-connector edge: the
  // travel leaves endpoint a's region at via_a and enters endpoint b's
  // region at via_b.  Unset for edges realized as plain straight segments.
  std::optional<Point> via_a, via_b;
};

enum class Medium { Plane, ZeroRegion, ObstacleBoundary };

struct PathSegment {
  std::vector<Point> geometry;  // straight pair or boundary polyline
  Medium medium = Medium::Plane;
  int region = -1;  // region id for non-plane media
  double cost = 0.0;
};

struct WeightedPath {
  std::vector<PathSegment> segments;
  double graph_weight = 0.0;     // sum of abstract edge weights
  double realized_weight = 0.0;  // sum of segment costs
  std::vector<int> vertices;     // graph vertex ids along the path
};

struct GraphPath {
  std::vector<int> vertices;
  std::vector<int> edges;  // indices into the edge list, one per hop
  double weight = 0.0;
};

// Exact shortest path over an undirected nonnegative edge list; equal
// distances resolve toward the smaller vertex id.  nullopt = unreachable.
std::optional<GraphPath> dijkstra_path(int vertex_count,
                                       const std::vector<GraphEdge>& edges,
                                       int source, int target);

class StructureB {
 public:
  // Samples every region, builds the per-direction trapezoidal maps, derives
  // the connector edges and the cone graph.  Throws std::invalid_argument on
  // invalid scenes or epsilon outside (0, 1).
  static StructureB build(Scene scene, double epsilon);

  // Approximate weighted shortest path: realized weight is within (1+eps) of
  // optimal.  Throws std::invalid_argument when s or t lies strictly inside
  // an obstacle; returns nullopt when the graph leaves t unreachable.
  std::optional<WeightedPath> query(Point s, Point t) const;

  // Realization of the straight segment st: clipped against 0-regions and
  // diverted along obstacle boundaries, so it is always legal but makes no
  // optimality claim.  Cheap upper-bound candidate for callers that can
  // compare realized weights.
  WeightedPath straight_path(Point s, Point t) const;

  // Expand an abstract edge path into environment geometry.  path_edges[i]
  // joins path_points[i] and path_points[i+1]; anchor and connector edges
  // become free in-region travel, same-obstacle edges become boundary arcs,
  // everything else becomes straight travel clipped against 0-regions and
  // diverted around obstacle-boundary bulges the simplified shapes shave off.
  WeightedPath realize_path(const std::vector<SamplePoint>& path_points,
                            const std::vector<GraphEdge>& path_edges) const;

  const Scene& scene() const { return scene_; }
  double epsilon() const { return epsilon_; }
  const DirectionSet& directions() const { return ds_; }
  const std::vector<SamplePoint>& vertices() const { return verts_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<TrapMap>& maps() const { return maps_; }
  const ThetaEdgeSet& theta() const { return theta_; }
  // Anchor vertex id of a 0-region (-1 for obstacles).
  int anchor_of(int region) const { return anchors_[region]; }

 private:
  StructureB() = default;

  struct Overlay;  // per-query copy-on-write extension of the graph
  int insert_query_point(Overlay& ov, Point q) const;

  Scene scene_;
  double epsilon_ = 0.0;
  double eta_ = 0.0;
  DirectionSet ds_;
  std::vector<TrapMap> maps_;
  std::vector<SamplePoint> verts_;
  std::vector<GraphEdge> edges_;
  ThetaEdgeSet theta_;
  std::vector<int> anchors_;                 // per region, -1 for obstacles
  std::vector<std::vector<int>> region_verts_;  // vertex ids per region
  // Obstacle boundary samples ordered by arc position, for chord edges and
  // query-time splicing.
  std::vector<std::vector<std::pair<double, int>>> boundary_order_;
};

}  // namespace zos
