#pragma once
// Direction sets and boundary sampling.  The approximation quality is driven
// by a single cone angle theta = (pi/2)/j; every region boundary is sampled
// at the extreme points of the 4j directions k*theta, and the inscribed
// polygon through those samples stands in for the region everywhere else.

#include <optional>
#include <vector>

#include "zos/geom.hpp"
#include "zos/scene.hpp"

namespace zos {

struct DirectionSet {
  double theta = 0.0;        // cone angle (pi/2)/j
  int j = 0;                 // subdivisions per quadrant
  int m = 0;                 // 4j directions in total
  std::vector<Point> dirs;   // unit vectors at angles k*theta, k = 0..m-1

  // Stretch factor of a theta-graph with this cone angle:
  // 1 + 2 sin(theta/2) / (cos(theta/2) - sin(theta/2)).
  double spanning_ratio() const;

  // Index of the half-open cone [k*theta, (k+1)*theta) containing the
  // direction from `from` to `to`.
  int cone_of(Point from, Point to) const;
};

// Pick theta from the accuracy target.  Without obstacles theta must stay
// below both pi/6 and asin(eps/(1+eps)); with obstacles below pi/12 and
// asin(eps/(1+eps))/2.  theta is always an integer fraction of pi/2.
DirectionSet choose_theta(double epsilon, bool with_obstacles);

// Directional extreme points of the shape for every direction in the set.
// Flat extremes contribute both edge endpoints.  Points are deduplicated and
// returned in ccw boundary order.
std::vector<Point> boundary_support_samples(const ConvexShape& shape,
                                            const DirectionSet& ds,
                                            double tol);

// Inscribed stand-in for a region: the (weakly convex) polygon through a set
// of boundary sample points, kept in ccw boundary order.  Fewer than three
// non-collinear points degrade to a segment or a single point.
struct SimplifiedRegion {
  std::vector<Point> ring;                   // ccw ordered boundary samples
  std::shared_ptr<const ConvexShape> shape;  // polygon / flat shape / point
  bool degenerate = false;                   // no interior
};

SimplifiedRegion simplify_region(const ConvexShape& original,
                                 std::vector<Point> boundary_points,
                                 double tol);

// A vertex of the routing graph.
enum class SampleKind { Original, Propagated, Tangent, Query };

struct SamplePoint {
  int id = -1;
  Point location;
  SampleKind kind = SampleKind::Original;
  std::optional<int> region;     // owning region; empty for free query points
  std::vector<int> extreme_for;  // direction indices (original kind only)
};

// First original-region boundary hit by a ray, over all regions of the
// scene.  Hits closer than `tol` along the ray are ignored (the ray usually
// starts on a boundary).  Ties go to the lowest region id.
struct RayLanding {
  int region = -1;
  Point point;
  double param = 0.0;
};

std::optional<RayLanding> first_region_hit(const Scene& scene, Point origin,
                                           Point dir, double tol);

}  // namespace zos
