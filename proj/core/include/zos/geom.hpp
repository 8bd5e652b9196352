#pragma once
// Convex primitives for the 0/1/inf weighted-region solver: points, convex
// shapes (polygons, clipped ellipses, degenerate points), and the handful of
// exact queries the rest of the library needs: directional support, first ray
// hit, pairwise distance with witness points, common tangents and boundary
// arcs.  All tolerances are passed in by the caller (the scene owns the scale).

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zos {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point a);
double dist(Point a, Point b);
Point normalized(Point a);          // zero vector stays zero
Point perp_ccw(Point a);            // rotate +90 degrees
Point rotate(Point a, double angle);
Point dir_of(double angle);         // unit vector at the given angle

struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diameter() const;
  bool contains(Point p, double tol = 0.0) const;
  Rect expanded(double factor) const;  // scale about the center
  static Rect hull(const Rect& a, const Rect& b);
};

// Directional extremum of a convex set: a single point, or both endpoints of
// an extreme edge when the boundary is flat orthogonal to the direction.
struct Support {
  Point first;
  std::optional<Point> second;
};

struct RayHit {
  Point point;
  double param;  // distance along the unit ray direction
};

class ConvexShape {
 public:
  virtual ~ConvexShape() = default;

  // Extreme point(s) in direction `dir` (need not be unit).  Two points are
  // returned when an entire edge is extreme within `tol`.
  virtual Support support(Point dir, double tol) const = 0;

  // First boundary point hit by the ray origin + t*dir, t >= -tol; grazing
  // contacts count.  `dir` must be unit length so `param` is a distance.
  virtual std::optional<RayHit> first_ray_hit(Point origin, Point dir,
                                              double tol) const = 0;

  // Closed membership within tol.
  virtual bool contains(Point p, double tol) const = 0;

  // Parameter interval [t0, t1] of segment a + t*(b-a), t in [0,1], inside
  // the closed shape; nullopt when the segment misses it.
  virtual std::optional<std::pair<double, double>> segment_interval(
      Point a, Point b, double tol) const = 0;

  // Closed counter-clockwise boundary polyline; last vertex connects back to
  // the first.  Exact for polygons, chord-error bounded for curved shapes.
  virtual const std::vector<Point>& boundary_polyline() const = 0;

  virtual Rect bounds() const = 0;
  virtual bool degenerate() const = 0;  // no interior (point or segment)

  // Worst-case distance between the true boundary and boundary_polyline();
  // zero for exact polylines.  Callers add this to their tolerance when
  // matching true-boundary points against the polyline.
  virtual double boundary_slack() const { return 0.0; }

  double perimeter() const;
  double area() const;
  Point interior_point() const;  // centroid-ish point strictly inside
};

// Strictly convex polygon, vertices in counter-clockwise order.  `Weak`
// tolerates collinear vertices (used for simplified regions whose boundary
// walk keeps mid-edge sample points).
enum class Convexity { Strict, Weak };

class PolygonShape final : public ConvexShape {
 public:
  PolygonShape(std::vector<Point> vertices, Convexity mode = Convexity::Strict);

  Support support(Point dir, double tol) const override;
  std::optional<RayHit> first_ray_hit(Point origin, Point dir,
                                      double tol) const override;
  bool contains(Point p, double tol) const override;
  std::optional<std::pair<double, double>> segment_interval(
      Point a, Point b, double tol) const override;
  const std::vector<Point>& boundary_polyline() const override;
  Rect bounds() const override;
  bool degenerate() const override { return false; }

  const std::vector<Point>& vertices() const { return verts_; }

 private:
  std::vector<Point> verts_;
  Rect bounds_;
};

// Intersection of a (possibly rotated, possibly degenerate) ellipse with an
// axis-aligned rectangle.  Semi-axes may be 0 (flat) or +infinity (slab), so
// the same type covers the degenerate free-space cells of parallel curve
// segments.  Closed-form support/ray/membership; the boundary polyline is
// discretized lazily with chord error below `kChordErrorRel` of the diameter.
class EllipseRectShape final : public ConvexShape {
 public:
  static constexpr double kChordErrorRel = 1e-6;

  EllipseRectShape(Point center, double rx, double ry, double rotation,
                   Rect clip);

  Support support(Point dir, double tol) const override;
  std::optional<RayHit> first_ray_hit(Point origin, Point dir,
                                      double tol) const override;
  bool contains(Point p, double tol) const override;
  std::optional<std::pair<double, double>> segment_interval(
      Point a, Point b, double tol) const override;
  const std::vector<Point>& boundary_polyline() const override;
  Rect bounds() const override;
  bool degenerate() const override;
  double boundary_slack() const override;

  bool empty() const { return empty_; }
  Point center() const { return center_; }
  double radius_x() const { return rx_; }
  double radius_y() const { return ry_; }
  double rotation() const { return rot_; }
  Rect clip() const { return clip_; }

 private:
  Point to_local(Point p) const;    // ellipse frame
  Point to_world(Point p) const;
  // Interval of t with a + t*d inside the conic (quadratic in local frame).
  std::optional<std::pair<double, double>> conic_interval(Point a, Point d,
                                                          double tol) const;

  Point center_;
  double rx_, ry_, rot_;
  Point ax1_, ax2_;  // unit axis directions
  Rect clip_;
  Rect bounds_;
  bool empty_ = false;
  double min_conic_ = 0.0;  // min conic value over the clip rect
  mutable std::vector<Point> polyline_;  // lazy, guarded by once flag
  mutable bool polyline_ready_ = false;
  void ensure_polyline() const;
};

// Degenerate region used for query endpoints: a single point that is extreme
// in every direction.
class PointShape final : public ConvexShape {
 public:
  explicit PointShape(Point p);

  Support support(Point dir, double tol) const override;
  std::optional<RayHit> first_ray_hit(Point origin, Point dir,
                                      double tol) const override;
  bool contains(Point p, double tol) const override;
  std::optional<std::pair<double, double>> segment_interval(
      Point a, Point b, double tol) const override;
  const std::vector<Point>& boundary_polyline() const override;
  Rect bounds() const override;
  bool degenerate() const override { return true; }

  Point point() const { return p_; }

 private:
  Point p_;
  std::vector<Point> poly_;
};

struct DistanceResult {
  double distance = 0.0;
  Point witness_a;  // closest point on A
  Point witness_b;  // closest point on B
};

// Minimum distance between two convex shapes with witness points, via
// support-function iteration.  Throws std::invalid_argument when the shapes'
// interiors overlap by more than `tol`; touching shapes return distance 0.
DistanceResult shape_distance(const ConvexShape& a, const ConvexShape& b,
                              double tol);

// Distance from a point to a shape; zero (with witness q = p) when p is
// inside or on the shape.
DistanceResult point_shape_distance(Point p, const ConvexShape& a, double tol);

// Exact all-pairs vertex/edge distance for two polygons; reference path used
// by tests and the exact oracle.
DistanceResult polygon_distance_exact(const PolygonShape& a,
                                      const PolygonShape& b);

enum class TangentKind { Outer, Inner };

struct TangentPair {
  Point on_a;
  Point on_b;
  TangentKind kind;
};

// Common tangent lines of two disjoint convex shapes: always the two outer
// tangents, plus the two inner tangents when the shapes are strictly
// separated (up to four pairs).  Touch points are found by angular bisection
// on the support functions.
std::vector<TangentPair> common_tangents(const ConvexShape& a,
                                         const ConvexShape& b, double tol);

// Tangent touch points of the two supporting lines through an external point
// p.  If p lies on the boundary (within tol) the touch points degenerate to
// the far ends of the incident boundary edges.
std::vector<Point> point_tangents(Point p, const ConvexShape& a, double tol);

struct BoundaryArc {
  std::vector<Point> polyline;
  double length = 0.0;
};

// Boundary walk from a to b (both on the boundary within tol), counter-
// clockwise or clockwise.  a == b yields a zero-length arc.
BoundaryArc boundary_arc(const ConvexShape& shape, Point a, Point b, bool ccw,
                         double tol);

// Convenience wrappers with the names used throughout the library.
Support support_point(const ConvexShape& shape, Point dir, double tol);
std::optional<RayHit> ray_intersect(Point origin, Point dir,
                                    const ConvexShape& shape, double tol);

}  // namespace zos
