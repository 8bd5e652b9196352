#include "zos/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zos {

double DirectionSet::spanning_ratio() const {
  const double h = 0.5 * theta;
  return 1.0 + 2.0 * std::sin(h) / (std::cos(h) - std::sin(h));
}

int DirectionSet::cone_of(Point from, Point to) const {
  double a = std::atan2(to.y - from.y, to.x - from.x);
  if (a < 0.0) a += 2.0 * M_PI;
  int k = static_cast<int>(std::floor(a / theta));
  if (k >= m) k -= m;
  if (k < 0) k = 0;
  return k;
}

DirectionSet choose_theta(double epsilon, bool with_obstacles) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be positive and finite");
  double bound = std::asin(epsilon / (1.0 + epsilon));
  if (with_obstacles) bound *= 0.5;
  const int j_cap = with_obstacles ? 7 : 4;  // keeps theta under pi/12 | pi/6
  const int j = std::max<long>(
      j_cap, static_cast<long>(std::ceil((M_PI / 2.0) / bound - 1e-12)));
  DirectionSet ds;
  ds.j = static_cast<int>(j);
  ds.theta = (M_PI / 2.0) / static_cast<double>(j);
  ds.m = 4 * ds.j;
  ds.dirs.reserve(ds.m);
  for (int k = 0; k < ds.m; ++k) ds.dirs.push_back(dir_of(k * ds.theta));
  return ds;
}

namespace {

// Deduplicate within tol, preserving first occurrence order.
std::vector<Point> dedupe(std::vector<Point> pts, double tol) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    bool seen = false;
    for (const Point& q : out)
      if (dist(p, q) <= tol) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(p);
  }
  return out;
}

// Order boundary points ccw.  Non-degenerate shapes sort by angle around an
// interior point; degenerate (collinear) sets sort along their axis.
std::vector<Point> order_ccw(std::vector<Point> pts, Point interior,
                             bool degenerate) {
  if (degenerate) {
    Point axis{1, 0};
    double ext = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t k = i + 1; k < pts.size(); ++k)
        if (dist(pts[i], pts[k]) > ext) {
          ext = dist(pts[i], pts[k]);
          axis = normalized(pts[k] - pts[i]);
        }
    std::sort(pts.begin(), pts.end(), [&](Point a, Point b) {
      return dot(a, axis) < dot(b, axis);
    });
    return pts;
  }
  std::sort(pts.begin(), pts.end(), [&](Point a, Point b) {
    const double aa = std::atan2(a.y - interior.y, a.x - interior.x);
    const double ab = std::atan2(b.y - interior.y, b.x - interior.x);
    if (aa != ab) return aa < ab;
    return dist(a, interior) < dist(b, interior);
  });
  return pts;
}

bool all_collinear(const std::vector<Point>& pts, double tol) {
  if (pts.size() < 3) return true;
  // Line through the farthest pair.
  size_t bi = 0, bk = 1;
  double ext = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t k = i + 1; k < pts.size(); ++k)
      if (dist(pts[i], pts[k]) > ext) {
        ext = dist(pts[i], pts[k]);
        bi = i;
        bk = k;
      }
  if (ext <= tol) return true;
  const Point d = normalized(pts[bk] - pts[bi]);
  for (const Point& p : pts)
    if (std::abs(cross(d, p - pts[bi])) > tol) return false;
  return true;
}

}  // namespace

std::vector<Point> boundary_support_samples(const ConvexShape& shape,
                                            const DirectionSet& ds,
                                            double tol) {
  std::vector<Point> pts;
  for (const Point& d : ds.dirs) {
    const Support s = shape.support(d, tol);
    pts.push_back(s.first);
    if (s.second) pts.push_back(*s.second);
  }
  pts = dedupe(std::move(pts), tol);
  const bool degen = shape.degenerate() || all_collinear(pts, tol);
  return order_ccw(std::move(pts), shape.interior_point(), degen);
}

SimplifiedRegion simplify_region(const ConvexShape& original,
                                 std::vector<Point> boundary_points,
                                 double tol) {
  SimplifiedRegion out;
  auto pts = dedupe(std::move(boundary_points), tol);
  if (pts.empty())
    throw std::invalid_argument("cannot simplify a region with no samples");

  if (pts.size() == 1) {
    out.ring = pts;
    out.shape = std::make_shared<PointShape>(pts[0]);
    out.degenerate = true;
    return out;
  }

  if (all_collinear(pts, tol)) {
    out.ring = order_ccw(std::move(pts), {}, true);
    const Point a = out.ring.front(), b = out.ring.back();
    const double len = dist(a, b);
    if (len <= tol) {
      out.shape = std::make_shared<PointShape>(a);
    } else {
      // Flat shape spanning [a, b]: a zero-width conic along the segment.
      const Point mid = 0.5 * (a + b);
      const double ang = std::atan2(b.y - a.y, b.x - a.x);
      const Rect big{mid.x - 2 * len - 1, mid.y - 2 * len - 1,
                     mid.x + 2 * len + 1, mid.y + 2 * len + 1};
      out.shape = std::make_shared<EllipseRectShape>(mid, 0.0, 0.5 * len,
                                                     ang - M_PI / 2.0, big);
    }
    out.degenerate = true;
    return out;
  }

  out.ring = order_ccw(std::move(pts), original.interior_point(), false);
  out.shape = std::make_shared<PolygonShape>(out.ring, Convexity::Weak);
  out.degenerate = false;
  return out;
}

std::optional<RayLanding> first_region_hit(const Scene& scene, Point origin,
                                           Point dir, double tol) {
  std::optional<RayLanding> best;
  for (size_t i = 0; i < scene.regions.size(); ++i) {
    const auto& shape = scene.regions[i].shape;
    if (!shape) continue;
    auto hit = shape->first_ray_hit(origin, dir, tol);
    if (hit && hit->param <= tol) {
      // The ray starts on this boundary; nudge past the contact so a ray
      // entering the region still reports the far-side crossing.
      hit = shape->first_ray_hit(origin + (2.0 * tol) * dir, dir, tol);
      if (hit) hit->param += 2.0 * tol;
    }
    if (!hit || hit->param <= tol) continue;
    if (!best || hit->param < best->param - tol)
      best = RayLanding{static_cast<int>(i), hit->point, hit->param};
  }
  return best;
}

}  // namespace zos
