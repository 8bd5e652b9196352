#include "zos/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace zos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_segment_dist(Point p, Point a, Point b) {
  const Point d = b - a;
  const double dd = dot(d, d);
  double t = dd > 0.0 ? dot(p - a, d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + t * d);
}

// Distance from an inside point to the shape's boundary.
double boundary_depth(Point p, const ConvexShape& s) {
  const auto& poly = s.boundary_polyline();
  if (poly.size() < 2) return 0.0;
  double best = kInf;
  for (size_t i = 0; i < poly.size(); ++i)
    best = std::min(
        best, point_segment_dist(p, poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

std::unordered_map<int, const SamplePoint*> index_points(
    const std::vector<SamplePoint>& points) {
  std::unordered_map<int, const SamplePoint*> by_id;
  by_id.reserve(points.size());
  for (const auto& p : points) by_id.emplace(p.id, &p);
  return by_id;
}

// Circumscribed-circle prefilter: most candidate segments pass nowhere near
// an obstacle, so skip the exact interval test for those.
struct BlockGuard {
  Point center;
  double radius = 0.0;
};

std::vector<BlockGuard> make_guards(
    const std::vector<std::shared_ptr<const ConvexShape>>& obstacles,
    double tol) {
  std::vector<BlockGuard> guards;
  guards.reserve(obstacles.size());
  for (const auto& ob : obstacles) {
    const Rect bb = ob->bounds();
    guards.push_back(
        {{0.5 * (bb.xmin + bb.xmax), 0.5 * (bb.ymin + bb.ymax)},
         0.5 * std::hypot(bb.width(), bb.height()) + tol});
  }
  return guards;
}

bool any_blocks(
    const std::vector<std::shared_ptr<const ConvexShape>>& obstacles,
    const std::vector<BlockGuard>& guards, Point a, Point b, double tol) {
  for (size_t i = 0; i < obstacles.size(); ++i) {
    if (point_segment_dist(guards[i].center, a, b) > guards[i].radius)
      continue;
    if (segment_blocked(a, b, *obstacles[i], tol)) return true;
  }
  return false;
}

// Nearest candidate per cone of u, by projected distance onto the cone
// bisector; ties break toward the lower id.  Blocked candidates are skipped.
std::vector<int> cone_nearest(
    const SamplePoint& u, const std::vector<SamplePoint>& points,
    const DirectionSet& ds,
    const std::vector<std::shared_ptr<const ConvexShape>>& obstacles,
    const std::vector<BlockGuard>& guards, double tol) {
  std::vector<double> best(ds.m, kInf);
  std::vector<int> pick(ds.m, -1);
  for (const auto& v : points) {
    if (v.id == u.id) continue;
    if (dist(u.location, v.location) <= tol) continue;
    if (any_blocks(obstacles, guards, u.location, v.location, tol)) continue;
    const int k = ds.cone_of(u.location, v.location);
    const double proj =
        dot(v.location - u.location, dir_of((k + 0.5) * ds.theta));
    if (proj < best[k] || (proj == best[k] && v.id < pick[k])) {
      best[k] = proj;
      pick[k] = v.id;
    }
  }
  return pick;
}

}  // namespace

bool segment_blocked(Point a, Point b, const ConvexShape& shape, double tol) {
  if (shape.degenerate()) return false;  // measure-zero interior
  const auto iv = shape.segment_interval(a, b, tol);
  if (!iv) return false;
  const double t0 = std::max(iv->first, 0.0);
  const double t1 = std::min(iv->second, 1.0);
  if (t1 <= t0) return false;
  if ((t1 - t0) * dist(a, b) <= tol) return false;  // corner touch
  const Point mid = a + (0.5 * (t0 + t1)) * (b - a);
  // A segment sliding along the boundary has zero depth and stays legal;
  // only genuine interior passage blocks.
  return boundary_depth(mid, shape) > tol;
}

bool ThetaEdgeSet::add_edge(const SamplePoint& u, const SamplePoint& v) {
  if (u.region && v.region && *u.region == *v.region) {
    const int r = *u.region;
    const bool zero = r < 0 || r >= static_cast<int>(weights_.size()) ||
                      weights_[r] == RegionWeight::Zero;
    // Travel inside one 0-region is free via its anchor; obstacle boundary
    // points still need their chord edges.
    if (zero) return false;
  }
  const auto [lo, hi] = std::minmax(u.id, v.id);
  if (!present_.insert({lo, hi}).second) return false;
  edges_.push_back({lo, hi, dist(u.location, v.location)});
  return true;
}

ThetaEdgeSet build_theta(const std::vector<SamplePoint>& points,
                         const DirectionSet& ds,
                         const std::vector<RegionWeight>& region_weights,
                         const std::vector<SimplifiedRegion>& obstacles,
                         double tol) {
  ThetaEdgeSet t;
  t.ds_ = ds;
  t.weights_ = region_weights;
  t.tol_ = tol;
  for (const auto& ob : obstacles)
    if (ob.shape) t.obstacles_.push_back(ob.shape);

  const auto by_id = index_points(points);
  const auto guards = make_guards(t.obstacles_, tol);
  for (const auto& u : points) {
    const auto pick = cone_nearest(u, points, ds, t.obstacles_, guards, tol);
    for (int id : pick)
      if (id >= 0) t.add_edge(u, *by_id.at(id));
  }
  return t;
}

std::vector<ThetaEdge> insert_point(ThetaEdgeSet& th, const SamplePoint& p,
                                    const std::vector<SamplePoint>& all_points) {
  for (const auto& v : all_points)
    if (v.id != p.id && dist(v.location, p.location) <= th.tol_) return {};

  const auto by_id = index_points(all_points);
  const size_t before = th.edges_.size();

  // Current best projected distance per (vertex, cone), from recorded edges.
  std::unordered_map<int, std::vector<double>> best;
  auto slot = [&](int id) -> std::vector<double>& {
    return best.try_emplace(id, std::vector<double>(th.ds_.m, kInf))
        .first->second;
  };
  for (const ThetaEdge& e : th.edges_) {
    const std::pair<int, int> dirs[2] = {{e.a, e.b}, {e.b, e.a}};
    for (const auto& [x, y] : dirs) {
      const auto ux = by_id.find(x);
      const auto vy = by_id.find(y);
      if (ux == by_id.end() || vy == by_id.end()) continue;
      const int k =
          th.ds_.cone_of(ux->second->location, vy->second->location);
      const double proj = dot(vy->second->location - ux->second->location,
                              dir_of((k + 0.5) * th.ds_.theta));
      auto& row = slot(x);
      row[k] = std::min(row[k], proj);
    }
  }

  // Forward: p's own cone-nearest edges.
  const auto guards = make_guards(th.obstacles_, th.tol_);
  const auto pick =
      cone_nearest(p, all_points, th.ds_, th.obstacles_, guards, th.tol_);
  for (int id : pick)
    if (id >= 0) th.add_edge(p, *by_id.at(id));

  // Reverse repairs: p displaces (or fills) a vertex's cone slot.
  for (const auto& u : all_points) {
    if (u.id == p.id) continue;
    if (any_blocks(th.obstacles_, guards, u.location, p.location, th.tol_))
      continue;
    const int k = th.ds_.cone_of(u.location, p.location);
    const double proj =
        dot(p.location - u.location, dir_of((k + 0.5) * th.ds_.theta));
    if (proj <= slot(u.id)[k]) th.add_edge(u, p);
  }

  return {th.edges_.begin() + before, th.edges_.end()};
}

}  // namespace zos
