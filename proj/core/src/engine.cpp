#include "zos/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "zos/geom.hpp"

namespace zos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

double point_segment_dist(Point p, Point a, Point b) {
  const Point d = b - a;
  const double dd = dot(d, d);
  double t = dd > 0.0 ? dot(p - a, d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + t * d);
}

// Distance from an inside point to the shape's boundary polyline.
double boundary_depth(Point p, const ConvexShape& s) {
  const auto& poly = s.boundary_polyline();
  if (poly.size() < 2) return 0.0;
  double best = kInf;
  for (size_t i = 0; i < poly.size(); ++i)
    best = std::min(
        best, point_segment_dist(p, poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

// Arc-length position of a boundary point, measured ccw along the polyline.
double arc_param(const ConvexShape& shape, Point p) {
  const auto& poly = shape.boundary_polyline();
  if (poly.size() < 2) return 0.0;
  double best = kInf, best_param = 0.0, cum = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % poly.size()];
    const double len = dist(a, b);
    const Point d = b - a;
    const double dd = dot(d, d);
    double t = dd > 0.0 ? dot(p - a, d) / dd : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dp = dist(p, a + t * d);
    if (dp < best) {
      best = dp;
      best_param = cum + t * len;
    }
    cum += len;
  }
  return best_param;
}

bool blocked_by_obstacles(const Scene& sc, Point a, Point b, double tol) {
  for (const auto& reg : sc.regions)
    if (reg.weight == RegionWeight::Obstacle &&
        segment_blocked(a, b, *reg.shape, tol))
      return true;
  return false;
}

// Shorter of the two boundary walks between two points on one obstacle.
PathSegment arc_segment(const ConvexShape& shape, int region, Point a, Point b,
                        double tol) {
  const BoundaryArc fwd = boundary_arc(shape, a, b, true, tol);
  const BoundaryArc rev = boundary_arc(shape, a, b, false, tol);
  const BoundaryArc& pick = fwd.length <= rev.length ? fwd : rev;
  return {pick.polyline, Medium::ObstacleBoundary, region, pick.length};
}

// Straight travel from a to b, clipped against 0-regions (free portions) on
// the parameter interval [ta, tb] of the full segment.
void zero_clip(const Scene& sc, double tol, Point a, Point b, double ta,
               double tb, std::vector<PathSegment>& out) {
  const Point p = lerp(a, b, ta);
  const Point q = lerp(a, b, tb);
  const double len = dist(p, q);
  if (len <= 0.0) return;

  struct Span {
    double t0, t1;
    int region;
  };
  std::vector<Span> spans;
  for (size_t r = 0; r < sc.regions.size(); ++r) {
    if (sc.regions[r].weight != RegionWeight::Zero) continue;
    const auto iv = sc.regions[r].shape->segment_interval(p, q, tol);
    if (!iv) continue;
    const double t0 = std::max(iv->first, 0.0);
    const double t1 = std::min(iv->second, 1.0);
    if ((t1 - t0) * len <= tol) continue;
    spans.push_back({t0, t1, static_cast<int>(r)});
  }
  std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) {
    return std::tie(x.t0, x.region) < std::tie(y.t0, y.region);
  });

  double cur = 0.0;
  Point cur_pt = p;
  for (const Span& s : spans) {
    const double t0 = std::max(s.t0, cur);
    if (s.t1 <= t0) continue;
    if (t0 > cur) {
      const Point e = lerp(p, q, t0);
      out.push_back({{cur_pt, e}, Medium::Plane, -1, (t0 - cur) * len});
      cur_pt = e;
    }
    const Point e = lerp(p, q, s.t1);
    out.push_back({{cur_pt, e}, Medium::ZeroRegion, s.region, 0.0});
    cur_pt = e;
    cur = s.t1;
  }
  if (cur < 1.0)
    out.push_back({{cur_pt, q}, Medium::Plane, -1, (1.0 - cur) * len});
}

// Straight edge expansion: divert around obstacle-boundary bulges that the
// inscribed stand-ins shave off (the edge was vetted against those), then
// clip the straight remainder against 0-regions.
void append_straight(const Scene& sc, double tol, Point a, Point b,
                     std::vector<PathSegment>& out) {
  const double len = dist(a, b);
  if (len <= 0.0) return;

  struct Crossing {
    double t0, t1;
    int region;
  };
  std::vector<Crossing> cross;
  for (size_t r = 0; r < sc.regions.size(); ++r) {
    const auto& reg = sc.regions[r];
    if (reg.weight != RegionWeight::Obstacle || reg.shape->degenerate())
      continue;
    const auto iv = reg.shape->segment_interval(a, b, tol);
    if (!iv) continue;
    const double t0 = std::max(iv->first, 0.0);
    const double t1 = std::min(iv->second, 1.0);
    if ((t1 - t0) * len <= tol) continue;
    const Point mid = lerp(a, b, 0.5 * (t0 + t1));
    if (boundary_depth(mid, *reg.shape) <= tol) continue;
    cross.push_back({t0, t1, static_cast<int>(r)});
  }
  std::sort(cross.begin(), cross.end(), [](const Crossing& x, const Crossing& y) {
    return std::tie(x.t0, x.region) < std::tie(y.t0, y.region);
  });

  double cur = 0.0;
  for (const Crossing& c : cross) {
    const double t0 = std::max(c.t0, cur);
    if (c.t1 <= t0) continue;
    if (t0 > cur) zero_clip(sc, tol, a, b, cur, t0, out);
    out.push_back(arc_segment(*sc.regions[c.region].shape, c.region,
                              lerp(a, b, t0), lerp(a, b, c.t1), tol));
    cur = c.t1;
  }
  if (cur < 1.0) zero_clip(sc, tol, a, b, cur, 1.0, out);
}

}  // namespace

std::optional<GraphPath> dijkstra_path(int vertex_count,
                                       const std::vector<GraphEdge>& edges,
                                       int source, int target) {
  if (source < 0 || source >= vertex_count || target < 0 ||
      target >= vertex_count)
    throw std::invalid_argument("dijkstra endpoint out of range");

  struct Arc {
    int to;
    double w;
    int edge;
  };
  std::vector<std::vector<Arc>> adj(vertex_count);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const GraphEdge& e = edges[i];
    if (e.a < 0 || e.b < 0 || e.a >= vertex_count || e.b >= vertex_count ||
        e.a == e.b)
      continue;
    if (e.weight < 0.0)
      throw std::invalid_argument("negative edge weight");
    adj[e.a].push_back({e.b, e.weight, i});
    adj[e.b].push_back({e.a, e.weight, i});
  }

  std::vector<double> dist(vertex_count, kInf);
  std::vector<int> pred(vertex_count, -1), pred_edge(vertex_count, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == target) break;
    for (const Arc& arc : adj[u]) {
      const double nd = d + arc.w;
      // Strict improvement only: the (distance, id) pop order already makes
      // equal-length choices deterministic, and tie-updates could cycle the
      // predecessor chain across zero-weight edges.
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        pred[arc.to] = u;
        pred_edge[arc.to] = arc.edge;
        heap.push({nd, arc.to});
      }
    }
  }

  if (dist[target] == kInf) return std::nullopt;
  GraphPath gp;
  gp.weight = dist[target];
  for (int v = target; v != source; v = pred[v]) {
    if (pred[v] < 0) return std::nullopt;
    gp.vertices.push_back(v);
    gp.edges.push_back(pred_edge[v]);
  }
  gp.vertices.push_back(source);
  std::reverse(gp.vertices.begin(), gp.vertices.end());
  std::reverse(gp.edges.begin(), gp.edges.end());
  return gp;
}

StructureB StructureB::build(Scene scene, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  scene.validate();

  StructureB b;
  b.scene_ = std::move(scene);
  b.epsilon_ = epsilon;
  b.eta_ = b.scene_.eta();
  const Scene& sc = b.scene_;
  const double tol = b.eta_;
  const int nr = static_cast<int>(sc.regions.size());
  const bool with_obs = sc.has_obstacles();
  b.ds_ = choose_theta(epsilon, with_obs);

  std::vector<RegionWeight> weights(nr);
  for (int r = 0; r < nr; ++r) weights[r] = sc.regions[r].weight;

  b.anchors_.assign(nr, -1);
  b.region_verts_.assign(nr, {});
  b.boundary_order_.assign(nr, {});

  // Deduplicates by location; a point shared by several regions keeps one
  // vertex but joins every owner's list.
  auto add_vertex = [&](Point p, SampleKind kind, int region) -> int {
    for (const auto& v : b.verts_)
      if (dist(v.location, p) <= tol) {
        auto& list = b.region_verts_[region];
        if (std::find(list.begin(), list.end(), v.id) == list.end())
          list.push_back(v.id);
        return v.id;
      }
    const int id = static_cast<int>(b.verts_.size());
    b.verts_.push_back({id, p, kind, region, {}});
    b.region_verts_[region].push_back(id);
    return id;
  };

  // Step 1: directional extreme samples of every region boundary.
  for (int r = 0; r < nr; ++r) {
    const ConvexShape& shape = *sc.regions[r].shape;
    for (const Point& p : boundary_support_samples(shape, b.ds_, tol))
      add_vertex(p, SampleKind::Original, r);
    for (int k = 0; k < b.ds_.m; ++k) {
      const Support sup = shape.support(b.ds_.dirs[k], tol);
      auto mark = [&](Point p) {
        for (int id : b.region_verts_[r])
          if (dist(b.verts_[id].location, p) <= tol) {
            auto& ef = b.verts_[id].extreme_for;
            if (std::find(ef.begin(), ef.end(), k) == ef.end())
              ef.push_back(k);
            return;
          }
      };
      mark(sup.first);
      if (sup.second) mark(*sup.second);
    }
    if (!b.region_verts_[r].empty() && weights[r] == RegionWeight::Zero)
      b.anchors_[r] = b.region_verts_[r].front();
  }

  // Inscribed stand-ins through the original samples drive the maps.
  std::vector<SimplifiedRegion> simp(nr);
  for (int r = 0; r < nr; ++r) {
    std::vector<Point> pts;
    for (int id : b.region_verts_[r]) pts.push_back(b.verts_[id].location);
    simp[r] = simplify_region(*sc.regions[r].shape, std::move(pts), tol);
  }

  // One trapezoidal decomposition per cone direction.
  b.maps_.reserve(b.ds_.m);
  for (int k = 0; k < b.ds_.m; ++k)
    b.maps_.emplace_back(simp, b.ds_.dirs[k], sc.bbox(), tol);

  std::set<std::tuple<int, int, int>> edge_seen;
  auto add_edge = [&](int u, int v, double w, EdgeKind kind,
                      std::optional<Point> via_u = {},
                      std::optional<Point> via_v = {}) {
    if (u < 0 || v < 0 || u == v) return;
    if (u > v) {
      std::swap(u, v);
      std::swap(via_u, via_v);
    }
    if (!edge_seen.insert({static_cast<int>(kind), u, v}).second) return;
    b.edges_.push_back({u, v, w, kind, via_u, via_v});
  };

  // Collect vertical relations: region pairs facing each other across a free
  // face, and wall attachments between different regions.
  std::set<std::pair<int, int>> adj_pairs;
  struct WallFallback {
    double w = kInf;
    Point station, foot;
    int station_region = -1;
  };
  std::map<std::pair<int, int>, WallFallback> zz_fallback;
  std::vector<WallRecord> cross_walls;
  for (const TrapMap& map : b.maps_) {
    for (const FaceAdjacency& fa : map.adjacencies())
      if (fa.below_region >= 0 && fa.above_region >= 0 &&
          fa.below_region != fa.above_region)
        adj_pairs.insert(std::minmax(fa.below_region, fa.above_region));
    if (!with_obs) continue;
    for (const WallRecord& w : map.walls()) {
      if (w.station_region < 0 || w.target_region < 0 ||
          w.station_region == w.target_region)
        continue;
      adj_pairs.insert(std::minmax(w.station_region, w.target_region));
      cross_walls.push_back(w);
    }
  }

  // Propagated samples: re-shoot every wall against the original target
  // boundary (the inscribed chain orders first hits identically, so the
  // landing region agrees); walls touching an obstacle become edges.
  for (const WallRecord& w : cross_walls) {
    const auto hit =
        ray_intersect(w.station, w.dir, *sc.regions[w.target_region].shape, tol);
    if (!hit) continue;  // grazing attachment, corner sample already present
    const int pid = add_vertex(hit->point, SampleKind::Propagated,
                               w.target_region);
    const double len = dist(w.station, b.verts_[pid].location);
    const bool pair_zero = weights[w.station_region] == RegionWeight::Zero &&
                           weights[w.target_region] == RegionWeight::Zero;
    if (pair_zero) {
      auto& fb = zz_fallback[std::minmax(w.station_region, w.target_region)];
      if (len < fb.w) {
        fb.w = len;
        fb.station = w.station;
        fb.foot = b.verts_[pid].location;
        fb.station_region = w.station_region;
      }
      continue;
    }
    int sid = -1;
    for (int id : b.region_verts_[w.station_region])
      if (dist(b.verts_[id].location, w.station) <= tol) {
        sid = id;
        break;
      }
    if (sid >= 0)
      add_edge(sid, pid, dist(b.verts_[sid].location, b.verts_[pid].location),
               EdgeKind::TrapWall);
  }

  // Region-pair connectors and obstacle-obstacle tangent samples.
  for (const auto& [ra, rb] : adj_pairs) {
    const bool za = weights[ra] == RegionWeight::Zero;
    const bool zb = weights[rb] == RegionWeight::Zero;
    if (za && zb) {
      const DistanceResult dr =
          shape_distance(*sc.regions[ra].shape, *sc.regions[rb].shape, tol);
      if (!with_obs ||
          !blocked_by_obstacles(sc, dr.witness_a, dr.witness_b, tol)) {
        add_edge(b.anchors_[ra], b.anchors_[rb], dr.distance,
                 EdgeKind::TrapAdjacency, dr.witness_a, dr.witness_b);
      } else if (auto it = zz_fallback.find({ra, rb});
                 it != zz_fallback.end()) {
        // The closest-approach segment is walled off; fall back to the
        // shortest obstacle-free vertical attachment between the two.
        const WallFallback& fb = it->second;
        const bool fwd = fb.station_region == ra;
        add_edge(b.anchors_[ra], b.anchors_[rb], fb.w, EdgeKind::TrapAdjacency,
                 fwd ? fb.station : fb.foot, fwd ? fb.foot : fb.station);
      }
    } else if (!za && !zb) {
      const ConvexShape& sa = *sc.regions[ra].shape;
      const ConvexShape& sb = *sc.regions[rb].shape;
      if (!sa.degenerate() && !sb.degenerate())
        for (const TangentPair& tp : common_tangents(sa, sb, tol)) {
          add_vertex(tp.on_a, SampleKind::Tangent, ra);
          add_vertex(tp.on_b, SampleKind::Tangent, rb);
        }
    }
    // Mixed pairs are covered by the wall edges above.
  }

  // Re-inscribe obstacles through the full sample set; the cone graph vets
  // visibility against these stand-ins.
  std::vector<SimplifiedRegion> theta_obs;
  if (with_obs)
    for (int r = 0; r < nr; ++r) {
      if (weights[r] != RegionWeight::Obstacle) continue;
      std::vector<Point> pts;
      for (int id : b.region_verts_[r]) pts.push_back(b.verts_[id].location);
      theta_obs.push_back(
          simplify_region(*sc.regions[r].shape, std::move(pts), tol));
    }

  b.theta_ = build_theta(b.verts_, b.ds_, weights, theta_obs, tol);
  for (const ThetaEdge& e : b.theta_.edges()) {
    const int ra = b.verts_[e.a].region.value_or(-1);
    const int rb = b.verts_[e.b].region.value_or(-1);
    if (ra >= 0 && ra == rb) continue;  // in-region travel has its own edges
    add_edge(e.a, e.b, e.length, EdgeKind::Theta);
  }

  // Boundary chords between arc-adjacent samples of each obstacle.
  for (int r = 0; r < nr; ++r) {
    if (weights[r] != RegionWeight::Obstacle) continue;
    auto& order = b.boundary_order_[r];
    for (int id : b.region_verts_[r])
      order.push_back({arc_param(*sc.regions[r].shape, b.verts_[id].location),
                       id});
    std::sort(order.begin(), order.end());
    const int m = static_cast<int>(order.size());
    if (m < 2) continue;
    for (int i = 0; i < m; ++i) {
      const int u = order[i].second;
      const int v = order[(i + 1) % m].second;
      add_edge(u, v, dist(b.verts_[u].location, b.verts_[v].location),
               EdgeKind::Boundary);
    }
  }

  // Anchor stars: free travel inside each 0-region.
  for (int r = 0; r < nr; ++r) {
    if (weights[r] != RegionWeight::Zero || b.anchors_[r] < 0) continue;
    for (int id : b.region_verts_[r])
      add_edge(b.anchors_[r], id, 0.0, EdgeKind::Anchor);
  }

  return b;
}

struct StructureB::Overlay {
  std::vector<SamplePoint> verts;
  std::vector<GraphEdge> edges;
  ThetaEdgeSet theta;
  std::vector<std::vector<std::pair<double, int>>> boundary_order;
  std::set<std::pair<int, int>> edge_set;
  std::vector<int> new_ids;  // vertices created for the current query point
};

int StructureB::insert_query_point(Overlay& ov, Point q) const {
  const Scene& sc = scene_;
  const double tol = eta_;
  const bool with_obs = sc.has_obstacles();
  ov.new_ids.clear();

  // Classify q against the regions.  Depth is measured with the polyline
  // slack so curved boundaries don't misreport hugging points as interior.
  std::optional<int> q_region;
  bool strict_zero = false;
  for (int r = 0; r < static_cast<int>(sc.regions.size()); ++r) {
    const ConvexShape& shape = *sc.regions[r].shape;
    if (!shape.contains(q, tol)) continue;
    const double depth = boundary_depth(q, shape);
    const bool strict = depth > tol + shape.boundary_slack();
    if (sc.regions[r].weight == RegionWeight::Obstacle && strict)
      throw std::invalid_argument("query point lies strictly inside an obstacle");
    if (!q_region) {
      q_region = r;
      strict_zero = sc.regions[r].weight == RegionWeight::Zero && strict;
    }
  }

  auto add_overlay_edge = [&](int u, int v, double w, std::optional<Point> via_u = {},
                              std::optional<Point> via_v = {}) {
    if (u < 0 || v < 0 || u == v) return;
    if (u > v) {
      std::swap(u, v);
      std::swap(via_u, via_v);
    }
    if (!ov.edge_set.insert({u, v}).second) return;
    ov.edges.push_back({u, v, w, EdgeKind::Query, via_u, via_v});
  };

  auto add_overlay_vertex = [&](Point p, SampleKind kind,
                                std::optional<int> region) -> std::pair<int, bool> {
    for (const auto& v : ov.verts)
      if (dist(v.location, p) <= tol) return {v.id, false};
    const int id = static_cast<int>(ov.verts.size());
    ov.verts.push_back({id, p, kind, region, {}});
    return {id, true};
  };

  // Chord the new boundary point to its arc neighbors on the obstacle.
  auto splice_boundary = [&](int vid, int r) {
    auto& order = ov.boundary_order[r];
    const double par = arc_param(*sc.regions[r].shape, ov.verts[vid].location);
    const auto it = std::lower_bound(order.begin(), order.end(),
                                     std::make_pair(par, vid));
    if (!order.empty()) {
      const auto& nxt = it == order.end() ? order.front() : *it;
      const auto& prv = it == order.begin() ? order.back() : *(it - 1);
      add_overlay_edge(vid, prv.second,
                       dist(ov.verts[vid].location,
                            ov.verts[prv.second].location));
      add_overlay_edge(vid, nxt.second,
                       dist(ov.verts[vid].location,
                            ov.verts[nxt.second].location));
    }
    order.insert(it, {par, vid});
  };

  const int qid = static_cast<int>(ov.verts.size());
  ov.verts.push_back({qid, q, SampleKind::Query, q_region, {}});
  ov.new_ids.push_back(qid);

  // A query point coinciding with an existing vertex inherits its
  // connectivity through a near-zero bridge (the cone insertion skips exact
  // duplicates).
  for (int i = 0; i < qid; ++i)
    if (dist(ov.verts[i].location, q) <= tol) {
      add_overlay_edge(qid, i, dist(ov.verts[i].location, q));
      break;
    }

  if (q_region) {
    if (sc.regions[*q_region].weight == RegionWeight::Zero)
      add_overlay_edge(qid, anchors_[*q_region], 0.0);
    else
      splice_boundary(qid, *q_region);
  }

  if (!strict_zero) {
    // Shoot the vertical of every cone direction; first boundary landings
    // become propagated samples, 0-region landings also seed the
    // closest-approach connector to that region's anchor.
    struct ZeroCand {
      double w = kInf;
      Point via;
    };
    std::map<int, ZeroCand> zcand;
    std::set<int> tangent_done;
    for (int k = 0; k < ds_.m; ++k) {
      const auto land = first_region_hit(sc, q, ds_.dirs[k], tol);
      if (!land) continue;
      if (with_obs && blocked_by_obstacles(sc, q, land->point, tol))
        continue;  // re-entry through the point's own obstacle
      const int r = land->region;
      if (sc.regions[r].weight == RegionWeight::Zero) {
        const auto [pid, fresh] =
            add_overlay_vertex(land->point, SampleKind::Propagated, r);
        if (fresh) {
          add_overlay_edge(pid, anchors_[r], 0.0);
          ov.new_ids.push_back(pid);
        }
        auto& c = zcand[r];
        const double w = dist(q, land->point);
        if (w < c.w) {
          c.w = w;
          c.via = land->point;
        }
      } else {
        const auto [pid, fresh] =
            add_overlay_vertex(land->point, SampleKind::Propagated, r);
        if (fresh) {
          splice_boundary(pid, r);
          ov.new_ids.push_back(pid);
        }
        add_overlay_edge(qid, pid, dist(q, ov.verts[pid].location));
        if ((!q_region || *q_region != r) &&
            !sc.regions[r].shape->degenerate() &&
            tangent_done.insert(r).second &&
            !sc.regions[r].shape->contains(q, tol)) {
          for (const Point& tp : point_tangents(q, *sc.regions[r].shape, tol)) {
            const auto [tid, tf] =
                add_overlay_vertex(tp, SampleKind::Tangent, r);
            if (tf) {
              splice_boundary(tid, r);
              ov.new_ids.push_back(tid);
            }
          }
        }
      }
    }
    for (const auto& [r, cand] : zcand) {
      const DistanceResult pd =
          point_shape_distance(q, *sc.regions[r].shape, tol);
      double w = pd.distance;
      Point via = pd.witness_b;
      if (with_obs && blocked_by_obstacles(sc, q, via, tol)) {
        // Closest approach is walled off; use the best vertical landing.
        w = cand.w;
        via = cand.via;
      }
      add_overlay_edge(qid, anchors_[r], w, std::nullopt, via);
    }
  }

  // Wire the new points into the cone graph (nearest per cone, plus repairs
  // where a new point displaces a recorded neighbor).
  for (const int id : ov.new_ids)
    for (const ThetaEdge& e : insert_point(ov.theta, ov.verts[id], ov.verts)) {
      const int ra = ov.verts[e.a].region.value_or(-1);
      const int rb = ov.verts[e.b].region.value_or(-1);
      if (ra >= 0 && ra == rb) continue;
      add_overlay_edge(e.a, e.b, e.length);
    }

  return qid;
}

std::optional<WeightedPath> StructureB::query(Point s, Point t) const {
  Overlay ov;
  ov.verts = verts_;
  ov.edges = edges_;
  ov.theta = theta_;
  ov.boundary_order = boundary_order_;
  for (const GraphEdge& e : edges_)
    ov.edge_set.insert({std::min(e.a, e.b), std::max(e.a, e.b)});

  const int sid = insert_query_point(ov, s);
  const int tid = insert_query_point(ov, t);

  const auto gp = dijkstra_path(static_cast<int>(ov.verts.size()), ov.edges,
                                sid, tid);
  if (!gp) return std::nullopt;

  std::vector<SamplePoint> pts;
  std::vector<GraphEdge> hops;
  pts.reserve(gp->vertices.size());
  for (int id : gp->vertices) pts.push_back(ov.verts[id]);
  for (int ei : gp->edges) hops.push_back(ov.edges[ei]);
  return realize_path(pts, hops);
}

WeightedPath StructureB::straight_path(Point s, Point t) const {
  WeightedPath out;
  append_straight(scene_, eta_, s, t, out.segments);
  for (const PathSegment& seg : out.segments) out.realized_weight += seg.cost;
  out.graph_weight = out.realized_weight;
  return out;
}

WeightedPath StructureB::realize_path(
    const std::vector<SamplePoint>& path_points,
    const std::vector<GraphEdge>& path_edges) const {
  const Scene& sc = scene_;
  const double tol = eta_;
  WeightedPath out;
  for (const auto& p : path_points) out.vertices.push_back(p.id);

  for (size_t i = 0; i + 1 < path_points.size(); ++i) {
    const SamplePoint& u = path_points[i];
    const SamplePoint& v = path_points[i + 1];
    const GraphEdge& e = path_edges[i];
    out.graph_weight += e.weight;

    const bool fwd = e.a == u.id;
    const std::optional<Point> via_u = fwd ? e.via_a : e.via_b;
    const std::optional<Point> via_v = fwd ? e.via_b : e.via_a;
    const int ru = u.region.value_or(-1);
    const int rv = v.region.value_or(-1);

    if (ru >= 0 && ru == rv) {
      if (dist(u.location, v.location) <= 0.0) continue;
      if (sc.regions[ru].weight == RegionWeight::Zero)
        out.segments.push_back(
            {{u.location, v.location}, Medium::ZeroRegion, ru, 0.0});
      else
        out.segments.push_back(
            arc_segment(*sc.regions[ru].shape, ru, u.location, v.location,
                        tol));
      continue;
    }

    if (via_u || via_v) {
      const Point exit = via_u.value_or(u.location);
      const Point entry = via_v.value_or(v.location);
      if (via_u && dist(u.location, exit) > 0.0)
        out.segments.push_back({{u.location, exit}, Medium::ZeroRegion, ru, 0.0});
      append_straight(sc, tol, exit, entry, out.segments);
      if (via_v && dist(entry, v.location) > 0.0)
        out.segments.push_back(
            {{entry, v.location}, Medium::ZeroRegion, rv, 0.0});
      continue;
    }

    append_straight(sc, tol, u.location, v.location, out.segments);
  }

  for (const PathSegment& seg : out.segments) out.realized_weight += seg.cost;
  return out;
}

}  // namespace zos
