#include "zos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

namespace zos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ─── Shared shortest-path plumbing ───

struct AdjEdge {
  int to = -1;
  double w = 0.0;
  int arc_region = -1;  // >= 0: the edge follows that region's boundary
  bool arc_ccw = true;
};

struct SearchResult {
  std::vector<double> dist;
  std::vector<int> pred;       // predecessor node, -1 at the source
  std::vector<int> pred_edge;  // index into adj[pred] of the arriving edge
};

SearchResult dijkstra(const std::vector<std::vector<AdjEdge>>& adj, int src) {
  const int n = static_cast<int>(adj.size());
  SearchResult r{std::vector<double>(n, kInf), std::vector<int>(n, -1),
                 std::vector<int>(n, -1)};
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  r.dist[src] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > r.dist[u]) continue;
    for (int ei = 0; ei < static_cast<int>(adj[u].size()); ++ei) {
      const AdjEdge& e = adj[u][ei];
      const double nd = d + e.w;
      if (nd < r.dist[e.to]) {
        r.dist[e.to] = nd;
        r.pred[e.to] = u;
        r.pred_edge[e.to] = ei;
        heap.push({nd, e.to});
      }
    }
  }
  return r;
}

std::vector<int> walk_predecessors(const SearchResult& r, int target) {
  std::vector<int> path;
  for (int v = target; v != -1; v = r.pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// ─── Dense solver helpers ───

// Length of the part of segment ab outside every zero-region.
double priced_length(const Scene& scene, Point a, Point b, double tol) {
  const double len = dist(a, b);
  if (len == 0.0) return 0.0;
  std::vector<std::pair<double, double>> covered;
  for (const Region& r : scene.regions) {
    if (r.weight != RegionWeight::Zero) continue;
    const auto hit = r.shape->segment_interval(a, b, tol);
    if (!hit) continue;
    const double t0 = std::max(hit->first, 0.0);
    const double t1 = std::min(hit->second, 1.0);
    if (t1 > t0) covered.push_back({t0, t1});
  }
  std::sort(covered.begin(), covered.end());
  double inside = 0.0, reach = 0.0;
  for (const auto& [t0, t1] : covered) {
    if (t1 <= reach) continue;
    inside += t1 - std::max(t0, reach);
    reach = t1;
  }
  return len * std::max(0.0, 1.0 - inside);
}

bool blocked_by_any(const Scene& scene, Point a, Point b, double tol) {
  for (const Region& r : scene.regions)
    if (r.weight == RegionWeight::Obstacle &&
        segment_blocked(a, b, *r.shape, tol))
      return true;
  return false;
}

// Closed boundary polyline with cumulative arc lengths, so boundary nodes
// can be addressed by a single arc parameter in [0, perimeter).
struct BoundaryWalk {
  std::vector<Point> poly;
  std::vector<double> cum;  // cum[i] = length up to poly[i]; back() = perimeter
  double perimeter() const { return cum.empty() ? 0.0 : cum.back(); }
};

BoundaryWalk make_walk(const ConvexShape& shape) {
  BoundaryWalk w;
  w.poly = shape.boundary_polyline();
  w.cum.assign(w.poly.size() + 1, 0.0);
  for (size_t i = 0; i < w.poly.size(); ++i)
    w.cum[i + 1] = w.cum[i] + dist(w.poly[i], w.poly[(i + 1) % w.poly.size()]);
  return w;
}

Point walk_point(const BoundaryWalk& w, double param) {
  if (w.poly.empty()) return {};
  const auto it = std::upper_bound(w.cum.begin(), w.cum.end(), param);
  size_t i = static_cast<size_t>(it - w.cum.begin());
  i = i > 0 ? i - 1 : 0;
  if (i >= w.poly.size()) i = w.poly.size() - 1;
  const double seg = w.cum[i + 1] - w.cum[i];
  const double f = seg > 0.0 ? (param - w.cum[i]) / seg : 0.0;
  const Point a = w.poly[i];
  const Point b = w.poly[(i + 1) % w.poly.size()];
  return a + f * (b - a);
}

double walk_param(const BoundaryWalk& w, Point p) {
  double bestd = kInf, best = 0.0;
  for (size_t i = 0; i < w.poly.size(); ++i) {
    const Point a = w.poly[i];
    const Point b = w.poly[(i + 1) % w.poly.size()];
    const double len2 = dot(b - a, b - a);
    const double t =
        len2 > 0.0 ? std::clamp(dot(p - a, b - a) / len2, 0.0, 1.0) : 0.0;
    const double d = dist(p, a + t * (b - a));
    if (d < bestd) {
      bestd = d;
      best = w.cum[i] + t * (w.cum[i + 1] - w.cum[i]);
    }
  }
  return best;
}

// Arc parameters of at least `k` roughly uniform boundary samples, plus the
// max gap between neighbours.  Coarse polylines keep their vertices (so
// polygon corners are exact); finer-than-k polylines are resampled uniformly
// so the gap keeps shrinking as k grows.
std::pair<std::vector<double>, double> sample_params(const BoundaryWalk& w,
                                                     int k) {
  std::vector<double> out;
  double max_gap = 0.0;
  const double per = w.perimeter();
  if (per <= 0.0 || w.poly.empty()) return {{0.0}, 0.0};
  if (static_cast<int>(w.poly.size()) <= k) {
    const double target = per / k;
    for (size_t i = 0; i < w.poly.size(); ++i) {
      const double len = w.cum[i + 1] - w.cum[i];
      const int pieces =
          std::max(1, static_cast<int>(std::ceil(len / target - 1e-12)));
      for (int j = 0; j < pieces; ++j)
        out.push_back(w.cum[i] + len * j / pieces);
      max_gap = std::max(max_gap, len / pieces);
    }
  } else {
    for (int i = 0; i < k; ++i) out.push_back(per * i / k);
    max_gap = per / k;
  }
  return {out, max_gap};
}

// ─── Cone identity constructions ───

Point line_intersect(Point p, Point dp, Point q, Point dq) {
  const double u = cross(q - p, dq) / cross(dp, dq);
  return p + u * dp;
}

void check_cone_args(double alpha, double theta) {
  if (!(alpha > 0.0 && alpha < theta && theta < M_PI / 6.0))
    throw std::invalid_argument("requires 0 < alpha < theta < pi/6");
}

// Segment pq between the cone rays at angles 0 and theta (everything
// rotated by an arbitrary base angle so no ray is axis-aligned), with the
// two perpendicular drops q' and p' used by the verifiers.
struct ConeFrame {
  Point p, q, q_drop, p_drop;
  double len;  // ||pq||
};

ConeFrame cone_frame(double alpha, double theta) {
  const double base = 0.37;
  ConeFrame f;
  f.p = {1.25, -0.75};
  f.len = 1.6180339887498949;
  const double beta = theta - alpha;
  f.q = f.p + f.len * dir_of(base + beta);
  f.q_drop = line_intersect(f.p, dir_of(base + theta), f.q,
                            dir_of(base + M_PI / 2.0));
  f.p_drop = line_intersect(f.q, dir_of(base + M_PI), f.p,
                            dir_of(base + theta + M_PI / 2.0));
  return f;
}

}  // namespace

OracleReport exact_zero_region_sp(const Scene& scene, Point s, Point t) {
  scene.validate();
  if (scene.has_obstacles())
    throw std::invalid_argument(
        "exact zero-region solver: scene contains obstacles");
  const double tol = scene.eta();
  const int n = static_cast<int>(scene.regions.size());
  const int total = n + 2;  // 0 = s, 1 = t, 2 + i = region i
  std::vector<std::vector<AdjEdge>> adj(total);
  // Witness endpoints per directed node pair.
  std::vector<std::vector<std::pair<Point, Point>>> ends(
      total, std::vector<std::pair<Point, Point>>(total));
  auto connect = [&](int u, int v, double w, Point on_u, Point on_v) {
    adj[u].push_back({v, w});
    adj[v].push_back({u, w});
    ends[u][v] = {on_u, on_v};
    ends[v][u] = {on_v, on_u};
  };
  connect(0, 1, dist(s, t), s, t);
  for (int i = 0; i < n; ++i) {
    const ConvexShape& shape = *scene.regions[i].shape;
    const DistanceResult from_s = point_shape_distance(s, shape, tol);
    connect(0, 2 + i, from_s.distance, from_s.witness_a, from_s.witness_b);
    const DistanceResult from_t = point_shape_distance(t, shape, tol);
    connect(1, 2 + i, from_t.distance, from_t.witness_a, from_t.witness_b);
    for (int k = i + 1; k < n; ++k) {
      const DistanceResult dd =
          shape_distance(shape, *scene.regions[k].shape, tol);
      connect(2 + i, 2 + k, dd.distance, dd.witness_a, dd.witness_b);
    }
  }
  const SearchResult sr = dijkstra(adj, 0);
  OracleReport rep;
  rep.method = OracleMethod::CompleteGraphExact;
  rep.oracle_value = sr.dist[1];
  const std::vector<int> path = walk_predecessors(sr, 1);
  rep.witness.push_back(s);
  for (size_t h = 1; h < path.size(); ++h) {
    const auto& [on_u, on_v] = ends[path[h - 1]][path[h]];
    for (const Point p : {on_u, on_v})
      if (dist(rep.witness.back(), p) > 0.0) rep.witness.push_back(p);
  }
  if (dist(rep.witness.back(), t) > 0.0) rep.witness.push_back(t);
  return rep;
}

OracleReport dense_obstacle_sp(const Scene& scene, Point s, Point t,
                               int samples_per_region) {
  if (samples_per_region < 50)
    throw std::invalid_argument(
        "dense solver needs at least 50 samples per region");
  scene.validate();
  const double tol = scene.eta();
  const int n = static_cast<int>(scene.regions.size());

  std::vector<Point> nodes{s, t};
  std::vector<BoundaryWalk> walks(n);
  // Per region: boundary nodes as (arc param, node id).
  std::vector<std::vector<std::pair<double, int>>> on_boundary(n);
  double max_gap = 0.0;

  auto add_boundary_node = [&](int r, double param, Point p) {
    const double per = walks[r].perimeter();
    for (const auto& [q, id] : on_boundary[r]) {
      const double gap = std::abs(q - param);
      if (gap <= tol || std::abs(gap - per) <= tol) return;
    }
    nodes.push_back(p);
    on_boundary[r].push_back({param, static_cast<int>(nodes.size()) - 1});
  };

  for (int r = 0; r < n; ++r) {
    walks[r] = make_walk(*scene.regions[r].shape);
    const auto [params, gap] = sample_params(walks[r], samples_per_region);
    max_gap = std::max(max_gap, gap);
    for (const double p : params)
      add_boundary_node(r, p, walk_point(walks[r], p));
  }

  // Tangent nodes sharpen the wrap points around obstacles.
  auto add_tangent = [&](int r, Point p) {
    add_boundary_node(r, walk_param(walks[r], p), p);
  };
  for (int r = 0; r < n; ++r) {
    const Region& reg = scene.regions[r];
    if (reg.weight != RegionWeight::Obstacle || reg.shape->degenerate())
      continue;
    for (const Point q : {s, t})
      if (!reg.shape->contains(q, tol))
        for (const Point tp : point_tangents(q, *reg.shape, tol))
          add_tangent(r, tp);
    for (int r2 = r + 1; r2 < n; ++r2) {
      const Region& reg2 = scene.regions[r2];
      if (reg2.weight != RegionWeight::Obstacle || reg2.shape->degenerate())
        continue;
      for (const TangentPair& tp :
           common_tangents(*reg.shape, *reg2.shape, tol)) {
        add_tangent(r, tp.on_a);
        add_tangent(r2, tp.on_b);
      }
    }
  }

  const int total = static_cast<int>(nodes.size());
  std::vector<std::vector<AdjEdge>> adj(total);

  // Walking an obstacle boundary: arc edges between consecutive nodes.
  for (int r = 0; r < n; ++r) {
    if (scene.regions[r].weight != RegionWeight::Obstacle) continue;
    auto& list = on_boundary[r];
    std::sort(list.begin(), list.end());
    const int m = static_cast<int>(list.size());
    if (m < 2) continue;
    for (int i = 0; i < m; ++i) {
      const auto& [pa, ua] = list[i];
      const auto& [pb, ub] = list[(i + 1) % m];
      const double gap =
          i == m - 1 ? walks[r].perimeter() - pa + pb : pb - pa;
      adj[ua].push_back({ub, gap, r, true});
      adj[ub].push_back({ua, gap, r, false});
    }
  }

  // Straight edges between mutually visible nodes, priced with zero-region
  // overlap subtracted.
  for (int u = 0; u < total; ++u)
    for (int v = u + 1; v < total; ++v) {
      if (blocked_by_any(scene, nodes[u], nodes[v], tol)) continue;
      const double w = priced_length(scene, nodes[u], nodes[v], tol);
      adj[u].push_back({v, w, -1, true});
      adj[v].push_back({u, w, -1, true});
    }

  const SearchResult sr = dijkstra(adj, 0);
  OracleReport rep;
  rep.method = OracleMethod::DenseVisibility;
  // Worst case every region crossing snaps both endpoints to an adjacent
  // sample, and a path visits each region at most once plus the two query
  // endpoints.
  rep.error_bound = (2.0 * n + 2.0) * max_gap;
  rep.oracle_value = sr.dist[1];
  if (!std::isfinite(rep.oracle_value)) return rep;
  const std::vector<int> path = walk_predecessors(sr, 1);
  rep.witness.push_back(nodes[path[0]]);
  for (size_t h = 1; h < path.size(); ++h) {
    const int u = path[h - 1];
    const int v = path[h];
    const AdjEdge& e = adj[u][sr.pred_edge[v]];
    if (e.arc_region >= 0) {
      const BoundaryArc arc = boundary_arc(*scene.regions[e.arc_region].shape,
                                           nodes[u], nodes[v], e.arc_ccw, tol);
      for (size_t i = 1; i < arc.polyline.size(); ++i)
        rep.witness.push_back(arc.polyline[i]);
      if (rep.witness.back() != nodes[v]) rep.witness.push_back(nodes[v]);
    } else {
      rep.witness.push_back(nodes[v]);
    }
  }
  return rep;
}

OracleReport grid_weighted_sp(const Scene& scene, Point s, Point t,
                              int resolution) {
  if (resolution < 2)
    throw std::invalid_argument("grid oracle needs resolution >= 2");
  if (scene.has_obstacles())
    throw std::invalid_argument("grid oracle handles obstacle-free scenes only");
  const double tol = scene.eta();

  Rect frame = scene.bbox();
  frame = Rect::hull(frame, {std::min(s.x, t.x), std::min(s.y, t.y),
                             std::max(s.x, t.x), std::max(s.y, t.y)});
  const double pad = 1e-9 * std::max(frame.diameter(), 1.0);
  frame = {frame.xmin - pad, frame.ymin - pad, frame.xmax + pad,
           frame.ymax + pad};

  const int res = resolution;
  const double hx = frame.width() / (res - 1);
  const double hy = frame.height() / (res - 1);
  const double delta = std::hypot(hx, hy);
  auto node_pt = [&](int ix, int iy) -> Point {
    return {frame.xmin + ix * hx, frame.ymin + iy * hy};
  };
  auto node_id = [&](int ix, int iy) { return iy * res + ix; };

  // Per-node set of 0-regions within one cell diagonal, bitmask-packed so the
  // edge test is a single AND.  Region bounding boxes prune the exact checks.
  const int nr = static_cast<int>(scene.regions.size());
  const int words = (nr + 63) / 64;
  std::vector<uint64_t> near(static_cast<size_t>(res) * res * words, 0);
  for (int r = 0; r < nr; ++r) {
    const ConvexShape& shape = *scene.regions[r].shape;
    const Rect box = shape.bounds();
    const int ix0 = std::max(
        0, static_cast<int>(std::floor((box.xmin - delta - frame.xmin) / hx)));
    const int ix1 = std::min(
        res - 1,
        static_cast<int>(std::ceil((box.xmax + delta - frame.xmin) / hx)));
    const int iy0 = std::max(
        0, static_cast<int>(std::floor((box.ymin - delta - frame.ymin) / hy)));
    const int iy1 = std::min(
        res - 1,
        static_cast<int>(std::ceil((box.ymax + delta - frame.ymin) / hy)));
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) {
        const Point p = node_pt(ix, iy);
        if (point_shape_distance(p, shape, tol).distance <= delta)
          near[static_cast<size_t>(node_id(ix, iy)) * words + r / 64] |=
              uint64_t{1} << (r % 64);
      }
  }
  auto free_edge = [&](int a, int b) {
    const uint64_t* wa = &near[static_cast<size_t>(a) * words];
    const uint64_t* wb = &near[static_cast<size_t>(b) * words];
    for (int w = 0; w < words; ++w)
      if (wa[w] & wb[w]) return true;
    return false;
  };

  std::vector<std::vector<AdjEdge>> adj(static_cast<size_t>(res) * res);
  const int dxs[4] = {1, 0, 1, 1};    // right, up, up-right, down-right
  const int dys[4] = {0, 1, 1, -1};
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix)
      for (int k = 0; k < 4; ++k) {
        const int jx = ix + dxs[k], jy = iy + dys[k];
        if (jx < 0 || jx >= res || jy < 0 || jy >= res) continue;
        const int a = node_id(ix, iy), b = node_id(jx, jy);
        const double w =
            free_edge(a, b) ? 0.0 : dist(node_pt(ix, iy), node_pt(jx, jy));
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
      }

  auto snap = [&](Point p) {
    const int ix = std::clamp(
        static_cast<int>(std::lround((p.x - frame.xmin) / hx)), 0, res - 1);
    const int iy = std::clamp(
        static_cast<int>(std::lround((p.y - frame.ymin) / hy)), 0, res - 1);
    return std::pair<int, double>{node_id(ix, iy), dist(p, node_pt(ix, iy))};
  };
  const auto [src, snap_s] = snap(s);
  const auto [dst, snap_t] = snap(t);

  const SearchResult sr = dijkstra(adj, src);
  const std::vector<int> path = walk_predecessors(sr, dst);

  // Count maximal zero-cost runs along the witness for the error bound.
  int free_runs = 0;
  bool in_run = false;
  for (size_t h = 1; h < path.size(); ++h) {
    const AdjEdge& e = adj[path[h - 1]][sr.pred_edge[path[h]]];
    if (e.w == 0.0) {
      if (!in_run) ++free_runs;
      in_run = true;
    } else {
      in_run = false;
    }
  }

  OracleReport rep;
  rep.method = OracleMethod::GridDijkstra;
  rep.oracle_value = sr.dist[dst];
  const double kappa = std::sqrt(4.0 - 2.0 * std::sqrt(2.0));
  rep.error_bound = (kappa - 1.0) * rep.oracle_value +
                    2.0 * delta * (2.0 * nr + 2.0 + free_runs) + snap_s +
                    snap_t;
  rep.witness.push_back(s);
  for (int v : path) {
    const Point p = node_pt(v % res, v / res);
    if (rep.witness.back() != p) rep.witness.push_back(p);
  }
  if (rep.witness.back() != t) rep.witness.push_back(t);
  return rep;
}

ResidualPair verify_cone_snap(double alpha, double theta) {
  check_cone_args(alpha, theta);
  const double beta = theta - alpha;
  const ConeFrame f = cone_frame(alpha, theta);
  return {std::abs(dist(f.p, f.q_drop) -
                   std::cos(beta) / std::cos(theta) * f.len),
          std::abs(dist(f.q, f.q_drop) -
                   std::sin(alpha) / std::cos(theta) * f.len)};
}

ResidualPair verify_cone_stretch(double alpha, double theta) {
  check_cone_args(alpha, theta);
  const double beta = theta - alpha;
  const ConeFrame f = cone_frame(alpha, theta);
  const Point c =
      line_intersect(f.p, f.q_drop - f.p, f.q, f.p_drop - f.q);
  return {std::abs(dist(f.p_drop, f.q_drop) - f.len / std::cos(theta)),
          std::abs(dist(c, f.p_drop) + dist(c, f.q_drop) -
                   (std::sin(alpha) + std::sin(beta)) /
                       (std::cos(theta) * std::sin(theta)) * f.len)};
}

double verify_arc_chord_bound(const ConvexShape& shape, const DirectionSet& ds,
                              double tol) {
  const auto samples = boundary_support_samples(shape, ds, tol);
  const int n = static_cast<int>(samples.size());
  if (n < 2) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Point a = samples[i];
    const Point b = samples[(i + 1) % n];
    const double chord = dist(a, b);
    if (chord <= tol) continue;
    const double arc = boundary_arc(shape, a, b, /*ccw=*/true, tol).length;
    worst = std::max(worst, arc / chord);
  }
  return worst;
}

int naive_locate(const TrapMap& map, Point world) {
  for (int f = 0; f < map.face_count(); ++f)
    if (map.face_contains(f, world)) return f;
  throw std::out_of_range("point outside the decomposition frame");
}

std::vector<ThetaEdge> naive_theta(const std::vector<SamplePoint>& points,
                                   const DirectionSet& ds,
                                   const std::vector<RegionWeight>& weights,
                                   const std::vector<SimplifiedRegion>& obstacles,
                                   double tol) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& u : points) {
    // Per cone: smallest projection onto the bisector, lower id on ties.
    std::vector<double> best(ds.m, std::numeric_limits<double>::infinity());
    std::vector<const SamplePoint*> pick(ds.m, nullptr);
    for (const auto& v : points) {
      if (v.id == u.id) continue;
      const Point d = v.location - u.location;
      const double r = std::hypot(d.x, d.y);
      if (r <= tol) continue;
      bool blocked = false;
      for (const auto& ob : obstacles)
        if (ob.shape && segment_blocked(u.location, v.location, *ob.shape, tol))
          blocked = true;
      if (blocked) continue;
      double ang = std::atan2(d.y, d.x);
      if (ang < 0.0) ang += 2.0 * M_PI;
      int k = static_cast<int>(ang / ds.theta);
      if (k >= ds.m) k = ds.m - 1;
      const double proj = r * std::cos(ang - (k + 0.5) * ds.theta);
      if (proj < best[k] || (proj == best[k] && pick[k] && v.id < pick[k]->id)) {
        best[k] = proj;
        pick[k] = &v;
      }
    }
    for (const SamplePoint* v : pick) {
      if (!v) continue;
      if (u.region && v->region && *u.region == *v->region) {
        const int r = *u.region;
        if (r < 0 || r >= static_cast<int>(weights.size()) ||
            weights[r] == RegionWeight::Zero)
          continue;
      }
      pairs.insert(std::minmax(u.id, v->id));
    }
  }
  std::vector<ThetaEdge> edges;
  auto loc = [&](int id) {
    for (const auto& p : points)
      if (p.id == id) return p.location;
    return Point{0, 0};
  };
  for (const auto& [a, b] : pairs)
    edges.push_back({a, b, dist(loc(a), loc(b))});
  return edges;
}

}  // namespace zos
