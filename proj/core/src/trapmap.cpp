#include "zos/trapmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace zos {

namespace {

// Exact lexicographic order; equal x falls back to y, which acts like an
// infinitesimal shear of the whole map.
bool lex_lt(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

}  // namespace

TrapMap::TrapMap(const std::vector<SimplifiedRegion>& regions, Point up,
                 Rect world_frame, double tol)
    : tol_(tol), up_(up) {
  rot_angle_ = M_PI / 2.0 - std::atan2(up.y, up.x);

  // Rotate every ring once; identical world points stay identical here.
  std::vector<std::vector<Point>> rings(regions.size());
  bool any = false;
  Rect fb{0, 0, 0, 0};
  auto extend = [&](Point p) {
    if (!any) {
      fb = {p.x, p.y, p.x, p.y};
      any = true;
    } else {
      fb.xmin = std::min(fb.xmin, p.x);
      fb.ymin = std::min(fb.ymin, p.y);
      fb.xmax = std::max(fb.xmax, p.x);
      fb.ymax = std::max(fb.ymax, p.y);
    }
  };
  const Point wf[4] = {{world_frame.xmin, world_frame.ymin},
                       {world_frame.xmax, world_frame.ymin},
                       {world_frame.xmax, world_frame.ymax},
                       {world_frame.xmin, world_frame.ymax}};
  for (const Point& c : wf) extend(to_frame(c));
  for (size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].degenerate || regions[i].ring.size() < 3) continue;
    rings[i].reserve(regions[i].ring.size());
    for (const Point& p : regions[i].ring) {
      rings[i].push_back(to_frame(p));
      extend(rings[i].back());
    }
  }
  const double pad = 0.1 * std::max(fb.diameter(), 1.0) + 1.0;
  const double X0 = fb.xmin - pad, X1 = fb.xmax + pad;
  const double Y0 = fb.ymin - pad, Y1 = fb.ymax + pad;

  // Frame floor and ceiling close the decomposition.
  segs_.push_back({{X0, Y0}, {X1, Y0}, -1, false});
  segs_.push_back({{X0, Y1}, {X1, Y1}, -1, false});

  // Boundary chains: ccw from the lexicographic minimum to the maximum is
  // the lower chain (interior above); the way back is the upper chain.
  for (size_t i = 0; i < rings.size(); ++i) {
    const auto& r = rings[i];
    if (r.empty()) continue;
    const size_t n = r.size();
    size_t lo = 0, hi = 0;
    for (size_t v = 1; v < n; ++v) {
      if (lex_lt(r[v], r[lo])) lo = v;
      if (lex_lt(r[hi], r[v])) hi = v;
    }
    for (size_t v = lo; v != hi; v = (v + 1) % n) {
      const Point a = r[v], b = r[(v + 1) % n];
      if (std::abs(b.x - a.x) <= tol_) continue;  // vertical: skip
      segs_.push_back({a, b, static_cast<int>(i), false});
    }
    for (size_t v = hi; v != lo; v = (v + 1) % n) {
      const Point a = r[v], b = r[(v + 1) % n];
      if (std::abs(b.x - a.x) <= tol_) continue;
      segs_.push_back({b, a, static_cast<int>(i), true});
    }
  }

  traps_.push_back({{X0, Y0}, {X1, Y1}, 1, 0, 0, true});
  nodes_.push_back({Node::Kind::Leaf, {}, -1, -1, -1, 0});
  for (int s = 2; s < static_cast<int>(segs_.size()); ++s) insert_segment(s);

  // Dense face ids in deterministic geometric order.
  std::vector<int> alive;
  for (int t = 0; t < static_cast<int>(traps_.size()); ++t)
    if (traps_[t].alive) alive.push_back(t);
  auto ymid = [&](int seg, const TrapRec& t) {
    return seg_y_at(seg, 0.5 * (t.leftp.x + t.rightp.x));
  };
  std::sort(alive.begin(), alive.end(), [&](int a, int b) {
    const TrapRec& A = traps_[a];
    const TrapRec& B = traps_[b];
    const auto ka = std::make_tuple(A.leftp.x, A.leftp.y, A.rightp.x,
                                    A.rightp.y, ymid(A.bottom, A),
                                    ymid(A.top, A));
    const auto kb = std::make_tuple(B.leftp.x, B.leftp.y, B.rightp.x,
                                    B.rightp.y, ymid(B.bottom, B),
                                    ymid(B.top, B));
    return ka < kb;
  });
  face_of_trap_.assign(traps_.size(), -1);
  face_trap_.clear();
  for (int id = 0; id < static_cast<int>(alive.size()); ++id) {
    const TrapRec& t = traps_[alive[id]];
    face_of_trap_[alive[id]] = id;
    face_trap_.push_back(alive[id]);
    TrapFace f;
    f.leftp = t.leftp;
    f.rightp = t.rightp;
    f.top_seg = t.top;
    f.bottom_seg = t.bottom;
    f.interior = segs_[t.top].upper_chain && segs_[t.top].region >= 0;
    f.interior_region = f.interior ? segs_[t.top].region : -1;
    faces_.push_back(f);
  }

  build_walls_and_adjacency(regions);
}

Point TrapMap::to_frame(Point world) const {
  return rotate(world, rot_angle_);
}

Point TrapMap::to_world(Point frame) const {
  return rotate(frame, -rot_angle_);
}

double TrapMap::side_of(int seg, Point p) const {
  const TrapSeg& s = segs_[seg];
  const Point d = s.right - s.left;
  return cross(d, p - s.left) / norm(d);
}

double TrapMap::seg_y_at(int seg, double x) const {
  const TrapSeg& s = segs_[seg];
  const double t = (x - s.left.x) / (s.right.x - s.left.x);
  return s.left.y + t * (s.right.y - s.left.y);
}

int TrapMap::descend(Point p, Point dir) const {
  int n = 0;
  for (int guard = 0; guard < 1 << 20; ++guard) {
    const Node& nd = nodes_[n];
    if (nd.kind == Node::Kind::Leaf) return n;
    if (nd.kind == Node::Kind::X) {
      // Insertion walk: equal x routes right, because the query point is
      // conceptually displaced along the segment (dx > 0).
      n = p.x < nd.pt.x ? nd.left : nd.right;
    } else {
      const double c = side_of(nd.seg, p);
      if (c > tol_) {
        n = nd.left;
      } else if (c < -tol_) {
        n = nd.right;
      } else {
        const TrapSeg& e = segs_[nd.seg];
        const double sc = cross(e.right - e.left, dir);
        if (sc > 0.0)
          n = nd.left;
        else if (sc < 0.0)
          n = nd.right;
        else
          n = nd.left;  // collinear travel counts as above
      }
    }
  }
  throw std::logic_error("point-location descent did not terminate");
}

void TrapMap::insert_segment(int si) {
  const Point sl = segs_[si].left, sr = segs_[si].right;
  const Point sdir = sr - sl;

  // Trapezoids crossed by the open segment, in x order.  The next trap is
  // found by re-descending from the point of s just past the current right
  // station (no neighbor pointers needed).
  std::vector<int> crossed;
  crossed.push_back(nodes_[descend(sl, sdir)].trap);
  for (int guard = 0; guard < 1 << 20; ++guard) {
    const Point rp = traps_[crossed.back()].rightp;
    if (!lex_lt(rp, sr)) break;
    const double t = (rp.x - sl.x) / (sr.x - sl.x);
    const Point q{rp.x, sl.y + t * (sr.y - sl.y)};
    const int nt = nodes_[descend(q, sdir)].trap;
    if (nt == crossed.back())
      throw std::logic_error("segment walk stalled");
    crossed.push_back(nt);
  }
  const int k = static_cast<int>(crossed.size());

  auto new_trap = [&](Point l, Point r, int top, int bottom) {
    const int t = static_cast<int>(traps_.size());
    const int leaf = static_cast<int>(nodes_.size());
    traps_.push_back({l, r, top, bottom, leaf, true});
    nodes_.push_back({Node::Kind::Leaf, {}, -1, -1, -1, t});
    return t;
  };

  const bool lcap = lex_lt(traps_[crossed[0]].leftp, sl);
  const bool rcap = lex_lt(sr, traps_[crossed[k - 1]].rightp);
  int lcap_trap = -1, rcap_trap = -1;
  if (lcap)
    lcap_trap = new_trap(traps_[crossed[0]].leftp, sl, traps_[crossed[0]].top,
                         traps_[crossed[0]].bottom);
  if (rcap)
    rcap_trap = new_trap(sr, traps_[crossed[k - 1]].rightp,
                         traps_[crossed[k - 1]].top,
                         traps_[crossed[k - 1]].bottom);

  // Pieces above and below s.  Runs merge across stations on the far side of
  // s; a station on s (within tolerance) breaks both runs.  A change of
  // ceiling/floor breaks a run too (defensive; should coincide with a break).
  std::vector<int> up_of(k, -1), lo_of(k, -1);
  {
    Point start = sl;
    int first = 0;
    for (int i = 0; i < k; ++i) {
      bool brk = i == k - 1;
      if (!brk) {
        const double c = side_of(si, traps_[crossed[i]].rightp);
        brk = c >= -tol_ || traps_[crossed[i + 1]].top != traps_[crossed[i]].top;
      }
      if (brk) {
        const Point end = i == k - 1 ? sr : traps_[crossed[i]].rightp;
        const int t = new_trap(start, end, traps_[crossed[first]].top, si);
        for (int j = first; j <= i; ++j) up_of[j] = t;
        start = end;
        first = i + 1;
      }
    }
  }
  {
    Point start = sl;
    int first = 0;
    for (int i = 0; i < k; ++i) {
      bool brk = i == k - 1;
      if (!brk) {
        const double c = side_of(si, traps_[crossed[i]].rightp);
        brk = c <= tol_ ||
              traps_[crossed[i + 1]].bottom != traps_[crossed[i]].bottom;
      }
      if (brk) {
        const Point end = i == k - 1 ? sr : traps_[crossed[i]].rightp;
        const int t = new_trap(start, end, si, traps_[crossed[first]].bottom);
        for (int j = first; j <= i; ++j) lo_of[j] = t;
        start = end;
        first = i + 1;
      }
    }
  }

  // Morph each crossed trap's leaf into the subtree for its replacement.
  for (int i = 0; i < k; ++i) {
    const int old = crossed[i];
    const int root = traps_[old].leaf;
    Node yn{Node::Kind::Y, {}, si, traps_[up_of[i]].leaf, traps_[lo_of[i]].leaf,
            -1};
    int sub = static_cast<int>(nodes_.size());
    nodes_.push_back(yn);
    if (i == k - 1 && rcap) {
      Node xn{Node::Kind::X, sr, -1, sub, traps_[rcap_trap].leaf, -1};
      sub = static_cast<int>(nodes_.size());
      nodes_.push_back(xn);
    }
    if (i == 0 && lcap) {
      Node xn{Node::Kind::X, sl, -1, traps_[lcap_trap].leaf, sub, -1};
      sub = static_cast<int>(nodes_.size());
      nodes_.push_back(xn);
    }
    nodes_[root] = nodes_[sub];
    traps_[old].alive = false;
  }
}

bool TrapMap::trap_contains(const TrapRec& t, Point p) const {
  // Exact sign tests keep containment consistent with the locate descent:
  // a point reads as inside, on, or outside a trap by the same comparisons
  // the search tree uses, so no tolerance band can disagree across faces.
  if (lex_lt(p, t.leftp) || lex_lt(t.rightp, p)) return false;
  return side_of(t.top, p) <= 0.0 && side_of(t.bottom, p) >= 0.0;
}

bool TrapMap::face_contains(int face, Point world) const {
  return trap_contains(traps_[face_trap_.at(face)], to_frame(world));
}

bool TrapMap::face_positive_width(int face) const {
  const TrapRec& t = traps_[face_trap_.at(face)];
  return t.rightp.x - t.leftp.x > tol_;
}

void TrapMap::collect_faces(int node, Point p, int& best) const {
  const Node& nd = nodes_[node];
  switch (nd.kind) {
    case Node::Kind::Leaf: {
      const int t = nd.trap;
      if (traps_[t].alive && face_of_trap_[t] >= 0 &&
          trap_contains(traps_[t], p))
        best = std::min(best, face_of_trap_[t]);
      return;
    }
    case Node::Kind::X:
      if (lex_lt(p, nd.pt)) {
        collect_faces(nd.left, p, best);
      } else if (lex_lt(nd.pt, p)) {
        collect_faces(nd.right, p, best);
      } else {
        collect_faces(nd.left, p, best);
        collect_faces(nd.right, p, best);
      }
      return;
    case Node::Kind::Y: {
      const double c = side_of(nd.seg, p);
      if (c > 0.0) {
        collect_faces(nd.left, p, best);
      } else if (c < 0.0) {
        collect_faces(nd.right, p, best);
      } else {
        collect_faces(nd.left, p, best);
        collect_faces(nd.right, p, best);
      }
      return;
    }
  }
}

int TrapMap::locate(Point world) const {
  const Point p = to_frame(world);
  int best = std::numeric_limits<int>::max();
  collect_faces(0, p, best);
  if (best == std::numeric_limits<int>::max())
    throw std::out_of_range("point outside the decomposition frame");
  return best;
}

void TrapMap::build_walls_and_adjacency(
    const std::vector<SimplifiedRegion>& regions) {
  (void)regions;
  // Station ownership: every inserted segment endpoint is a boundary sample
  // of its region.  Identical world points rotate to identical keys.
  std::map<std::pair<double, double>, int> owner;
  for (size_t s = 2; s < segs_.size(); ++s) {
    owner.emplace(std::make_pair(segs_[s].left.x, segs_[s].left.y),
                  segs_[s].region);
    owner.emplace(std::make_pair(segs_[s].right.x, segs_[s].right.y),
                  segs_[s].region);
  }

  // Collect candidate walls per free face; keep the shortest per
  // (station, direction).
  std::map<std::tuple<double, double, bool>, WallRecord> best;
  const Point down = -1.0 * up_;
  for (size_t id = 0; id < faces_.size(); ++id) {
    const TrapFace& f = faces_[id];
    if (f.interior) continue;
    for (const Point& st : {f.leftp, f.rightp}) {
      auto it = owner.find({st.x, st.y});
      if (it == owner.end()) continue;
      // Upward attachment to the ceiling.
      if (segs_[f.top_seg].region >= 0 && side_of(f.top_seg, st) < -tol_) {
        const Point foot{st.x, seg_y_at(f.top_seg, st.x)};
        WallRecord w;
        w.station = to_world(st);
        w.dir = up_;
        w.foot = to_world(foot);
        w.station_region = it->second;
        w.target_region = segs_[f.top_seg].region;
        w.length = foot.y - st.y;
        auto key = std::make_tuple(st.x, st.y, true);
        auto found = best.find(key);
        if (found == best.end() || w.length < found->second.length)
          best[key] = w;
      }
      // Downward attachment to the floor.
      if (segs_[f.bottom_seg].region >= 0 &&
          side_of(f.bottom_seg, st) > tol_) {
        const Point foot{st.x, seg_y_at(f.bottom_seg, st.x)};
        WallRecord w;
        w.station = to_world(st);
        w.dir = down;
        w.foot = to_world(foot);
        w.station_region = it->second;
        w.target_region = segs_[f.bottom_seg].region;
        w.length = st.y - foot.y;
        auto key = std::make_tuple(st.x, st.y, false);
        auto found = best.find(key);
        if (found == best.end() || w.length < found->second.length)
          best[key] = w;
      }
    }
    // Region floor/ceiling pair: the regions see each other across f.
    const TrapSeg& top = segs_[f.top_seg];
    const TrapSeg& bot = segs_[f.bottom_seg];
    if (top.region >= 0 && bot.region >= 0 && bot.upper_chain &&
        !top.upper_chain)
      adjs_.push_back({bot.region, top.region, static_cast<int>(id)});
  }
  walls_.reserve(best.size());
  for (auto& [key, w] : best) walls_.push_back(w);
}

}  // namespace zos
