#include "zos/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace zos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clampd(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

Point closest_on_segment(Point p, Point a, Point b, double* t_out = nullptr) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? clampd(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  if (t_out) *t_out = t;
  return a + t * ab;
}

double point_segment_distance(Point p, Point a, Point b) {
  return dist(p, closest_on_segment(p, a, b));
}

}  // namespace

// ─── Point / Rect helpers ───

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a) { return std::hypot(a.x, a.y); }
double dist(Point a, Point b) { return norm(a - b); }

Point normalized(Point a) {
  const double n = norm(a);
  return n > 0.0 ? Point{a.x / n, a.y / n} : a;
}

Point perp_ccw(Point a) { return {-a.y, a.x}; }

Point rotate(Point a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

Point dir_of(double angle) { return {std::cos(angle), std::sin(angle)}; }

double Rect::diameter() const { return std::hypot(width(), height()); }

bool Rect::contains(Point p, double tol) const {
  return p.x >= xmin - tol && p.x <= xmax + tol && p.y >= ymin - tol &&
         p.y <= ymax + tol;
}

Rect Rect::expanded(double factor) const {
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double hw = 0.5 * width() * factor, hh = 0.5 * height() * factor;
  return {cx - hw, cy - hh, cx + hw, cy + hh};
}

Rect Rect::hull(const Rect& a, const Rect& b) {
  return {std::min(a.xmin, b.xmin), std::min(a.ymin, b.ymin),
          std::max(a.xmax, b.xmax), std::max(a.ymax, b.ymax)};
}

// ─── ConvexShape shared measures ───

double ConvexShape::perimeter() const {
  const auto& pl = boundary_polyline();
  if (pl.size() < 2) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < pl.size(); ++i)
    sum += dist(pl[i], pl[(i + 1) % pl.size()]);
  return sum;
}

double ConvexShape::area() const {
  const auto& pl = boundary_polyline();
  if (pl.size() < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < pl.size(); ++i)
    twice += cross(pl[i], pl[(i + 1) % pl.size()]);
  return 0.5 * twice;
}

Point ConvexShape::interior_point() const {
  const auto& pl = boundary_polyline();
  if (pl.empty()) return {};
  Point acc{0, 0};
  for (const Point& p : pl) acc = acc + p;
  return (1.0 / static_cast<double>(pl.size())) * acc;
}

// ─── PolygonShape ───

PolygonShape::PolygonShape(std::vector<Point> vertices, Convexity mode)
    : verts_(std::move(vertices)) {
  if (verts_.size() < 3)
    throw std::invalid_argument("polygon needs at least 3 vertices");
  bounds_ = {verts_[0].x, verts_[0].y, verts_[0].x, verts_[0].y};
  for (const Point& v : verts_) {
    bounds_.xmin = std::min(bounds_.xmin, v.x);
    bounds_.ymin = std::min(bounds_.ymin, v.y);
    bounds_.xmax = std::max(bounds_.xmax, v.x);
    bounds_.ymax = std::max(bounds_.ymax, v.y);
  }
  const double scale = std::max(bounds_.diameter(), 1e-300);
  const size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    if (dist(verts_[i], verts_[(i + 1) % n]) < 1e-12 * scale)
      throw std::invalid_argument("duplicate polygon vertex at index " +
                                  std::to_string(i));
  }
  double area2 = 0.0;
  for (size_t i = 0; i < n; ++i)
    area2 += cross(verts_[i], verts_[(i + 1) % n]);
  if (area2 <= 0.0)
    throw std::invalid_argument("polygon vertices must be counter-clockwise");
  for (size_t i = 0; i < n; ++i) {
    const Point e0 = verts_[(i + 1) % n] - verts_[i];
    const Point e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
    const double c = cross(e0, e1);
    if (mode == Convexity::Strict) {
      if (c <= 0.0)
        throw std::invalid_argument("polygon not strictly convex at vertex " +
                                    std::to_string((i + 1) % n));
    } else {
      if (c < -1e-9 * scale * scale)
        throw std::invalid_argument("polygon not convex at vertex " +
                                    std::to_string((i + 1) % n));
    }
  }
}

Support PolygonShape::support(Point dir, double tol) const {
  const Point d = normalized(dir);
  double best = -kInf;
  for (const Point& v : verts_) best = std::max(best, dot(v, d));
  std::vector<Point> top;
  for (const Point& v : verts_)
    if (dot(v, d) >= best - tol) top.push_back(v);
  if (top.size() == 1) return {top[0], std::nullopt};
  // Extreme edge: order the two outermost points along the ccw travel
  // direction for this support direction.
  const Point t = perp_ccw(d);
  Point lo = top[0], hi = top[0];
  for (const Point& v : top) {
    if (dot(v, t) < dot(lo, t)) lo = v;
    if (dot(v, t) > dot(hi, t)) hi = v;
  }
  if (lo == hi) return {lo, std::nullopt};
  return {lo, hi};
}

std::optional<RayHit> PolygonShape::first_ray_hit(Point origin, Point dir,
                                                  double tol) const {
  const Point d = normalized(dir);
  double tmin = -kInf, tmax = kInf;
  const size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    const Point a = verts_[i];
    const Point e = verts_[(i + 1) % n] - a;
    const Point nrm = normalized(perp_ccw(e));  // inward unit normal
    const double off = dot(origin - a, nrm);
    const double den = dot(d, nrm);
    if (std::abs(den) < 1e-15) {
      if (off < -tol) return std::nullopt;
      continue;
    }
    const double tc = -off / den;
    if (den > 0.0)
      tmin = std::max(tmin, tc);
    else
      tmax = std::min(tmax, tc);
  }
  if (tmin > tmax + tol) return std::nullopt;
  double t = tmin;
  if (t < -tol) {
    // Origin inside: the first boundary point forward is the exit.
    t = tmax;
    if (t < -tol) return std::nullopt;
  }
  return RayHit{origin + t * d, t};
}

bool PolygonShape::contains(Point p, double tol) const {
  const size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    const Point a = verts_[i];
    const Point e = verts_[(i + 1) % n] - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    if (cross(e, p - a) / len < -tol) return false;
  }
  return true;
}

std::optional<std::pair<double, double>> PolygonShape::segment_interval(
    Point a, Point b, double tol) const {
  double tmin = 0.0, tmax = 1.0;
  const Point d = b - a;
  const size_t n = verts_.size();
  for (size_t i = 0; i < n; ++i) {
    const Point va = verts_[i];
    const Point e = verts_[(i + 1) % n] - va;
    const Point nrm = normalized(perp_ccw(e));
    const double off = dot(a - va, nrm);
    const double den = dot(d, nrm);
    if (std::abs(den) < 1e-300) {
      if (off < -tol) return std::nullopt;
      continue;
    }
    const double tc = -off / den;
    if (den > 0.0)
      tmin = std::max(tmin, tc);
    else
      tmax = std::min(tmax, tc);
    if (tmin > tmax) return std::nullopt;
  }
  return std::make_pair(tmin, tmax);
}

const std::vector<Point>& PolygonShape::boundary_polyline() const {
  return verts_;
}

Rect PolygonShape::bounds() const { return bounds_; }

// ─── EllipseRectShape ───

EllipseRectShape::EllipseRectShape(Point center, double rx, double ry,
                                   double rotation, Rect clip)
    : center_(center), rx_(rx), ry_(ry), rot_(rotation), clip_(clip) {
  if (rx < 0.0 || ry < 0.0)
    throw std::invalid_argument("ellipse semi-axes must be non-negative");
  if (clip.xmin > clip.xmax || clip.ymin > clip.ymax)
    throw std::invalid_argument("clip rectangle is inverted");
  ax1_ = dir_of(rot_);
  ax2_ = perp_ccw(ax1_);

  auto half_extent = [&](double c1, double c2) {
    double t1 = std::isinf(rx_) ? (c1 == 0.0 ? 0.0 : kInf) : rx_ * std::abs(c1);
    double t2 = std::isinf(ry_) ? (c2 == 0.0 ? 0.0 : kInf) : ry_ * std::abs(c2);
    return t1 + t2;
  };
  const double hx = half_extent(ax1_.x, ax2_.x);
  const double hy = half_extent(ax1_.y, ax2_.y);
  bounds_ = {std::max(center_.x - hx, clip_.xmin),
             std::max(center_.y - hy, clip_.ymin),
             std::min(center_.x + hx, clip_.xmax),
             std::min(center_.y + hy, clip_.ymax)};
  if (bounds_.xmin > bounds_.xmax || bounds_.ymin > bounds_.ymax) {
    empty_ = true;
    return;
  }

  // Exact emptiness: minimize the conic value over the clip rectangle (the
  // restriction to each edge is a 1-D quadratic).
  if (rx_ == 0.0 || ry_ == 0.0) {
    empty_ = boundary_polyline().empty();
    return;
  }
  auto qterm = [](double coord, double r) {
    if (std::isinf(r)) return 0.0;
    const double u = coord / r;
    return u * u;
  };
  auto qval = [&](Point p) {
    const Point l = to_local(p);
    return qterm(l.x, rx_) + qterm(l.y, ry_);
  };
  if (clip_.contains(center_, 0.0)) {
    empty_ = false;
    min_conic_ = 0.0;
    return;
  }
  double best = kInf;
  const Point corners[4] = {{clip_.xmin, clip_.ymin},
                            {clip_.xmax, clip_.ymin},
                            {clip_.xmax, clip_.ymax},
                            {clip_.xmin, clip_.ymax}};
  for (int e = 0; e < 4; ++e) {
    const Point a = corners[e], b = corners[(e + 1) % 4];
    const Point la = to_local(a), lb = to_local(b);
    const Point dl = lb - la;
    auto coef = [&](double a0, double d0, double r) {
      if (std::isinf(r)) return std::array<double, 3>{0.0, 0.0, 0.0};
      return std::array<double, 3>{d0 * d0 / (r * r), 2.0 * a0 * d0 / (r * r),
                                   a0 * a0 / (r * r)};
    };
    const auto cx = coef(la.x, dl.x, rx_);
    const auto cy = coef(la.y, dl.y, ry_);
    const double A = cx[0] + cy[0], B = cx[1] + cy[1], C = cx[2] + cy[2];
    double t = A > 0.0 ? clampd(-B / (2.0 * A), 0.0, 1.0)
                       : (B >= 0.0 ? 0.0 : 1.0);
    for (double tt : {0.0, 1.0, t})
      best = std::min(best, A * tt * tt + B * tt + C);
  }
  min_conic_ = best;
  empty_ = best > 1.0 + 1e-12;
}

Point EllipseRectShape::to_local(Point p) const {
  const Point r = p - center_;
  return {dot(r, ax1_), dot(r, ax2_)};
}

Point EllipseRectShape::to_world(Point p) const {
  return center_ + p.x * ax1_ + p.y * ax2_;
}

bool EllipseRectShape::degenerate() const {
  if (empty_ || rx_ == 0.0 || ry_ == 0.0) return true;
  if (clip_.width() <= 0.0 || clip_.height() <= 0.0) return true;
  // Rect only grazes the conic boundary: the intersection is a point/arc
  // with no interior.
  return min_conic_ >= 1.0 - 1e-12;
}

double EllipseRectShape::boundary_slack() const {
  if (empty_) return 0.0;
  return 8.0 * kChordErrorRel * bounds_.diameter();
}

bool EllipseRectShape::contains(Point p, double tol) const {
  if (empty_) return false;
  if (!clip_.contains(p, tol)) return false;
  const Point l = to_local(p);
  if (rx_ == 0.0 && ry_ == 0.0)
    return std::abs(l.x) <= tol && std::abs(l.y) <= tol;
  if (rx_ == 0.0)
    return std::abs(l.x) <= tol && std::abs(l.y) <= ry_ + tol;
  if (ry_ == 0.0)
    return std::abs(l.y) <= tol && std::abs(l.x) <= rx_ + tol;
  auto term = [](double c, double r) {
    if (std::isinf(r)) return 0.0;
    const double u = c / r;
    return u * u;
  };
  const double rmin = std::min(std::isinf(rx_) ? kInf : rx_,
                               std::isinf(ry_) ? kInf : ry_);
  const double slack =
      std::isinf(rmin) ? 0.0 : 2.0 * tol / rmin + (tol / rmin) * (tol / rmin);
  return term(l.x, rx_) + term(l.y, ry_) <= 1.0 + slack;
}

std::optional<std::pair<double, double>> EllipseRectShape::conic_interval(
    Point a, Point d, double tol) const {
  // Interval of t with a + t*d inside the (possibly degenerate) conic, in
  // world coordinates.
  const Point la = to_local(a);
  const Point ld = {dot(d, ax1_), dot(d, ax2_)};
  double lo = -kInf, hi = kInf;
  auto clip_axis = [&](double a0, double d0, double r) -> bool {
    if (std::isinf(r)) return true;
    if (r == 0.0) {
      // |a0 + t d0| <= tol
      if (std::abs(d0) < 1e-300) return std::abs(a0) <= tol;
      const double t1 = (-tol - a0) / d0, t2 = (tol - a0) / d0;
      lo = std::max(lo, std::min(t1, t2));
      hi = std::min(hi, std::max(t1, t2));
      return true;
    }
    return true;  // finite nonzero handled by the quadratic below
  };
  if (!clip_axis(la.x, ld.x, rx_)) return std::nullopt;
  if (!clip_axis(la.y, ld.y, ry_)) return std::nullopt;

  double A = 0.0, B = 0.0, C = -1.0;
  auto add = [&](double a0, double d0, double r) {
    if (std::isinf(r) || r == 0.0) return;
    A += d0 * d0 / (r * r);
    B += 2.0 * a0 * d0 / (r * r);
    C += a0 * a0 / (r * r);
  };
  add(la.x, ld.x, rx_);
  add(la.y, ld.y, ry_);
  if (A < 1e-300) {
    if (std::abs(B) < 1e-300) {
      if (C > 1e-12) return std::nullopt;
    } else {
      const double tc = -C / B;
      if (B > 0.0)
        hi = std::min(hi, tc);
      else
        lo = std::max(lo, tc);
    }
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) {
      // Allow grazing within tolerance.
      if (disc < -4.0 * A * tol * std::max(1.0, std::abs(C))) return std::nullopt;
      const double t0 = -B / (2.0 * A);
      lo = std::max(lo, t0);
      hi = std::min(hi, t0);
    } else {
      const double sq = std::sqrt(disc);
      lo = std::max(lo, (-B - sq) / (2.0 * A));
      hi = std::min(hi, (-B + sq) / (2.0 * A));
    }
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::optional<RayHit> EllipseRectShape::first_ray_hit(Point origin, Point dir,
                                                      double tol) const {
  if (empty_) return std::nullopt;
  const Point d = normalized(dir);
  auto conic = conic_interval(origin, d, tol);
  if (!conic) return std::nullopt;
  double lo = conic->first, hi = conic->second;
  auto slab = [&](double o, double dd, double mn, double mx) -> bool {
    if (std::abs(dd) < 1e-300) return o >= mn - tol && o <= mx + tol;
    double t1 = (mn - o) / dd, t2 = (mx - o) / dd;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
    return true;
  };
  if (!slab(origin.x, d.x, clip_.xmin, clip_.xmax)) return std::nullopt;
  if (!slab(origin.y, d.y, clip_.ymin, clip_.ymax)) return std::nullopt;
  if (lo > hi + tol) return std::nullopt;
  double t = lo;
  if (t < -tol) {
    t = hi;
    if (t < -tol) return std::nullopt;
  }
  return RayHit{origin + t * d, t};
}

std::optional<std::pair<double, double>> EllipseRectShape::segment_interval(
    Point a, Point b, double tol) const {
  if (empty_) return std::nullopt;
  const Point d = b - a;
  auto conic = conic_interval(a, d, tol);
  if (!conic) return std::nullopt;
  double lo = std::max(conic->first, 0.0), hi = std::min(conic->second, 1.0);
  auto slab = [&](double o, double dd, double mn, double mx) -> bool {
    if (std::abs(dd) < 1e-300) return o >= mn - tol && o <= mx + tol;
    double t1 = (mn - o) / dd, t2 = (mx - o) / dd;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
    return true;
  };
  if (!slab(a.x, d.x, clip_.xmin, clip_.xmax)) return std::nullopt;
  if (!slab(a.y, d.y, clip_.ymin, clip_.ymax)) return std::nullopt;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

void EllipseRectShape::ensure_polyline() const {
  if (polyline_ready_) return;
  std::vector<Point> poly;
  if (!empty_) {
    if (rx_ == 0.0 || ry_ == 0.0) {
      // Degenerate conic: a segment (or point) along one axis, clipped.
      const Point axis = rx_ == 0.0 ? ax2_ : ax1_;
      const double r = rx_ == 0.0 ? ry_ : rx_;
      double lo = -(std::isinf(r) ? 1e18 : r);
      double hi = -lo;
      auto slab = [&](double o, double dd, double mn, double mx) -> bool {
        if (std::abs(dd) < 1e-300) return o >= mn && o <= mx;
        double t1 = (mn - o) / dd, t2 = (mx - o) / dd;
        if (t1 > t2) std::swap(t1, t2);
        lo = std::max(lo, t1);
        hi = std::min(hi, t2);
        return true;
      };
      bool ok = slab(center_.x, axis.x, clip_.xmin, clip_.xmax) &&
                slab(center_.y, axis.y, clip_.ymin, clip_.ymax) && lo <= hi;
      if (ok) {
        poly.push_back(center_ + lo * axis);
        if (hi > lo) poly.push_back(center_ + hi * axis);
      }
    } else {
      // Start from the smooth conic boundary (or the clip rect for slabs),
      // then clip against the rectangle's half-planes.
      if (std::isinf(rx_) && std::isinf(ry_)) {
        poly = {{clip_.xmin, clip_.ymin},
                {clip_.xmax, clip_.ymin},
                {clip_.xmax, clip_.ymax},
                {clip_.xmin, clip_.ymax}};
      } else if (std::isinf(rx_) || std::isinf(ry_)) {
        // Slab between two parallel lines: clip the rect by both.
        poly = {{clip_.xmin, clip_.ymin},
                {clip_.xmax, clip_.ymin},
                {clip_.xmax, clip_.ymax},
                {clip_.xmin, clip_.ymax}};
        const Point n = std::isinf(ry_) ? ax1_ : ax2_;
        const double r = std::isinf(ry_) ? rx_ : ry_;
        for (double side : {1.0, -1.0}) {
          // keep dot(p - center, side*n) <= r
          std::vector<Point> out;
          const size_t m = poly.size();
          for (size_t i = 0; i < m; ++i) {
            const Point p = poly[i], q = poly[(i + 1) % m];
            const double dp = dot(p - center_, side * n) - r;
            const double dq = dot(q - center_, side * n) - r;
            if (dp <= 0.0) out.push_back(p);
            if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0))
              out.push_back(p + (dp / (dp - dq)) * (q - p));
          }
          poly = std::move(out);
          if (poly.empty()) break;
        }
      } else {
        const double rmax = std::max(rx_, ry_);
        const double target =
            std::max(kChordErrorRel * bounds_.diameter(), 1e-300);
        double dphi = std::sqrt(8.0 * target / rmax);
        size_t count = static_cast<size_t>(std::ceil(2.0 * M_PI / dphi));
        count = std::min<size_t>(std::max<size_t>(count, 64), 65536);
        poly.reserve(count);
        for (size_t i = 0; i < count; ++i) {
          const double phi = 2.0 * M_PI * static_cast<double>(i) /
                             static_cast<double>(count);
          poly.push_back(to_world(
              {rx_ * std::cos(phi), ry_ * std::sin(phi)}));
        }
        // Sutherland–Hodgman against the rect's four half-planes.
        struct HP {
          Point n;
          double c;
        };
        const HP hps[4] = {{{1, 0}, clip_.xmax},
                           {{-1, 0}, -clip_.xmin},
                           {{0, 1}, clip_.ymax},
                           {{0, -1}, -clip_.ymin}};
        for (const HP& hp : hps) {
          std::vector<Point> out;
          const size_t m = poly.size();
          for (size_t i = 0; i < m && m >= 2; ++i) {
            const Point p = poly[i], q = poly[(i + 1) % m];
            const double dp = dot(p, hp.n) - hp.c;
            const double dq = dot(q, hp.n) - hp.c;
            if (dp <= 0.0) out.push_back(p);
            if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0))
              out.push_back(p + (dp / (dp - dq)) * (q - p));
          }
          poly = std::move(out);
          if (poly.empty()) break;
        }
      }
    }
  }
  polyline_ = std::move(poly);
  polyline_ready_ = true;
}

const std::vector<Point>& EllipseRectShape::boundary_polyline() const {
  ensure_polyline();
  return polyline_;
}

Rect EllipseRectShape::bounds() const {
  if (empty_) return {center_.x, center_.y, center_.x, center_.y};
  return bounds_;
}

Support EllipseRectShape::support(Point dir, double tol) const {
  if (empty_) throw std::invalid_argument("support of empty shape");
  const Point d = normalized(dir);
  std::vector<Point> cands;

  if (rx_ == 0.0 || ry_ == 0.0) {
    const auto& pl = boundary_polyline();
    cands.assign(pl.begin(), pl.end());
  } else {
    const Point corners[4] = {{clip_.xmin, clip_.ymin},
                              {clip_.xmax, clip_.ymin},
                              {clip_.xmax, clip_.ymax},
                              {clip_.xmin, clip_.ymax}};
    for (const Point& c : corners)
      if (contains(c, tol)) cands.push_back(c);
    for (int e = 0; e < 4; ++e) {
      const Point a = corners[e], b = corners[(e + 1) % 4];
      // Conic boundary crossing along this edge: conic interval endpoints.
      auto iv = conic_interval(a, b - a, tol);
      if (!iv) continue;
      for (double t : {iv->first, iv->second})
        if (t > -1e-12 && t < 1.0 + 1e-12)
          cands.push_back(a + clampd(t, 0.0, 1.0) * (b - a));
    }
    if (!std::isinf(rx_) && !std::isinf(ry_)) {
      const double du = dot(d, ax1_), dv = dot(d, ax2_);
      const double s = std::hypot(rx_ * du, ry_ * dv);
      if (s > 0.0) {
        const Point p =
            to_world({rx_ * rx_ * du / s, ry_ * ry_ * dv / s});
        if (clip_.contains(p, tol)) cands.push_back(p);
      }
    }
  }
  if (cands.empty()) throw std::invalid_argument("support of empty shape");

  double best = -kInf;
  for (const Point& c : cands) best = std::max(best, dot(c, d));
  std::vector<Point> top;
  for (const Point& c : cands)
    if (dot(c, d) >= best - tol) top.push_back(c);
  const Point t = perp_ccw(d);
  Point lo = top[0], hi = top[0];
  for (const Point& v : top) {
    if (dot(v, t) < dot(lo, t)) lo = v;
    if (dot(v, t) > dot(hi, t)) hi = v;
  }
  if (dist(lo, hi) <= tol) return {lo, std::nullopt};
  return {lo, hi};
}

// ─── PointShape ───

PointShape::PointShape(Point p) : p_(p), poly_{p} {}

Support PointShape::support(Point, double) const { return {p_, std::nullopt}; }

std::optional<RayHit> PointShape::first_ray_hit(Point, Point, double) const {
  return std::nullopt;  // measure-zero target; rays never land on it
}

bool PointShape::contains(Point p, double tol) const {
  return dist(p, p_) <= tol;
}

std::optional<std::pair<double, double>> PointShape::segment_interval(
    Point, Point, double) const {
  return std::nullopt;
}

const std::vector<Point>& PointShape::boundary_polyline() const {
  return poly_;
}

Rect PointShape::bounds() const { return {p_.x, p_.y, p_.x, p_.y}; }

// ─── Distance (support-function iteration with witnesses) ───

namespace {

struct MinkPt {
  Point m;   // point of A - B
  Point a;   // support point on A
  Point b;   // support point on B
};

MinkPt mink_support(const ConvexShape& A, const ConvexShape& B, Point dir) {
  const Point sa = A.support(dir, 0.0).first;
  const Point sb = B.support(-1.0 * dir, 0.0).first;
  return {sa - sb, sa, sb};
}

// Closest point to the origin on the segment [p, q] with barycentric t.
Point seg_closest_origin(Point p, Point q, double* t_out) {
  const Point d = q - p;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? clampd(-dot(p, d) / len2, 0.0, 1.0) : 0.0;
  *t_out = t;
  return p + t * d;
}

}  // namespace

DistanceResult shape_distance(const ConvexShape& A, const ConvexShape& B,
                              double tol) {
  const double scale =
      std::max({A.bounds().diameter(), B.bounds().diameter(),
                dist(A.interior_point(), B.interior_point()), 1.0});
  Point d0 = B.interior_point() - A.interior_point();
  if (norm(d0) < 1e-300) d0 = {1.0, 0.0};

  std::vector<MinkPt> simplex{mink_support(A, B, -1.0 * d0)};
  Point v = simplex[0].m;
  MinkPt wa = simplex[0], wb = simplex[0];
  double lam = 0.0;
  bool enclosed = false;

  for (int iter = 0; iter < 200; ++iter) {
    // Reduce simplex to the feature closest to the origin.
    if (simplex.size() == 1) {
      v = simplex[0].m;
      wa = wb = simplex[0];
      lam = 0.0;
    } else if (simplex.size() == 2) {
      double t;
      v = seg_closest_origin(simplex[0].m, simplex[1].m, &t);
      if (t <= 0.0) {
        simplex = {simplex[0]};
        wa = wb = simplex[0];
        lam = 0.0;
      } else if (t >= 1.0) {
        simplex = {simplex[1]};
        wa = wb = simplex[0];
        lam = 0.0;
      } else {
        wa = simplex[0];
        wb = simplex[1];
        lam = t;
      }
    } else {
      // Triangle: locate the closest feature or detect enclosure.
      const Point p0 = simplex[0].m, p1 = simplex[1].m, p2 = simplex[2].m;
      const double d01 = cross(p1 - p0, Point{} - p0);
      const double d12 = cross(p2 - p1, Point{} - p1);
      const double d20 = cross(p0 - p2, Point{} - p2);
      const double orient = cross(p1 - p0, p2 - p0);
      const bool inside =
          orient != 0.0 && ((d01 >= 0 && d12 >= 0 && d20 >= 0 && orient > 0) ||
                            (d01 <= 0 && d12 <= 0 && d20 <= 0 && orient < 0));
      if (inside) {
        enclosed = true;
        break;
      }
      double bestd = kInf;
      std::vector<MinkPt> bestsx;
      Point bestv{};
      MinkPt bwa = simplex[0], bwb = simplex[0];
      double blam = 0.0;
      for (int e = 0; e < 3; ++e) {
        double t;
        const MinkPt& s0 = simplex[e];
        const MinkPt& s1 = simplex[(e + 1) % 3];
        const Point c = seg_closest_origin(s0.m, s1.m, &t);
        const double dd = norm(c);
        if (dd < bestd) {
          bestd = dd;
          bestv = c;
          if (t <= 0.0) {
            bestsx = {s0};
            bwa = bwb = s0;
            blam = 0.0;
          } else if (t >= 1.0) {
            bestsx = {s1};
            bwa = bwb = s1;
            blam = 0.0;
          } else {
            bestsx = {s0, s1};
            bwa = s0;
            bwb = s1;
            blam = t;
          }
        }
      }
      simplex = bestsx;
      v = bestv;
      wa = bwa;
      wb = bwb;
      lam = blam;
    }

    const double vn = norm(v);
    if (vn < 1e-13 * std::max(1.0, scale)) {
      enclosed = true;
      break;
    }
    const MinkPt w = mink_support(A, B, -1.0 * v);
    // Duality gap |v|^2 - v.w bounds the distance error from above.
    const double delta = (dot(v, v) - dot(v, w.m)) / vn;
    if (delta <= 1e-12 * std::max(1.0, scale)) break;
    bool dup = false;
    for (const MinkPt& s : simplex)
      if (dist(s.m, w.m) < 1e-14 * std::max(1.0, scale)) dup = true;
    if (dup) break;
    simplex.push_back(w);
  }

  if (enclosed) {
    // Origin inside (or on) A - B: decide touching vs overlapping by the
    // minimum support margin over directions.  Coarse scan, then ternary
    // refinement around the best angle so genuinely touching shapes (margin
    // exactly 0 in one direction) are not misread as overlapping.
    auto h = [&](double phi) {
      const Point n = dir_of(phi);
      return dot(mink_support(A, B, n).m, n);
    };
    const int coarse = 1024;
    double best_phi = 0.0, best_m = kInf;
    for (int i = 0; i < coarse; ++i) {
      const double phi = 2.0 * M_PI * i / coarse;
      const double m = h(phi);
      if (m < best_m) {
        best_m = m;
        best_phi = phi;
      }
    }
    double lo = best_phi - 2.0 * M_PI / coarse;
    double hi = best_phi + 2.0 * M_PI / coarse;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (h(m1) < h(m2))
        hi = m2;
      else
        lo = m1;
    }
    best_phi = 0.5 * (lo + hi);
    best_m = h(best_phi);
    if (best_m > tol)
      throw std::invalid_argument("shapes have overlapping interiors");
    const MinkPt w = mink_support(A, B, dir_of(best_phi));
    const Point mid = 0.5 * (w.a + w.b);
    return {0.0, mid, mid};
  }

  const Point pa = wa.a + lam * (wb.a - wa.a);
  const Point pb = wa.b + lam * (wb.b - wa.b);
  return {norm(v), pa, pb};
}

DistanceResult polygon_distance_exact(const PolygonShape& A,
                                      const PolygonShape& B) {
  DistanceResult best;
  best.distance = kInf;
  auto consider = [&](Point p, Point a, Point b, bool p_on_A) {
    double t;
    const Point q = closest_on_segment(p, a, b, &t);
    const double d = dist(p, q);
    if (d < best.distance) {
      best.distance = d;
      best.witness_a = p_on_A ? p : q;
      best.witness_b = p_on_A ? q : p;
    }
  };
  const auto& va = A.vertices();
  const auto& vb = B.vertices();
  for (const Point& p : va)
    for (size_t j = 0; j < vb.size(); ++j)
      consider(p, vb[j], vb[(j + 1) % vb.size()], true);
  for (const Point& p : vb)
    for (size_t i = 0; i < va.size(); ++i)
      consider(p, va[i], va[(i + 1) % va.size()], false);
  return best;
}

DistanceResult point_shape_distance(Point p, const ConvexShape& A, double tol) {
  if (A.contains(p, tol)) return {0.0, p, p};
  if (const auto* poly = dynamic_cast<const PolygonShape*>(&A)) {
    DistanceResult best;
    best.distance = kInf;
    const auto& v = poly->vertices();
    for (size_t i = 0; i < v.size(); ++i) {
      const Point q = closest_on_segment(p, v[i], v[(i + 1) % v.size()]);
      const double d = dist(p, q);
      if (d < best.distance) best = {d, p, q};
    }
    return best;
  }
  if (const auto* pt = dynamic_cast<const PointShape*>(&A)) {
    return {dist(p, pt->point()), p, pt->point()};
  }
  const PointShape ps(p);
  DistanceResult r = shape_distance(ps, A, tol);
  r.witness_a = p;
  return r;
}

// ─── Common tangents via angular bisection on support offsets ───

namespace {

double support_offset(const ConvexShape& s, Point n) {
  return dot(s.support(n, 0.0).first, n);
}

// Roots of f over [0, 2pi) located by a sign-change scan plus bisection.
std::vector<double> angular_roots(const std::function<double(double)>& f,
                                  int samples) {
  std::vector<double> roots;
  std::vector<double> vals(samples);
  for (int i = 0; i < samples; ++i)
    vals[i] = f(2.0 * M_PI * i / samples);
  for (int i = 0; i < samples; ++i) {
    const double a0 = 2.0 * M_PI * i / samples;
    const double a1 = 2.0 * M_PI * (i + 1) / samples;
    const double f0 = vals[i];
    const double f1 = vals[(i + 1) % samples];
    if (f0 == 0.0) {
      roots.push_back(a0);
      continue;
    }
    if ((f0 < 0.0) == (f1 < 0.0)) continue;
    double lo = a0, hi = a1, flo = f0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  // Merge near-identical roots (mod 2pi).
  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && r - merged.back() < 1e-6) continue;
    merged.push_back(r);
  }
  if (merged.size() >= 2 &&
      (merged.front() + 2.0 * M_PI) - merged.back() < 1e-6)
    merged.pop_back();
  return merged;
}

}  // namespace

std::vector<TangentPair> common_tangents(const ConvexShape& A,
                                         const ConvexShape& B, double tol) {
  std::vector<TangentPair> out;

  auto outer_f = [&](double phi) {
    const Point n = dir_of(phi);
    return support_offset(B, n) - support_offset(A, n);
  };
  for (int samples : {4096, 16384}) {
    auto roots = angular_roots(outer_f, samples);
    if (roots.size() == 2) {
      for (double phi : roots) {
        const Point n = dir_of(phi);
        out.push_back({A.support(n, 0.0).first, B.support(n, 0.0).first,
                       TangentKind::Outer});
      }
      break;
    }
    if (samples == 16384) {
      for (double phi : roots) {
        const Point n = dir_of(phi);
        out.push_back({A.support(n, 0.0).first, B.support(n, 0.0).first,
                       TangentKind::Outer});
      }
    }
  }

  const double sep = shape_distance(A, B, tol).distance;
  if (sep > tol) {
    auto inner_f = [&](double phi) {
      const Point n = dir_of(phi);
      return support_offset(A, n) + support_offset(B, -1.0 * n);
    };
    for (int samples : {4096, 16384}) {
      auto roots = angular_roots(inner_f, samples);
      if (roots.size() == 2 || samples == 16384) {
        for (double phi : roots) {
          const Point n = dir_of(phi);
          out.push_back({A.support(n, 0.0).first,
                         B.support(-1.0 * n, 0.0).first, TangentKind::Inner});
        }
        break;
      }
    }
  }
  return out;
}

std::vector<Point> point_tangents(Point p, const ConvexShape& A, double tol) {
  if (A.contains(p, tol)) {
    // Boundary case: the supporting lines through p degenerate to the
    // incident boundary edges; report their far endpoints.
    const auto& pl = A.boundary_polyline();
    if (pl.size() < 2) return {pl.empty() ? p : pl[0]};
    double bestd = kInf;
    size_t bi = 0;
    double bt = 0.0;
    for (size_t i = 0; i < pl.size(); ++i) {
      double t;
      const Point q = closest_on_segment(p, pl[i], pl[(i + 1) % pl.size()], &t);
      const double d = dist(p, q);
      if (d < bestd) {
        bestd = d;
        bi = i;
        bt = t;
      }
    }
    if (bestd > tol + A.boundary_slack())
      throw std::invalid_argument("point strictly inside shape");
    const size_t n = pl.size();
    if (bt < 1e-9) return {pl[(bi + n - 1) % n], pl[(bi + 1) % n]};
    if (bt > 1.0 - 1e-9) return {pl[bi], pl[(bi + 2) % n]};
    return {pl[bi], pl[(bi + 1) % n]};
  }

  if (const auto* poly = dynamic_cast<const PolygonShape*>(&A)) {
    const auto& v = poly->vertices();
    const size_t n = v.size();
    const double scale = std::max(poly->bounds().diameter(), 1e-300);
    const double tc = 1e-12 * scale * scale;
    Point left{}, right{};
    double leftd = -1.0, rightd = -1.0;
    for (size_t i = 0; i < n; ++i) {
      const Point prev = v[(i + n - 1) % n], next = v[(i + 1) % n];
      const double sp = cross(v[i] - p, prev - p);
      const double sn = cross(v[i] - p, next - p);
      const double d = dist(p, v[i]);
      if (sp >= -tc && sn >= -tc && d > leftd) {
        leftd = d;
        left = v[i];
      }
      if (sp <= tc && sn <= tc && d > rightd) {
        rightd = d;
        right = v[i];
      }
    }
    return {left, right};
  }

  auto f = [&](double phi) {
    const Point n = dir_of(phi);
    return support_offset(A, n) - dot(p, n);
  };
  auto roots = angular_roots(f, 8192);
  std::vector<Point> out;
  for (double phi : roots) out.push_back(A.support(dir_of(phi), 0.0).first);
  return out;
}

// ─── Boundary arcs ───

BoundaryArc boundary_arc(const ConvexShape& shape, Point a, Point b, bool ccw,
                         double tol) {
  const auto& pl = shape.boundary_polyline();
  const double scale = std::max(shape.bounds().diameter(), 1e-300);
  if (pl.size() <= 1) return {{a}, 0.0};
  if (dist(a, b) <= 1e-14 * scale) return {{a}, 0.0};
  if (pl.size() == 2) {
    // Degenerate segment boundary: the only walk is the direct chord.
    return {{a, b}, dist(a, b)};
  }

  auto locate = [&](Point p) -> std::pair<size_t, double> {
    double bestd = kInf;
    size_t bi = 0;
    double bt = 0.0;
    for (size_t i = 0; i < pl.size(); ++i) {
      double t;
      const Point q = closest_on_segment(p, pl[i], pl[(i + 1) % pl.size()], &t);
      const double d = dist(p, q);
      if (d < bestd) {
        bestd = d;
        bi = i;
        bt = t;
      }
    }
    if (bestd > tol + shape.boundary_slack())
      throw std::invalid_argument("arc endpoint not on shape boundary");
    return {bi, bt};
  };

  if (!ccw) {
    BoundaryArc rev = boundary_arc(shape, b, a, true, tol);
    std::reverse(rev.polyline.begin(), rev.polyline.end());
    return rev;
  }

  auto [ia, ta] = locate(a);
  auto [ib, tb] = locate(b);
  BoundaryArc arc;
  arc.polyline.push_back(a);
  const size_t n = pl.size();
  if (ia == ib && tb >= ta) {
    arc.polyline.push_back(b);
  } else {
    // Walk ccw through the vertices from a's edge to b's edge (same edge with
    // tb < ta means a full wrap around the boundary).
    size_t j = (ia + 1) % n;
    while (true) {
      arc.polyline.push_back(pl[j]);
      if (j == ib) break;
      j = (j + 1) % n;
    }
    arc.polyline.push_back(b);
  }
  for (size_t i = 0; i + 1 < arc.polyline.size(); ++i)
    arc.length += dist(arc.polyline[i], arc.polyline[i + 1]);
  return arc;
}

Support support_point(const ConvexShape& shape, Point dir, double tol) {
  return shape.support(dir, tol);
}

std::optional<RayHit> ray_intersect(Point origin, Point dir,
                                    const ConvexShape& shape, double tol) {
  return shape.first_ray_hit(origin, dir, tol);
}

}  // namespace zos
