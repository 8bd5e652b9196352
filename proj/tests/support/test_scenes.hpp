#pragma once
// Shared helpers for the test suite: seeded random convex shapes and scene
// placement utilities.  Everything is deterministic given the seed.

#include <cmath>
#include <random>
#include <vector>

#include "zos/geom.hpp"

namespace zos::testing {

inline Point rand_dir(std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  return dir_of(ang(rng));
}

// Random convex polygon: draw edge vectors, sort them by angle and chain
// them into a closed fan, then translate/scale to the requested disk.
inline std::vector<Point> rand_convex_vertices(std::mt19937& rng, Point center,
                                               double radius, int n) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> len(0.2, 1.0);
  std::vector<double> angles(n);
  for (double& a : angles) a = ang(rng);
  std::sort(angles.begin(), angles.end());
  // Reject near-duplicate angles (would create near-collinear edges).
  for (int i = 1; i < n; ++i)
    if (angles[i] - angles[i - 1] < 1e-3) angles[i] = angles[i - 1] + 1e-3;
  std::vector<Point> edges(n);
  Point sum{0, 0};
  for (int i = 0; i < n; ++i) {
    edges[i] = len(rng) * dir_of(angles[i]);
    sum = sum + edges[i];
  }
  // Close the fan by spreading the residual across all edges.
  const Point fix = (-1.0 / n) * sum;
  std::vector<Point> verts;
  Point cur{0, 0};
  for (int i = 0; i < n; ++i) {
    verts.push_back(cur);
    cur = cur + edges[i] + fix;
  }
  // Normalize into the disk (center, radius).
  Point lo = verts[0], hi = verts[0];
  for (const Point& v : verts) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  const Point mid = 0.5 * (lo + hi);
  const double span = std::max(hi.x - lo.x, hi.y - lo.y);
  const double s = span > 0 ? 2.0 * radius / span : 1.0;
  for (Point& v : verts) v = center + s * (v - mid);
  // The chained-edge construction can yield clockwise order depending on the
  // residual fix; reorient if needed and drop any concave refuse.
  double area2 = 0.0;
  for (size_t i = 0; i < verts.size(); ++i)
    area2 += cross(verts[i], verts[(i + 1) % verts.size()]);
  if (area2 < 0.0) std::reverse(verts.begin(), verts.end());
  // Convex-hull pass to guarantee strict convexity after the residual fix.
  std::sort(verts.begin(), verts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto build = [&](bool upper) {
    std::vector<Point> h;
    for (size_t k = 0; k < verts.size(); ++k) {
      const Point p = upper ? verts[verts.size() - 1 - k] : verts[k];
      while (h.size() >= 2 &&
             cross(h[h.size() - 1] - h[h.size() - 2], p - h[h.size() - 2]) <=
                 1e-12 * radius * radius)
        h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    return h;
  };
  std::vector<Point> hull = build(false);
  std::vector<Point> up = build(true);
  hull.insert(hull.end(), up.begin(), up.end());
  return hull;
}

inline PolygonShape rand_convex_polygon(std::mt19937& rng, Point center,
                                        double radius, int n) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    auto verts = rand_convex_vertices(rng, center, radius, n);
    if (verts.size() >= 3) {
      try {
        return PolygonShape(std::move(verts), Convexity::Strict);
      } catch (const std::invalid_argument&) {
      }
    }
  }
  // Fallback: a regular polygon never fails validation.
  std::vector<Point> verts;
  for (int i = 0; i < std::max(n, 3); ++i)
    verts.push_back(center +
                    radius * dir_of(2.0 * M_PI * i / std::max(n, 3)));
  return PolygonShape(std::move(verts), Convexity::Strict);
}

// Regular n-gon approximation of a circle (exact convex polygon).
inline PolygonShape regular_polygon(Point center, double radius, int n,
                                    double phase = 0.0) {
  std::vector<Point> verts;
  for (int i = 0; i < n; ++i)
    verts.push_back(center + radius * dir_of(phase + 2.0 * M_PI * i / n));
  return PolygonShape(std::move(verts), Convexity::Strict);
}

}  // namespace zos::testing
