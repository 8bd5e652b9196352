#include "zos/sampling.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "support/test_scenes.hpp"

using namespace zos;
using zos::testing::rand_convex_polygon;
using zos::testing::regular_polygon;

namespace {

// Cyclic position of a point on a convex polygon boundary (edge index plus
// fraction), used to certify ccw ordering of sample rings.
double boundary_param(const PolygonShape& poly, Point p) {
  const auto& v = poly.vertices();
  double best = 1e300;
  double param = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    const Point ab = b - a;
    const double t =
        std::clamp(dot(p - a, ab) / std::max(dot(ab, ab), 1e-300), 0.0, 1.0);
    const double d = dist(p, a + t * ab);
    if (d < best) {
      best = d;
      param = static_cast<double>(i) + t;
    }
  }
  return param;
}

Region square_region(RegionWeight w, Point lo, double side) {
  std::vector<Point> v{{lo.x, lo.y},
                       {lo.x + side, lo.y},
                       {lo.x + side, lo.y + side},
                       {lo.x, lo.y + side}};
  return {w, std::make_shared<PolygonShape>(std::move(v)), ""};
}

}  // namespace

TEST_CASE("cone angle selection: frozen table") {
  // Values fixed by hand from theta = (pi/2)/j with
  // j = max(cap, ceil((pi/2)/asin-bound)).
  auto ds = choose_theta(1.0, false);
  CHECK(ds.j == 4);
  CHECK(ds.m == 16);
  CHECK(ds.theta == doctest::Approx(0.39269908169872414).epsilon(1e-14));
  ds = choose_theta(0.1, false);
  CHECK(ds.j == 18);
  CHECK(ds.m == 72);
  CHECK(ds.theta == doctest::Approx(0.08726646259971647).epsilon(1e-14));
  ds = choose_theta(0.25, false);
  CHECK(ds.j == 8);
  CHECK(ds.m == 32);
  ds = choose_theta(0.25, true);
  CHECK(ds.j == 16);
  CHECK(ds.m == 64);
  ds = choose_theta(0.5, true);
  CHECK(ds.j == 10);
  CHECK(ds.m == 40);
  // Very loose targets still respect the hard caps.
  ds = choose_theta(10.0, false);
  CHECK(ds.j == 4);
  CHECK(ds.theta < M_PI / 6.0);
  ds = choose_theta(10.0, true);
  CHECK(ds.j == 7);
  CHECK(ds.theta < M_PI / 12.0);
  CHECK_THROWS_AS(choose_theta(0.0, false), std::invalid_argument);
  CHECK_THROWS_AS(choose_theta(-1.0, false), std::invalid_argument);
}

TEST_CASE("direction sets: unit vectors at multiples of theta") {
  const auto ds = choose_theta(0.3, false);
  REQUIRE(static_cast<int>(ds.dirs.size()) == ds.m);
  CHECK(ds.theta * ds.j == doctest::Approx(M_PI / 2.0));
  for (int k = 0; k < ds.m; ++k) {
    CHECK(norm(ds.dirs[k]) == doctest::Approx(1.0));
    CHECK(dot(ds.dirs[k], dir_of(k * ds.theta)) == doctest::Approx(1.0));
  }
}

TEST_CASE("spanning ratio of the cone angle: frozen value") {
  auto ds = choose_theta(0.25, false);  // j = 8 -> theta = pi/16
  CHECK(ds.j == 8);
  CHECK(ds.spanning_ratio() == doctest::Approx(1.2185035255879764).epsilon(1e-12));
  // Ratio shrinks toward 1 as theta does.
  CHECK(choose_theta(0.01, false).spanning_ratio() <
        choose_theta(0.5, false).spanning_ratio());
  CHECK(choose_theta(0.5, false).spanning_ratio() > 1.0);
}

TEST_CASE("cone index is half-open on the lower angle") {
  const auto ds = choose_theta(1.0, false);  // theta = pi/8, m = 16
  const Point o{1, 1};
  CHECK(ds.cone_of(o, o + dir_of(0.0)) == 0);
  CHECK(ds.cone_of(o, o + dir_of(ds.theta)) == 1);
  CHECK(ds.cone_of(o, o + dir_of(ds.theta - 1e-9)) == 0);
  CHECK(ds.cone_of(o, o + dir_of(2 * M_PI - 1e-9)) == 15);
  CHECK(ds.cone_of(o, o + dir_of(M_PI)) == 8);
}

TEST_CASE("circle samples sit at the direction extremes") {
  const auto ds = choose_theta(0.25, false);  // m = 32
  const Rect clip{-100, -100, 100, 100};
  const EllipseRectShape circ({2, -1}, 3, 3, 0, clip);
  const auto pts = boundary_support_samples(circ, ds, 1e-9);
  REQUIRE(static_cast<int>(pts.size()) == ds.m);
  // Every sample is the circle point in one of the m directions.
  for (const Point& p : pts) {
    const Point r = p - Point{2, -1};
    CHECK(norm(r) == doctest::Approx(3.0).epsilon(1e-9));
    const double ang = std::atan2(r.y, r.x);
    const double steps = ang / ds.theta;
    CHECK(std::abs(steps - std::round(steps)) < 1e-6);
  }
  // Adjacent samples are one cone apart: uniform arc spacing.
  for (size_t i = 0; i < pts.size(); ++i) {
    const double gap = dist(pts[i], pts[(i + 1) % pts.size()]);
    CHECK(gap == doctest::Approx(2 * 3 * std::sin(ds.theta / 2)).epsilon(1e-6));
  }
}

TEST_CASE("polygon samples are exactly the extreme vertices") {
  const auto ds = choose_theta(0.25, false);
  const PolygonShape sq({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const auto pts = boundary_support_samples(sq, ds, 1e-9);
  REQUIRE(pts.size() == 4);  // axis-aligned square: only the corners
  for (const Point& c : {Point{0, 0}, Point{2, 0}, Point{2, 2}, Point{0, 2}}) {
    bool found = false;
    for (const Point& p : pts)
      if (dist(p, c) < 1e-12) found = true;
    CHECK(found);
  }
  // A rotated square also yields its 4 corners (no direction aligns with an
  // edge for this direction count).
  std::vector<Point> rot;
  for (const Point& p : sq.vertices()) rot.push_back(rotate(p, 0.35));
  const PolygonShape rsq(rot);
  CHECK(boundary_support_samples(rsq, ds, 1e-9).size() == 4);
}

TEST_CASE("sample rings are in ccw boundary order") {
  std::mt19937 rng(7101);
  const auto ds = choose_theta(0.4, false);
  for (int it = 0; it < 50; ++it) {
    const PolygonShape poly = rand_convex_polygon(rng, {0, 0}, 2.0, 9);
    const auto pts = boundary_support_samples(poly, ds, 1e-9);
    REQUIRE(pts.size() >= 3);
    // Strictly increasing boundary parameter, up to one wrap.
    int wraps = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      const double a = boundary_param(poly, pts[i]);
      const double b = boundary_param(poly, pts[(i + 1) % pts.size()]);
      if (b < a) ++wraps;
    }
    CHECK(wraps == 1);
  }
}

TEST_CASE("inscribed polygon of a circle obeys the secant bound") {
  const auto ds = choose_theta(0.25, true);  // theta = pi/32
  const Rect clip{-100, -100, 100, 100};
  const EllipseRectShape circ({0, 0}, 2, 2, 0, clip);
  const auto pts = boundary_support_samples(circ, ds, 1e-9);
  const auto simp = simplify_region(circ, pts, 1e-9);
  REQUIRE(!simp.degenerate);
  const double inner = simp.shape->perimeter();
  const double outer = circ.perimeter();
  CHECK(inner <= outer + 1e-6);
  // Boundary arc between adjacent samples is at most sec(theta/2) times the
  // inscribed chord.
  CHECK(outer <= inner / std::cos(ds.theta / 2.0) + 1e-6);
  // The stand-in is contained in the original.
  for (const Point& p : simp.ring) CHECK(circ.contains(p, 1e-9));
  CHECK(circ.contains(simp.shape->interior_point(), 1e-9));
}

TEST_CASE("mid-edge samples are kept as ring vertices") {
  const PolygonShape sq({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  std::vector<Point> pts{{0, 0}, {2, 0}, {2, 2}, {0, 2},
                         {1, 0}, {2, 1}, {1, 2}, {0, 1}};
  const auto simp = simplify_region(sq, pts, 1e-9);
  REQUIRE(!simp.degenerate);
  CHECK(simp.ring.size() == 8);
  CHECK(simp.shape->area() == doctest::Approx(4.0));
  CHECK(simp.shape->contains({1, 1}, 1e-9));
  // Ring order interleaves corners and midpoints ccw.
  for (size_t i = 0; i < simp.ring.size(); ++i) {
    const double a = boundary_param(sq, simp.ring[i]);
    const double b = boundary_param(sq, simp.ring[(i + 1) % 8]);
    const double fwd = b > a ? b - a : b - a + 4.0;
    CHECK(fwd == doctest::Approx(0.5));
  }
}

TEST_CASE("one or two samples degrade to point and segment stand-ins") {
  const PolygonShape sq({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const auto pt = simplify_region(sq, {{1, 0}}, 1e-9);
  CHECK(pt.degenerate);
  CHECK(pt.ring.size() == 1);
  CHECK(pt.shape->contains({1, 0}, 1e-9));
  CHECK(!pt.shape->contains({1.5, 0}, 1e-6));

  const auto seg = simplify_region(sq, {{0, 0}, {2, 0}}, 1e-9);
  CHECK(seg.degenerate);
  REQUIRE(seg.ring.size() == 2);
  CHECK(seg.shape->contains({1, 0}, 1e-9));
  CHECK(!seg.shape->contains({1, 0.2}, 1e-6));
  CHECK(seg.shape->bounds().width() == doctest::Approx(2.0));
  // Three collinear points still collapse to the segment.
  const auto seg3 = simplify_region(sq, {{0, 0}, {1, 0}, {2, 0}}, 1e-9);
  CHECK(seg3.degenerate);
  CHECK(seg3.shape->contains({0.5, 0}, 1e-9));
}

TEST_CASE("ray landing picks the first region boundary along the ray") {
  Scene s;
  s.regions.push_back(square_region(RegionWeight::Zero, {0, 0}, 2));
  s.regions.push_back(square_region(RegionWeight::Obstacle, {5, 0}, 2));
  s.regions.push_back(square_region(RegionWeight::Zero, {9, 0}, 2));
  const double tol = s.eta();
  // Eastward from the first square's right edge: lands on the obstacle.
  auto hit = first_region_hit(s, {2, 1}, {1, 0}, tol);
  REQUIRE(hit.has_value());
  CHECK(hit->region == 1);
  CHECK(dist(hit->point, {5, 1}) < 1e-9);
  CHECK(hit->param == doctest::Approx(3.0));
  // Upward from open ground: no landing.
  CHECK(!first_region_hit(s, {1, 3}, {0, 1}, tol).has_value());
  // Starting on a boundary pointing away from everything.
  CHECK(!first_region_hit(s, {0, 1}, {-1, 0}, tol).has_value());
  // Sliding along the emitter's own edge reports the far corner.
  auto graze = first_region_hit(s, {2, 1}, {0, 1}, tol);
  REQUIRE(graze.has_value());
  CHECK(graze->region == 0);
  CHECK(dist(graze->point, {2, 2}) < 1e-9);
}

TEST_CASE("ray landing breaks distance ties toward the lower region id") {
  Scene s;
  s.regions.push_back(square_region(RegionWeight::Zero, {2, 2}, 2));
  s.regions.push_back(square_region(RegionWeight::Zero, {2, -4}, 2));
  const double tol = s.eta();
  // Equidistant squares above and below; fire straight up and down.
  auto up = first_region_hit(s, {3, 0}, {0, 1}, tol);
  REQUIRE(up.has_value());
  CHECK(up->region == 0);
  auto down = first_region_hit(s, {3, 0}, {0, -1}, tol);
  REQUIRE(down.has_value());
  CHECK(down->region == 1);
  CHECK(up->param == doctest::Approx(down->param));
}

TEST_CASE("rays through a region interior land on its far side") {
  Scene s;
  s.regions.push_back(square_region(RegionWeight::Zero, {0, 0}, 2));
  const double tol = s.eta();
  const auto hit = first_region_hit(s, {0, 1}, {1, 0}, tol);
  REQUIRE(hit.has_value());
  CHECK(hit->region == 0);
  CHECK(dist(hit->point, {2, 1}) < 1e-9);
}
