#include "zos/scene.hpp"

#include <cmath>

#include "doctest.h"
#include "support/test_scenes.hpp"

using namespace zos;

namespace {

Region square_region(RegionWeight w, Point lo, double side,
                     std::string name = "") {
  std::vector<Point> v{{lo.x, lo.y},
                       {lo.x + side, lo.y},
                       {lo.x + side, lo.y + side},
                       {lo.x, lo.y + side}};
  return {w, std::make_shared<PolygonShape>(std::move(v)), std::move(name)};
}

}  // namespace

TEST_CASE("scene bounding box and tolerance scale") {
  Scene s;
  CHECK(s.bbox().width() == doctest::Approx(1));
  s.regions.push_back(square_region(RegionWeight::Zero, {0, 0}, 2));
  s.regions.push_back(square_region(RegionWeight::Obstacle, {10, 5}, 1));
  const Rect b = s.bbox();
  CHECK(b.xmin == 0);
  CHECK(b.ymin == 0);
  CHECK(b.xmax == 11);
  CHECK(b.ymax == 6);
  CHECK(s.eta() == doctest::Approx(1e-9 * b.diameter()));
  CHECK(s.has_obstacles());
  s.regions.pop_back();
  CHECK(!s.has_obstacles());
  // Tiny scenes keep a usable tolerance floor.
  Scene tiny;
  tiny.regions.push_back(square_region(RegionWeight::Zero, {0, 0}, 1e-6));
  CHECK(tiny.eta() == doctest::Approx(1e-9));
}

TEST_CASE("validation accepts disjoint and touching regions") {
  Scene s;
  s.regions.push_back(square_region(RegionWeight::Zero, {0, 0}, 2));
  s.regions.push_back(square_region(RegionWeight::Obstacle, {5, 0}, 2));
  CHECK_NOTHROW(s.validate());
  // Shared edge.
  s.regions.push_back(square_region(RegionWeight::Zero, {2, 0}, 2));
  CHECK_NOTHROW(s.validate());
  // Shared corner.
  s.regions.push_back(square_region(RegionWeight::Zero, {4, 2}, 1));
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("validation rejects overlapping interiors, naming the pair") {
  Scene s;
  s.regions.push_back(square_region(RegionWeight::Zero, {0, 0}, 2, "left"));
  s.regions.push_back(
      square_region(RegionWeight::Obstacle, {1, 1}, 2, "right"));
  try {
    s.validate();
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("left") != std::string::npos);
    CHECK(msg.find("right") != std::string::npos);
    CHECK(msg.find("overlap") != std::string::npos);
  }
}

TEST_CASE("a flat region crossing an obstacle interior is rejected") {
  Scene s;
  s.regions.push_back(square_region(RegionWeight::Obstacle, {0, 0}, 2));
  // Zero-width region cutting straight through the square.
  const Rect big{-10, -10, 10, 10};
  s.regions.push_back(
      {RegionWeight::Zero,
       std::make_shared<EllipseRectShape>(Point{1, 1}, 0.0, 3.0, 0.0, big),
       "cutter"});
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  // Same segment moved to touch the boundary only: fine.
  s.regions.back().shape =
      std::make_shared<EllipseRectShape>(Point{0, 4}, 0.0, 2.0, 0.0, big);
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("missing or empty shapes are rejected") {
  Scene s;
  s.regions.push_back({RegionWeight::Zero, nullptr, "ghost"});
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.regions.clear();
  s.regions.push_back(
      {RegionWeight::Zero,
       std::make_shared<EllipseRectShape>(Point{0, 0}, 1.0, 1.0, 0.0,
                                          Rect{5, 5, 6, 6}),
       "vanished"});
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
