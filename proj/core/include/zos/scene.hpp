#pragma once
// Scene model: a unit-weight plane containing convex weight-0 regions and
// convex obstacles.  Region interiors must be pairwise disjoint; touching
// boundaries are allowed.

#include <memory>
#include <string>
#include <vector>

#include "zos/geom.hpp"

namespace zos {

enum class RegionWeight { Zero, Obstacle };

struct Region {
  RegionWeight weight = RegionWeight::Zero;
  std::shared_ptr<const ConvexShape> shape;
  std::string name;  // optional label surfaced in diagnostics
};

struct Scene {
  std::vector<Region> regions;

  // Hull of all region bounds; the unit square when the scene is empty.
  Rect bbox() const;

  // Geometric tolerance used throughout: 1e-9 of the scene diameter
  // (floored so tiny scenes still get a usable epsilon).
  double eta() const;

  bool has_obstacles() const;

  // Throws std::invalid_argument naming the offending region(s) when a shape
  // is missing/empty or two region interiors overlap by more than eta().
  void validate() const;
};

}  // namespace zos
