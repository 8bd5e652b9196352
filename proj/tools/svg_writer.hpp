#pragma once
// Write-only SVG snapshots: regions (0-regions light, obstacles dark),
// structure sample points, query endpoints, and the realized path colored by
// medium.

#include <string>

#include "zos/engine.hpp"
#include "zos/scene.hpp"

namespace zos::tools {

// `structure` and `path` may be null to draw the scene alone.
std::string scene_svg(const Scene& scene, const StructureB* structure,
                      const WeightedPath* path, Point s, Point t);

void write_svg_file(const std::string& path, const std::string& svg);

}  // namespace zos::tools
