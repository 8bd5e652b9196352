#include "zos/scene.hpp"

#include <stdexcept>
#include <string>

namespace zos {

namespace {

std::string region_label(const Region& r, size_t idx) {
  if (!r.name.empty()) return "'" + r.name + "'";
  return "#" + std::to_string(idx);
}

}  // namespace

Rect Scene::bbox() const {
  if (regions.empty()) return {0, 0, 1, 1};
  Rect box = regions.front().shape ? regions.front().shape->bounds()
                                   : Rect{0, 0, 1, 1};
  for (const Region& r : regions)
    if (r.shape) box = Rect::hull(box, r.shape->bounds());
  return box;
}

double Scene::eta() const {
  return 1e-9 * std::max(bbox().diameter(), 1.0);
}

bool Scene::has_obstacles() const {
  for (const Region& r : regions)
    if (r.weight == RegionWeight::Obstacle) return true;
  return false;
}

void Scene::validate() const {
  const double tol = eta();
  for (size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    if (!r.shape)
      throw std::invalid_argument("region " + region_label(r, i) +
                                  " has no shape");
    if (const auto* er = dynamic_cast<const EllipseRectShape*>(r.shape.get()))
      if (er->empty())
        throw std::invalid_argument("region " + region_label(r, i) +
                                    " is empty");
  }
  for (size_t i = 0; i < regions.size(); ++i) {
    for (size_t j = i + 1; j < regions.size(); ++j) {
      try {
        shape_distance(*regions[i].shape, *regions[j].shape, tol);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument(
            "regions " + region_label(regions[i], i) + " and " +
            region_label(regions[j], j) + " have overlapping interiors");
      }
    }
  }
}

}  // namespace zos
