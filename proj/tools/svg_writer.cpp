#include "svg_writer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zos::tools {

namespace {

const char* medium_color(Medium m) {
  switch (m) {
    case Medium::Plane:
      return "#1f5fd0";
    case Medium::ZeroRegion:
      return "#1d9a3c";
    case Medium::ObstacleBoundary:
      return "#e07818";
  }
  return "#1f5fd0";
}

}  // namespace

std::string scene_svg(const Scene& scene, const StructureB* structure,
                      const WeightedPath* path, Point s, Point t) {
  Rect box = scene.bbox();
  box = Rect::hull(box, {std::min(s.x, t.x), std::min(s.y, t.y),
                         std::max(s.x, t.x), std::max(s.y, t.y)});
  box = box.expanded(1.1);
  const double diam = std::max(box.diameter(), 1e-9);
  // SVG y grows downward; mirror within the box instead of a transform so
  // the emitted coordinates stay human-checkable.
  auto fy = [&](double y) { return box.ymax + box.ymin - y; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << box.xmin
      << " " << box.ymin << " " << box.width() << " " << box.height()
      << "\">\n";
  out << "  <rect x=\"" << box.xmin << "\" y=\"" << box.ymin << "\" width=\""
      << box.width() << "\" height=\"" << box.height()
      << "\" fill=\"#fbfbf8\"/>\n";

  for (const Region& r : scene.regions) {
    const bool zero = r.weight == RegionWeight::Zero;
    out << "  <polygon points=\"";
    for (const Point& p : r.shape->boundary_polyline())
      out << p.x << "," << fy(p.y) << " ";
    out << "\" fill=\"" << (zero ? "#d7ecd9" : "#4a4a52") << "\" stroke=\""
        << (zero ? "#5d9b66" : "#202026") << "\" stroke-width=\""
        << 0.002 * diam << "\"/>\n";
  }

  if (structure) {
    for (const SamplePoint& v : structure->vertices())
      out << "  <circle cx=\"" << v.location.x << "\" cy=\""
          << fy(v.location.y) << "\" r=\"" << 0.004 * diam
          << "\" fill=\"#8a6dbe\"/>\n";
  }

  if (path) {
    for (const PathSegment& seg : path->segments) {
      if (seg.geometry.size() < 2) continue;
      out << "  <polyline points=\"";
      for (const Point& p : seg.geometry) out << p.x << "," << fy(p.y) << " ";
      out << "\" fill=\"none\" stroke=\"" << medium_color(seg.medium)
          << "\" stroke-width=\"" << 0.006 * diam << "\"/>\n";
    }
  }

  for (const Point& q : {s, t})
    out << "  <circle cx=\"" << q.x << "\" cy=\"" << fy(q.y) << "\" r=\""
        << 0.01 * diam << "\" fill=\"#c03232\"/>\n";
  out << "</svg>\n";
  return out.str();
}

void write_svg_file(const std::string& path, const std::string& svg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << svg;
}

}  // namespace zos::tools
