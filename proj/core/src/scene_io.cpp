#include "zos/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace zos {

namespace {

using ordered_json = nlohmann::ordered_json;

// Doubles round-trip as numbers; infinite slab axes have no JSON number, so
// they travel as the string "inf".
ordered_json num_out(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double num_in(const ordered_json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument(where + ": expected a number");
}

std::string region_tag(const ordered_json& region, size_t idx) {
  if (region.is_object() && region.contains("name") &&
      region["name"].is_string())
    return "region '" + region["name"].get<std::string>() + "'";
  return "region #" + std::to_string(idx);
}

Region parse_region(const ordered_json& jr, size_t idx) {
  const std::string tag = region_tag(jr, idx);
  if (!jr.is_object() || !jr.contains("weight") || !jr.contains("shape"))
    throw std::invalid_argument(tag + ": needs 'weight' and 'shape'");

  Region out;
  const std::string weight = jr["weight"].get<std::string>();
  if (weight == "zero")
    out.weight = RegionWeight::Zero;
  else if (weight == "obstacle")
    out.weight = RegionWeight::Obstacle;
  else
    throw std::invalid_argument(tag + ": unknown weight '" + weight + "'");
  if (jr.contains("name")) out.name = jr["name"].get<std::string>();

  const ordered_json& shape = jr["shape"];
  if (shape.contains("polygon")) {
    std::vector<Point> pts;
    for (const auto& jp : shape["polygon"]) {
      if (!jp.is_array() || jp.size() != 2)
        throw std::invalid_argument(tag + ": polygon vertices are [x, y]");
      pts.push_back({num_in(jp[0], tag), num_in(jp[1], tag)});
    }
    if (pts.size() < 3)
      throw std::invalid_argument(tag + ": polygon needs >= 3 vertices");
    try {
      out.shape = std::make_shared<PolygonShape>(std::move(pts));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(tag + ": " + e.what());
    }
  } else if (shape.contains("ellipse_rect")) {
    const ordered_json& je = shape["ellipse_rect"];
    auto field = [&](const char* key) {
      if (!je.contains(key))
        throw std::invalid_argument(tag + ": ellipse_rect misses '" +
                                    std::string(key) + "'");
      return num_in(je[key], tag);
    };
    const Point center{field("cx"), field("cy")};
    const double rx = field("rx"), ry = field("ry"), rot = field("rot");
    const Rect clip{field("xmin"), field("ymin"), field("xmax"),
                    field("ymax")};
    auto er = std::make_shared<EllipseRectShape>(center, rx, ry, rot, clip);
    if (er->empty())
      throw std::invalid_argument(tag + ": ellipse_rect is empty");
    out.shape = std::move(er);
  } else {
    throw std::invalid_argument(tag +
                                ": shape needs 'polygon' or 'ellipse_rect'");
  }
  return out;
}

ordered_json emit_region(const Region& r) {
  ordered_json jr;
  jr["weight"] = r.weight == RegionWeight::Zero ? "zero" : "obstacle";
  if (!r.name.empty()) jr["name"] = r.name;
  if (const auto* poly = dynamic_cast<const PolygonShape*>(r.shape.get())) {
    ordered_json pts = ordered_json::array();
    for (const Point& p : poly->vertices())
      pts.push_back(ordered_json::array({p.x, p.y}));
    jr["shape"] = ordered_json{{"polygon", std::move(pts)}};
  } else if (const auto* er =
                 dynamic_cast<const EllipseRectShape*>(r.shape.get())) {
    ordered_json je;
    je["cx"] = num_out(er->center().x);
    je["cy"] = num_out(er->center().y);
    je["rx"] = num_out(er->radius_x());
    je["ry"] = num_out(er->radius_y());
    je["rot"] = num_out(er->rotation());
    const Rect clip = er->clip();
    je["xmin"] = num_out(clip.xmin);
    je["xmax"] = num_out(clip.xmax);
    je["ymin"] = num_out(clip.ymin);
    je["ymax"] = num_out(clip.ymax);
    jr["shape"] = ordered_json{{"ellipse_rect", std::move(je)}};
  } else {
    throw std::invalid_argument("region '" + r.name +
                                "' has an unserializable shape");
  }
  return jr;
}

const char* medium_name(Medium m) {
  switch (m) {
    case Medium::Plane:
      return "plane";
    case Medium::ZeroRegion:
      return "zero-region";
    case Medium::ObstacleBoundary:
      return "obstacle-boundary";
  }
  return "plane";
}

const char* kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Anchor:
      return "anchor";
    case EdgeKind::TrapAdjacency:
      return "trap-adjacency";
    case EdgeKind::TrapWall:
      return "trap-wall";
    case EdgeKind::Theta:
      return "theta";
    case EdgeKind::Boundary:
      return "boundary";
    case EdgeKind::Query:
      return "query";
  }
  return "theta";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

SceneDoc parse_scene_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scene file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version"))
    throw std::invalid_argument("scene file: missing 'version'");
  SceneDoc out;
  out.version = doc["version"].get<int>();
  if (out.version != kSceneFormatVersion)
    throw std::invalid_argument("scene file: unsupported version " +
                                std::to_string(out.version));
  if (doc.contains("epsilon")) {
    out.epsilon = num_in(doc["epsilon"], "epsilon");
    if (!(out.epsilon > 0.0 && out.epsilon < 1.0))
      throw std::invalid_argument("scene file: epsilon must be in (0, 1)");
  }
  if (doc.contains("regions")) {
    size_t idx = 0;
    for (const auto& jr : doc["regions"])
      out.scene.regions.push_back(parse_region(jr, idx++));
  }
  return out;
}

std::string emit_scene_text(const SceneDoc& doc) {
  ordered_json j;
  j["version"] = doc.version;
  j["epsilon"] = doc.epsilon;
  j["regions"] = ordered_json::array();
  for (const Region& r : doc.scene.regions)
    j["regions"].push_back(emit_region(r));
  return j.dump(2) + "\n";
}

SceneDoc load_scene_file(const std::string& path) {
  try {
    return parse_scene_text(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_scene_file(const std::string& path, const SceneDoc& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << emit_scene_text(doc);
}

PolyCurve parse_curve_text(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream fields(line);
    double x, y;
    std::string rest;
    if (!(fields >> x >> y) || (fields >> rest)) {
      throw std::invalid_argument("curve line " + std::to_string(lineno) +
                                  ": expected 'x y'");
    }
    pts.push_back({x, y});
  }
  try {
    return PolyCurve(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("curve file: ") + e.what());
  }
}

PolyCurve load_curve_file(const std::string& path) {
  try {
    return parse_curve_text(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string emit_result_text(const StructureB& structure, Point s, Point t,
                             const WeightedPath& path) {
  ordered_json j;
  j["version"] = kSceneFormatVersion;
  j["query"] = {{"s", {s.x, s.y}}, {"t", {t.x, t.y}}};
  j["epsilon"] = structure.epsilon();
  j["theta"] = structure.directions().theta;
  j["graph_weight"] = path.graph_weight;
  j["realized_weight"] = path.realized_weight;

  ordered_json segs = ordered_json::array();
  for (const PathSegment& seg : path.segments) {
    ordered_json js;
    js["medium"] = medium_name(seg.medium);
    if (seg.region >= 0) js["region"] = seg.region;
    js["cost"] = seg.cost;
    ordered_json pts = ordered_json::array();
    for (const Point& p : seg.geometry)
      pts.push_back(ordered_json::array({p.x, p.y}));
    js["points"] = std::move(pts);
    segs.push_back(std::move(js));
  }
  j["path"] = std::move(segs);

  ordered_json kinds;
  for (EdgeKind k :
       {EdgeKind::Anchor, EdgeKind::TrapAdjacency, EdgeKind::TrapWall,
        EdgeKind::Theta, EdgeKind::Boundary, EdgeKind::Query}) {
    int count = 0;
    for (const GraphEdge& e : structure.edges())
      if (e.kind == k) ++count;
    kinds[kind_name(k)] = count;
  }
  j["build"] = {{"vertices", structure.vertices().size()},
                {"edges", structure.edges().size()},
                {"maps", structure.maps().size()},
                {"edge_kinds", std::move(kinds)}};
  return j.dump(2) + "\n";
}

}  // namespace zos
