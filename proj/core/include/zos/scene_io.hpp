#pragma once
// Structured-text (JSON) serialization: scene files, query result files, and
// plain-text curve files.  Field order is stable, every document carries an
// explicit version tag, and parse errors name the offending line or region.
// Emitting and re-parsing a document reproduces it exactly (doubles use
// shortest-round-trip form; infinite slab axes are written as the string
// "inf").

#include <string>

#include "zos/engine.hpp"
#include "zos/frechet.hpp"
#include "zos/scene.hpp"

namespace zos {

inline constexpr int kSceneFormatVersion = 1;

// A scene plus the build accuracy recorded alongside it.  `epsilon` is the
// file-level default; command-line flags may override it.
struct SceneDoc {
  int version = kSceneFormatVersion;
  double epsilon = 0.25;
  Scene scene;
};

// Throws std::invalid_argument with a line-level or region-naming diagnostic
// on malformed input, unknown versions, non-convex polygons, or empty
// shapes.  parse does not run Scene::validate (callers decide when to pay
// for the pairwise overlap scan).
SceneDoc parse_scene_text(const std::string& text);
std::string emit_scene_text(const SceneDoc& doc);

// File wrappers; errors carry the path.
SceneDoc load_scene_file(const std::string& path);
void save_scene_file(const std::string& path, const SceneDoc& doc);

// Curve files: one "x y" pair per line, blank lines and '#' comments
// ignored; at least two points.
PolyCurve parse_curve_text(const std::string& text);
PolyCurve load_curve_file(const std::string& path);

// Result document for one query against a built structure: endpoints, both
// weights, the realized segments with their medium tags, and the build's
// statistics (vertex/edge totals, per-kind edge counts, map count).
std::string emit_result_text(const StructureB& structure, Point s, Point t,
                             const WeightedPath& path);

}  // namespace zos
