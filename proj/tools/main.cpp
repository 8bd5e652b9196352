#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "svg_writer.hpp"
#include "zos/engine.hpp"
#include "zos/frechet.hpp"
#include "zos/oracle.hpp"
#include "zos/scene_io.hpp"

namespace {

// Exit contract: 0 success, 2 invalid input (scene, curve, endpoint, flag),
// 3 internal failure, 4 no path between the endpoints.
constexpr int kOk = 0;
constexpr int kInvalidInput = 2;
constexpr int kInternal = 3;
constexpr int kNoPath = 4;

bool log_enabled() {
  const char* v = std::getenv("ZOS_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[zos] " << msg << "\n";
}

std::string edge_kind_label(zos::EdgeKind k) {
  using zos::EdgeKind;
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

int run_build(const std::string& scene_path, const std::string& out_path,
              int seed, std::optional<double> epsilon) {
  const zos::SceneDoc doc = zos::load_scene_file(scene_path);
  doc.scene.validate();
  const double eps = epsilon.value_or(doc.epsilon);
  log_line("building structure, epsilon " + std::to_string(eps));
  const zos::StructureB b = zos::StructureB::build(doc.scene, eps);

  nlohmann::ordered_json j;
  j["version"] = zos::kSceneFormatVersion;
  j["seed"] = seed;
  j["epsilon"] = b.epsilon();
  j["theta"] = b.directions().theta;
  j["m"] = b.directions().m;
  j["vertices"] = b.vertices().size();
  j["edges"] = b.edges().size();
  j["maps"] = b.maps().size();
  nlohmann::ordered_json kinds;
  for (zos::EdgeKind k :
       {zos::EdgeKind::Anchor, zos::EdgeKind::TrapAdjacency,
        zos::EdgeKind::TrapWall, zos::EdgeKind::Theta, zos::EdgeKind::Boundary,
        zos::EdgeKind::Query}) {
    int count = 0;
    for (const zos::GraphEdge& e : b.edges())
      if (e.kind == k) ++count;
    kinds[edge_kind_label(k)] = count;
  }
  j["edge_kinds"] = std::move(kinds);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";

  std::cout << b.vertices().size() << " vertices, " << b.edges().size()
            << " edges, theta " << b.directions().theta << ", m "
            << b.directions().m << "\n";
  return kOk;
}

int run_query(const std::string& scene_path, double sx, double sy, double tx,
              double ty, std::optional<double> epsilon,
              const std::string& svg_path) {
  const zos::SceneDoc doc = zos::load_scene_file(scene_path);
  doc.scene.validate();
  const double eps = epsilon.value_or(doc.epsilon);
  const zos::StructureB b = zos::StructureB::build(doc.scene, eps);
  const zos::Point s{sx, sy}, t{tx, ty};
  log_line("querying (" + std::to_string(sx) + ", " + std::to_string(sy) +
           ") -> (" + std::to_string(tx) + ", " + std::to_string(ty) + ")");
  const std::optional<zos::WeightedPath> path = b.query(s, t);
  if (!path) {
    std::cerr << "no path between the query endpoints\n";
    return kNoPath;
  }
  std::cout << zos::emit_result_text(b, s, t, *path);
  if (!svg_path.empty()) {
    zos::tools::write_svg_file(
        svg_path, zos::tools::scene_svg(b.scene(), &b, &*path, s, t));
    log_line("wrote " + svg_path);
  }
  return kOk;
}

int run_frechet(const std::string& curve_a, const std::string& curve_b,
                double d, double epsilon) {
  const zos::PolyCurve pi = zos::load_curve_file(curve_a);
  const zos::PolyCurve sigma = zos::load_curve_file(curve_b);
  if (d < 0.0) throw std::invalid_argument("leash length must be >= 0");
  const zos::MinExResult res = zos::minex(pi, sigma, d, epsilon);
  std::cout << "minex_value " << res.minex_value << "\n"
            << "matched_measure " << res.matched_measure << "\n"
            << "cells_total " << res.cells_total << "\n"
            << "cells_nonempty " << res.cells_nonempty << "\n";
  return kOk;
}

int run_oracle(const std::string& scene_path, double sx, double sy, double tx,
               double ty, const std::string& method, int samples) {
  const zos::SceneDoc doc = zos::load_scene_file(scene_path);
  doc.scene.validate();
  const zos::Point s{sx, sy}, t{tx, ty};
  zos::OracleReport rep;
  if (method == "exact") {
    rep = zos::exact_zero_region_sp(doc.scene, s, t);
  } else if (method == "dense") {
    rep = zos::dense_obstacle_sp(doc.scene, s, t, samples);
  } else {
    throw std::invalid_argument("unknown oracle method '" + method + "'");
  }
  std::cout << "oracle_value " << rep.oracle_value << "\n"
            << "error_bound " << rep.error_bound << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  // Stdout is machine-readable; print doubles at round-trip precision.
  std::cout.precision(std::numeric_limits<double>::max_digits10);

  CLI::App app{"Weighted shortest paths among convex 0-regions and obstacles"};
  app.require_subcommand(1);

  std::string scene_path, out_path, svg_path, curve_a, curve_b;
  std::string method = "exact";
  double sx = 0, sy = 0, tx = 0, ty = 0, leash = 0, frechet_eps = 0.25;
  std::optional<double> epsilon;
  int seed = 0, samples = 100;

  CLI::App* build = app.add_subcommand("build", "Build a structure summary");
  build->add_option("scene", scene_path, "scene file")->required();
  build->add_option("out", out_path, "summary output file")->required();
  build->add_option("--seed", seed, "recorded build seed");
  build->add_option("--epsilon", epsilon, "override the scene file epsilon");

  CLI::App* query = app.add_subcommand("query", "Approximate weighted path");
  query->add_option("scene", scene_path, "scene file")->required();
  query->add_option("sx", sx)->required();
  query->add_option("sy", sy)->required();
  query->add_option("tx", tx)->required();
  query->add_option("ty", ty)->required();
  query->add_option("--epsilon", epsilon, "override the scene file epsilon");
  query->add_option("--svg", svg_path, "write an SVG rendering");

  CLI::App* frechet = app.add_subcommand("frechet", "Curve similarity");
  frechet->add_option("curve_a", curve_a, "first curve file")->required();
  frechet->add_option("curve_b", curve_b, "second curve file")->required();
  frechet->add_option("d", leash, "leash length")->required();
  frechet->add_option("--epsilon", frechet_eps, "approximation accuracy");

  CLI::App* oracle = app.add_subcommand("oracle", "Reference solvers");
  oracle->add_option("scene", scene_path, "scene file")->required();
  oracle->add_option("sx", sx)->required();
  oracle->add_option("sy", sy)->required();
  oracle->add_option("tx", tx)->required();
  oracle->add_option("ty", ty)->required();
  oracle->add_option("--method", method, "exact|dense");
  oracle->add_option("--K", samples, "samples per region (dense)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (*build) return run_build(scene_path, out_path, seed, epsilon);
    if (*query) return run_query(scene_path, sx, sy, tx, ty, epsilon, svg_path);
    if (*frechet) return run_frechet(curve_a, curve_b, leash, frechet_eps);
    if (*oracle) return run_oracle(scene_path, sx, sy, tx, ty, method, samples);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
