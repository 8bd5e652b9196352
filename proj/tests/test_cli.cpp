#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "zos/engine.hpp"
#include "zos/scene_io.hpp"

using namespace zos;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path work_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "zos_cli_tests";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Runs the CLI through the shell, capturing exit code, stdout and stderr.
// `env` is prepended verbatim (e.g. "ZOS_LOG=1").
RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::filesystem::path err_path = work_dir() / "stderr.txt";
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string("\"") + ZOS_CLI_PATH + "\" " + args + " 2>" +
         err_path.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err_path);
  return r;
}

// Extracts the value following `key` in line-oriented "key value" output.
double value_of(const std::string& out, const std::string& key) {
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string k;
    double v;
    if (fields >> k >> v && k == key) return v;
  }
  FAIL("missing key '", key, "' in output:\n", out);
  return 0.0;
}

Region zero_box(double x0, double y0, double x1, double y1) {
  return {RegionWeight::Zero,
          std::make_shared<PolygonShape>(
              std::vector<Point>{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}},
              Convexity::Strict),
          ""};
}

Region obstacle_box(double x0, double y0, double x1, double y1) {
  Region r = zero_box(x0, y0, x1, y1);
  r.weight = RegionWeight::Obstacle;
  return r;
}

std::string save_scene(const std::string& name, const SceneDoc& doc) {
  const std::filesystem::path p = work_dir() / name;
  save_scene_file(p.string(), doc);
  return p.string();
}

std::string save_curve(const std::string& name, const std::string& text) {
  const std::filesystem::path p = work_dir() / name;
  write_file(p, text);
  return p.string();
}

}  // namespace

TEST_CASE("build reports an empty structure and writes a stable summary") {
  SceneDoc doc;
  doc.epsilon = 0.5;
  const std::string scene = save_scene("empty.json", doc);
  const std::string out = (work_dir() / "summary.json").string();

  const RunResult r = run_cli("build " + scene + " " + out);
  CHECK(r.code == 0);
  CHECK(r.out.find("0 vertices, 0 edges") != std::string::npos);

  const std::string first = read_file(out);
  const auto j = nlohmann::json::parse(first);
  CHECK(j.at("vertices") == 0);
  CHECK(j.at("edges") == 0);
  CHECK(j.at("epsilon") == 0.5);
  CHECK(j.at("m") == 20);

  // Rebuilding the same scene must reproduce the summary byte for byte.
  const RunResult again = run_cli("build " + scene + " " + out);
  CHECK(again.code == 0);
  CHECK(read_file(out) == first);
}

TEST_CASE("build summary matches a library build of the same scene") {
  SceneDoc doc;
  doc.epsilon = 0.5;
  doc.scene.regions.push_back(zero_box(0, 0, 1, 1));
  doc.scene.regions.push_back(zero_box(2, 0, 3, 1));
  const std::string scene = save_scene("two_squares.json", doc);
  const std::string out = (work_dir() / "two_squares_summary.json").string();

  const RunResult r = run_cli("build " + scene + " " + out);
  REQUIRE(r.code == 0);

  const StructureB b = StructureB::build(doc.scene, doc.epsilon);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j.at("vertices") == b.vertices().size());
  CHECK(j.at("edges") == b.edges().size());
  CHECK(j.at("maps") == b.maps().size());
  CHECK(j.at("theta") == b.directions().theta);
  CHECK(j.at("vertices").get<size_t>() > 0);

  int theta_edges = 0;
  for (const GraphEdge& e : b.edges())
    if (e.kind == EdgeKind::Theta) ++theta_edges;
  CHECK(j.at("edge_kinds").at("theta") == theta_edges);
}

TEST_CASE("query prints a result document and draws the path") {
  SceneDoc doc;
  doc.epsilon = 0.5;
  const std::string scene = save_scene("plane.json", doc);

  const RunResult r = run_cli("query " + scene + " 0 0 3 4");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("realized_weight").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("graph_weight").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("path").size() == 1);
  CHECK(j.at("path")[0].at("medium") == "plane");

  const RunResult same = run_cli("query " + scene + " 1 2 1 2");
  REQUIRE(same.code == 0);
  const auto js = nlohmann::json::parse(same.out);
  CHECK(js.at("realized_weight").get<double>() == doctest::Approx(0.0));

  const std::string svg = (work_dir() / "path.svg").string();
  SceneDoc mixed;
  mixed.epsilon = 0.5;
  mixed.scene.regions.push_back(zero_box(0, 0, 1, 1));
  mixed.scene.regions.push_back(obstacle_box(3, 0, 4, 1));
  const std::string mixed_path = save_scene("mixed.json", mixed);
  const RunResult drawn =
      run_cli("query " + mixed_path + " -1 0.5 6 0.5 --svg " + svg);
  REQUIRE(drawn.code == 0);
  const std::string art = read_file(svg);
  CHECK(art.rfind("<svg", 0) == 0);
  CHECK(art.find("polygon") != std::string::npos);
  CHECK(art.find("polyline") != std::string::npos);

  // An endpoint strictly inside an obstacle is invalid input.
  const RunResult inside = run_cli("query " + mixed_path + " 3.5 0.5 6 0.5");
  CHECK(inside.code == 2);
  CHECK(inside.err.find("error:") != std::string::npos);
  CHECK(inside.out.empty());
}

TEST_CASE("query stays within the approximation bound of the exact solver") {
  SceneDoc doc;
  doc.epsilon = 0.5;
  doc.scene.regions.push_back(zero_box(0, 0, 1, 1));
  doc.scene.regions.push_back(zero_box(2, 0, 3, 1));
  const std::string scene = save_scene("bound.json", doc);
  const std::string endpoints = " -1 0.5 4 0.5";

  const RunResult oracle = run_cli("oracle " + scene + endpoints);
  REQUIRE(oracle.code == 0);
  const double exact = value_of(oracle.out, "oracle_value");

  const RunResult query = run_cli("query " + scene + endpoints);
  REQUIRE(query.code == 0);
  const double realized =
      nlohmann::json::parse(query.out).at("realized_weight").get<double>();

  CHECK(realized >= exact - 1e-9);
  CHECK(realized <= 1.5 * exact + 1e-9);
}

TEST_CASE("frechet subcommand reports the mismatched-length value") {
  const std::string a = save_curve("a.txt", "0 0\n1 0\n");
  const std::string b = save_curve("b.txt", "0 1\n1 1\n");

  // Identical curves match exactly at any positive leash.
  const RunResult same = run_cli("frechet " + a + " " + a + " 0.1");
  REQUIRE(same.code == 0);
  CHECK(value_of(same.out, "minex_value") <= 1e-9);

  // Parallel unit segments at distance 1: leash 0.5 leaves everything
  // unmatched, leash 1.0 matches the full diagonal.
  const RunResult tight = run_cli("frechet " + a + " " + b + " 0.5");
  REQUIRE(tight.code == 0);
  CHECK(value_of(tight.out, "minex_value") ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(value_of(tight.out, "matched_measure") == doctest::Approx(0.0));

  const RunResult loose = run_cli("frechet " + a + " " + b + " 1.0");
  REQUIRE(loose.code == 0);
  CHECK(value_of(loose.out, "minex_value") <= 1e-9);
  CHECK(value_of(loose.out, "cells_nonempty") == doctest::Approx(1.0));

  double prev = std::numeric_limits<double>::infinity();
  for (const char* d : {"0.25", "0.5", "0.75", "1.0"}) {
    const RunResult r = run_cli("frechet " + a + " " + b + " " + d);
    REQUIRE(r.code == 0);
    const double v = value_of(r.out, "minex_value");
    CHECK(v <= prev + 1e-9);
    prev = v;
  }

  const std::string bad = save_curve("bad.txt", "0 0\none two\n");
  const RunResult malformed = run_cli("frechet " + a + " " + bad + " 1.0");
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("curve line 2") != std::string::npos);
}

TEST_CASE("oracle subcommand enforces solver contracts") {
  SceneDoc doc;
  doc.epsilon = 0.5;
  doc.scene.regions.push_back(obstacle_box(1, -1, 2, 1));
  const std::string scene = save_scene("obstacle.json", doc);

  // The exact solver only handles 0-region scenes.
  const RunResult exact = run_cli("oracle " + scene + " 0 0 3 0");
  CHECK(exact.code == 2);
  CHECK(exact.err.find("obstacle") != std::string::npos);

  const RunResult dense =
      run_cli("oracle " + scene + " 0 0 3 0 --method dense --K 80");
  REQUIRE(dense.code == 0);
  const double value = value_of(dense.out, "oracle_value");
  const double err = value_of(dense.out, "error_bound");
  CHECK(value >= 3.0);       // detour around the obstacle
  CHECK(value <= 3.0 + 3.0); // crude sanity cap
  CHECK(err >= 0.0);

  const RunResult unknown =
      run_cli("oracle " + scene + " 0 0 3 0 --method guess");
  CHECK(unknown.code == 2);
}

TEST_CASE("logging goes to stderr only when enabled") {
  SceneDoc doc;
  doc.epsilon = 0.5;
  const std::string scene = save_scene("log.json", doc);
  const std::string out = (work_dir() / "log_summary.json").string();

  const RunResult loud = run_cli("build " + scene + " " + out, "ZOS_LOG=1");
  CHECK(loud.code == 0);
  CHECK(loud.err.find("[zos]") != std::string::npos);
  CHECK(loud.out.find("0 vertices") != std::string::npos);

  const RunResult quiet = run_cli("build " + scene + " " + out, "ZOS_LOG=");
  CHECK(quiet.code == 0);
  CHECK(quiet.err.empty());
}
