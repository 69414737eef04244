// Drives the spherecal binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "spheremirror/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("spherecal_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

const Workspace& ws() {
  static Workspace w;
  return w;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs spherecal with the given arguments; stdout goes to `out`.
int run(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string(SPHERECAL_PATH) + " " + args + " > " + out + " 2> " + ws().path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string last_stderr() { return slurp(ws().path("stderr.txt")); }

const std::string& sd1_fixture() {
  static const std::string path = [] {
    const std::string p = ws().path("sd1.json");
    REQUIRE(run("synth --preset sd1 --output " + p) == 0);
    return p;
  }();
  return path;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("fit on a unit-circle fixture") {
  const std::string p = ws().path("circle.json");
  std::ofstream(p) << R"({"format": "spheremirror-annotation", "version": "v1",
      "contour": [[1,0],[0.7071067811865476,0.7071067811865476],[0,1],[-0.7071067811865476,0.7071067811865476],
                  [-1,0],[-0.7071067811865476,-0.7071067811865476],[0,-1],[0.7071067811865476,-0.7071067811865476]]})";
  const std::string out = ws().path("circle_fit.json");
  REQUIRE(run("fit --input " + p, out) == 0);
  const json j = json::parse(slurp(out));
  const double c00 = j["conic"][0][0], c11 = j["conic"][1][1], c22 = j["conic"][2][2];
  CHECK(c00 == doctest::Approx(c11));
  CHECK(c22 == doctest::Approx(-c00));
  CHECK(std::abs(double(j["conic"][0][1])) < 1e-12);
}

TEST_CASE("fit on the synthetic fixture") {
  const std::string out = ws().path("sd1_fit.json");
  REQUIRE(run("fit --input " + sd1_fixture(), out) == 0);
  CHECK(double(json::parse(slurp(out))["residuals"]["rms_px"]) < 1e-9);
}

TEST_CASE("fit with four contour points exits 3") {
  const std::string p = ws().path("four.json");
  std::ofstream(p) << R"({"contour": [[1,0],[0,1],[-1,0],[0,-1]]})";
  CHECK(run("fit --input " + p) == 3);
  CHECK(last_stderr().find("TooFewPoints") != std::string::npos);
}

TEST_CASE("calibrate round-trips the noiseless fixture") {
  for (const std::string method : {"reflection", "pairs", "auto"}) {
    const std::string out = ws().path("calib_" + method + ".json");
    REQUIRE(run("calibrate --input " + sd1_fixture() + " --center-method " + method + " --output " + out) == 0);
    const json j = json::parse(slurp(out));
    CHECK(rel(j["intrinsics"]["f_x"], 1024) < 1e-6);
    CHECK(rel(j["intrinsics"]["f_y"], 1024) < 1e-6);
    CHECK(rel(j["intrinsics"]["t_x"], 1024) < 1e-6);
    CHECK(rel(j["intrinsics"]["t_y"], 1024) < 1e-6);
    CHECK(rel(j["sphere"]["b_x"], 3) < 1e-6);
    CHECK(rel(j["sphere"]["b_y"], -4) < 1e-6);
    CHECK(rel(j["sphere"]["b_z"], 7) < 1e-6);
  }
}

TEST_CASE("calibrate exit codes") {
  auto a = spheremirror::io::parse_annotation(slurp(sd1_fixture()));
  a.pairs.resize(1);
  a.camera_reflection.reset();
  const std::string one_pair = ws().path("one_pair.json");
  spheremirror::io::write_file(one_pair, spheremirror::io::to_json(a));
  CHECK(run("calibrate --input " + one_pair + " --center-method pairs") == 4);
  CHECK(run("calibrate --input " + one_pair + " --center-method reflection") == 4);
  CHECK(run("calibrate --input " + one_pair + " --center-method axial") == 0);

  const std::string bad = ws().path("bad.json");
  std::ofstream(bad) << "{ nope";
  CHECK(run("calibrate --input " + bad) == 2);
  CHECK(run("calibrate --input " + ws().path("missing.json")) == 2);

  // Sphere center on the vertical image axis through the principal point.
  const std::string axis_spec = ws().path("axis_spec.json");
  std::ofstream(axis_spec) << R"({"intrinsics": {"f_x": 1000, "f_y": 1000, "t_x": 500, "t_y": 500},
                                  "sphere": {"b_x": 0, "b_y": 2, "b_z": 6}})";
  const std::string axis_scene = ws().path("axis_scene.json");
  REQUIRE(run("synth --spec " + axis_spec + " --output " + axis_scene) == 0);
  CHECK(run("calibrate --input " + axis_scene) == 5);
  CHECK(last_stderr().find("DegenerateCenterOnImageAxis") != std::string::npos);
}

TEST_CASE("reconstruct measures lengths and reports per-pair status") {
  const std::string calib = ws().path("calib_for_recon.json");
  REQUIRE(run("calibrate --input " + sd1_fixture() + " --output " + calib) == 0);
  const std::string out = ws().path("recon.json");
  REQUIRE(run("reconstruct --input " + sd1_fixture() + " --calibration " + calib + " --radius 5cm", out) == 0);
  const json j = json::parse(slurp(out));
  REQUIRE(j["lengths"].size() == 1);
  CHECK(std::abs(double(j["lengths"][0]["value"]) - 10.0) < 1e-4);
  CHECK(j["lengths"][0]["unit"] == "cm");
  for (const auto& p : j["points"]) CHECK(double(p["gap"]) < 1e-9);

  auto a = spheremirror::io::parse_annotation(slurp(sd1_fixture()));
  a.pairs.push_back({{10, 10}, {20, 20}});
  const std::string with_bad = ws().path("with_bad.json");
  spheremirror::io::write_file(with_bad, spheremirror::io::to_json(a));
  const std::string out2 = ws().path("recon_bad.json");
  CHECK(run("reconstruct --input " + with_bad + " --calibration " + calib + " --radius 5cm", out2) == 5);
  const json j2 = json::parse(slurp(out2));
  REQUIRE(j2["points"].size() == 3);
  CHECK(j2["points"][0]["status"] == "ok");
  CHECK(j2["points"][1]["status"] == "ok");
  CHECK(j2["points"][2]["status"] == "RayMissesSphere");
  CHECK(j2["lengths"].size() == 1);

  const std::string ply = ws().path("recon.ply");
  CHECK(run("reconstruct --input " + sd1_fixture() + " --format ply --output " + ply) == 0);
  CHECK(slurp(ply).find("element vertex 2") != std::string::npos);
}

TEST_CASE("synth determinism and validation") {
  const std::string a = ws().path("s_a.json"), b = ws().path("s_b.json");
  REQUIRE(run("synth --preset sd1 --noise-px 0.5 --seed 9 --quantize --output " + a) == 0);
  REQUIRE(run("synth --preset sd1 --noise-px 0.5 --seed 9 --quantize --output " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string inside = ws().path("inside.json");
  std::ofstream(inside) << R"({"intrinsics": {"f_x": 1000, "f_y": 1000, "t_x": 500, "t_y": 500},
                               "sphere": {"b_x": 0.1, "b_y": 0.2, "b_z": 0.5}})";
  CHECK(run("synth --spec " + inside) == 2);
  CHECK(last_stderr().find("CameraInsideSphere") != std::string::npos);

  // b_z = 1: the contour of this preset is not an ellipse.
  CHECK(run("synth --preset sd2") == 3);
  CHECK(last_stderr().find("NotAnEllipse") != std::string::npos);

  CHECK(run("synth") == 2);
  CHECK(run("frobnicate") == 1);
}
