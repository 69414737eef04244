#include "spheremirror/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "spheremirror/error.hpp"

namespace spheremirror::io {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "v1";
constexpr const char* kAnnotationFormat = "spheremirror-annotation";
constexpr const char* kResultFormat = "spheremirror-result";
constexpr const char* kSceneFormat = "spheremirror-scene";

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

double finite_number(const Json& j, const std::string& field) {
  if (!j.is_number()) fail("field '" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail("field '" + field + "' must be finite");
  return v;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing field '" + key + "'");
  return j.at(key);
}

Json point_json(const ImagePoint& p) { return Json::array({p.x, p.y}); }
Json vec_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

ImagePoint point_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail("field '" + field + "' must be [x, y]");
  return {finite_number(j[0], field + "[0]"), finite_number(j[1], field + "[1]")};
}

Eigen::Vector3d vec_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail("field '" + field + "' must be [x, y, z]");
  return {finite_number(j[0], field + "[0]"), finite_number(j[1], field + "[1]"), finite_number(j[2], field + "[2]")};
}

void check_header(const Json& j, const char* format) {
  if (!j.is_object()) fail("top level must be a JSON object");
  if (j.contains("format") && j["format"] != format)
    fail(std::string("expected format '") + format + "', got " + j["format"].dump());
  if (j.contains("version") && j["version"] != kVersion)
    fail("unsupported schema version " + j["version"].dump());
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

Json intrinsics_json(const Intrinsics& k) {
  return {{"f_x", k.f_x}, {"f_y", k.f_y}, {"t_x", k.t_x}, {"t_y", k.t_y}};
}
Intrinsics intrinsics_from(const Json& j) {
  return {finite_number(member(j, "f_x", "intrinsics"), "intrinsics.f_x"),
          finite_number(member(j, "f_y", "intrinsics"), "intrinsics.f_y"),
          finite_number(member(j, "t_x", "intrinsics"), "intrinsics.t_x"),
          finite_number(member(j, "t_y", "intrinsics"), "intrinsics.t_y")};
}
Json sphere_json(const SphereCenter& b) { return {{"b_x", b.b_x}, {"b_y", b.b_y}, {"b_z", b.b_z}}; }
SphereCenter sphere_from(const Json& j) {
  return {finite_number(member(j, "b_x", "sphere"), "sphere.b_x"),
          finite_number(member(j, "b_y", "sphere"), "sphere.b_y"),
          finite_number(member(j, "b_z", "sphere"), "sphere.b_z")};
}

Json image_size_json(const std::pair<int, int>& s) { return Json::array({s.first, s.second}); }
std::pair<int, int> image_size_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail("field 'image_size' must be [width, height]");
  return {j[0].get<int>(), j[1].get<int>()};
}

Json scene_json(const SceneSpec& s) {
  Json j;
  j["intrinsics"] = intrinsics_json(s.intrinsics);
  j["sphere"] = sphere_json(s.sphere);
  Json pts = Json::array();
  for (const auto& v : s.world_points) pts.push_back(vec_json(v));
  j["world_points"] = pts;
  j["contour_samples"] = s.contour_samples;
  j["noise_px"] = s.noise_px;
  j["quantize"] = s.quantize;
  j["seed"] = s.rng_seed;
  if (s.image_size) j["image_size"] = image_size_json(*s.image_size);
  return j;
}

SceneSpec scene_from(const Json& j) {
  SceneSpec s;
  s.intrinsics = intrinsics_from(member(j, "intrinsics", "scene"));
  s.sphere = sphere_from(member(j, "sphere", "scene"));
  if (j.contains("world_points")) {
    const Json& pts = j["world_points"];
    if (!pts.is_array()) fail("field 'world_points' must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i)
      s.world_points.push_back(vec_from(pts[i], "world_points[" + std::to_string(i) + "]"));
  }
  if (j.contains("contour_samples")) {
    if (!j["contour_samples"].is_number_integer()) fail("field 'contour_samples' must be an integer");
    s.contour_samples = j["contour_samples"].get<int>();
  }
  if (j.contains("noise_px")) s.noise_px = finite_number(j["noise_px"], "noise_px");
  if (j.contains("quantize")) {
    if (!j["quantize"].is_boolean()) fail("field 'quantize' must be a boolean");
    s.quantize = j["quantize"].get<bool>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) fail("field 'seed' must be an integer");
    s.rng_seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("image_size")) s.image_size = image_size_from(j["image_size"]);
  return s;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(std::string("invalid document: ") + e.what());
  }
}

}  // namespace

AnnotationFile annotation_from_scene(const SceneAnnotation& scene) {
  AnnotationFile a;
  a.image_size = scene.truth.image_size;
  a.contour = scene.contour;
  a.camera_reflection = scene.camera_reflection;
  a.pairs = scene.pairs;
  a.truth = scene.truth;
  return a;
}

std::string to_json(const AnnotationFile& a) {
  Json j;
  j["format"] = kAnnotationFormat;
  j["version"] = kVersion;
  if (a.image_size) j["image_size"] = image_size_json(*a.image_size);
  Json contour = Json::array();
  for (const auto& p : a.contour) contour.push_back(point_json(p));
  j["contour"] = contour;
  if (a.camera_reflection) j["camera_reflection"] = point_json(*a.camera_reflection);
  Json pairs = Json::array();
  for (const auto& p : a.pairs) pairs.push_back({{"direct", point_json(p.direct)}, {"mirrored", point_json(p.mirrored)}});
  j["pairs"] = pairs;
  if (a.radius) j["radius"] = {{"value", a.radius->value}, {"unit", a.radius->unit}};
  if (a.truth) j["truth"] = scene_json(*a.truth);
  return j.dump(2) + "\n";
}

AnnotationFile parse_annotation(const std::string& text) {
  const Json j = parse_text(text);
  return guarded([&] {
    check_header(j, kAnnotationFormat);
    AnnotationFile a;
    if (j.contains("image_size")) a.image_size = image_size_from(j["image_size"]);
    if (j.contains("contour")) {
      const Json& c = j["contour"];
      if (!c.is_array()) fail("field 'contour' must be an array");
      for (std::size_t i = 0; i < c.size(); ++i) a.contour.push_back(point_from(c[i], "contour[" + std::to_string(i) + "]"));
    }
    if (j.contains("camera_reflection") && !j["camera_reflection"].is_null())
      a.camera_reflection = point_from(j["camera_reflection"], "camera_reflection");
    if (j.contains("pairs")) {
      const Json& ps = j["pairs"];
      if (!ps.is_array()) fail("field 'pairs' must be an array");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string where = "pairs[" + std::to_string(i) + "]";
        a.pairs.push_back({point_from(member(ps[i], "direct", where), where + ".direct"),
                           point_from(member(ps[i], "mirrored", where), where + ".mirrored")});
      }
    }
    if (j.contains("radius") && !j["radius"].is_null()) {
      const Json& r = j["radius"];
      const double value = finite_number(member(r, "value", "radius"), "radius.value");
      if (!(value > 0.0)) fail("field 'radius.value' must be positive");
      const Json& unit = member(r, "unit", "radius");
      if (!unit.is_string()) fail("field 'radius.unit' must be a string");
      a.radius = Length{value, unit.get<std::string>()};
    }
    if (j.contains("truth") && !j["truth"].is_null()) a.truth = scene_from(j["truth"]);
    return a;
  });
}

std::string to_json(const SceneSpec& s) {
  Json j;
  j["format"] = kSceneFormat;
  j["version"] = kVersion;
  const Json body = scene_json(s);
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j.dump(2) + "\n";
}

SceneSpec parse_scene_spec(const std::string& text) {
  const Json j = parse_text(text);
  return guarded([&] {
    check_header(j, kSceneFormat);
    return scene_from(j);
  });
}

std::string to_json(const ResultFile& r) {
  const CalibrationResult& c = r.calibration;
  Json j;
  j["format"] = kResultFormat;
  j["version"] = kVersion;
  j["intrinsics"] = intrinsics_json(c.k);
  j["sphere"] = sphere_json(c.b);
  j["diagnostics"] = {{"conic_rms", c.conic_rms},
                      {"center_method", std::string(to_string(c.center_used.method))},
                      {"center_residual_px", c.center_used.residual},
                      {"center", point_json(c.center_used.o)},
                      {"p", c.p}};
  if (!r.points.empty()) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
      Json e;
      e["pair"] = p.pair;
      e["status"] = p.status;
      if (p.reconstruction) {
        e["point"] = vec_json(p.reconstruction->point);
        e["gap"] = p.reconstruction->gap;
        e["mirror_point"] = vec_json(p.reconstruction->mirror_point);
      }
      if (!p.message.empty()) e["message"] = p.message;
      pts.push_back(e);
    }
    j["points"] = pts;
  }
  if (!r.lengths.empty()) {
    Json ls = Json::array();
    for (const auto& l : r.lengths)
      ls.push_back({{"a", l.a}, {"b", l.b}, {"value", l.length.value}, {"unit", l.length.unit}});
    j["lengths"] = ls;
  }
  return j.dump(2) + "\n";
}

ResultFile parse_result(const std::string& text) {
  const Json j = parse_text(text);
  return guarded([&] {
    check_header(j, kResultFormat);
    ResultFile r;
    CalibrationResult& c = r.calibration;
    c.k = intrinsics_from(member(j, "intrinsics", "result"));
    c.b = sphere_from(member(j, "sphere", "result"));
    if (j.contains("diagnostics")) {
      const Json& d = j["diagnostics"];
      if (d.contains("conic_rms")) c.conic_rms = finite_number(d["conic_rms"], "diagnostics.conic_rms");
      if (d.contains("center_method")) {
        if (!d["center_method"].is_string()) fail("field 'diagnostics.center_method' must be a string");
        c.center_used.method = center_method_from_string(d["center_method"].get<std::string>());
      }
      if (d.contains("center_residual_px"))
        c.center_used.residual = finite_number(d["center_residual_px"], "diagnostics.center_residual_px");
      if (d.contains("center")) c.center_used.o = point_from(d["center"], "diagnostics.center");
      if (d.contains("p")) c.p = finite_number(d["p"], "diagnostics.p");
    }
    if (j.contains("points")) {
      for (const Json& e : j["points"]) {
        PointResult p;
        p.pair = member(e, "pair", "points[]").get<std::size_t>();
        p.status = member(e, "status", "points[]").get<std::string>();
        if (e.contains("point")) {
          Reconstruction rec;
          rec.point = vec_from(e["point"], "points[].point");
          rec.gap = finite_number(member(e, "gap", "points[]"), "points[].gap");
          rec.mirror_point = vec_from(member(e, "mirror_point", "points[]"), "points[].mirror_point");
          p.reconstruction = rec;
        }
        if (e.contains("message")) p.message = e["message"].get<std::string>();
        r.points.push_back(p);
      }
    }
    if (j.contains("lengths")) {
      for (const Json& e : j["lengths"]) {
        LengthResult l;
        l.a = member(e, "a", "lengths[]").get<std::size_t>();
        l.b = member(e, "b", "lengths[]").get<std::size_t>();
        l.length.value = finite_number(member(e, "value", "lengths[]"), "lengths[].value");
        l.length.unit = member(e, "unit", "lengths[]").get<std::string>();
        r.lengths.push_back(l);
      }
    }
    return r;
  });
}

std::string to_ply(const std::vector<PointResult>& points) {
  std::size_t count = 0;
  for (const auto& p : points) count += p.reconstruction.has_value();
  std::ostringstream out;
  out << "ply\nformat ascii 1.0\ncomment spheremirror reconstruction, sphere radius units\n"
      << "element vertex " << count << "\nproperty double x\nproperty double y\nproperty double z\n"
      << "property double gap\nend_header\n";
  out << std::setprecision(17);
  for (const auto& p : points) {
    if (!p.reconstruction) continue;
    const auto& v = p.reconstruction->point;
    out << v.x() << ' ' << v.y() << ' ' << v.z() << ' ' << p.reconstruction->gap << '\n';
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) fail("failed writing '" + path.string() + "'");
}

}  // namespace spheremirror::io
