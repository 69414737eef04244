#pragma once

// JSON annotation/result files (schema "v1") and ASCII PLY export.
//
// Annotation:
//   {"format": "spheremirror-annotation", "version": "v1",
//    "image_size": [w, h],                      optional
//    "contour": [[x, y], ...],
//    "camera_reflection": [x, y],               optional
//    "pairs": [{"direct": [x, y], "mirrored": [x, y]}, ...],
//    "radius": {"value": 5, "unit": "cm"},      optional
//    "truth": {scene spec},                     optional, written by synth}
//
// Result:
//   {"format": "spheremirror-result", "version": "v1",
//    "intrinsics": {"f_x", "f_y", "t_x", "t_y"},
//    "sphere": {"b_x", "b_y", "b_z"},
//    "diagnostics": {"conic_rms", "center_method", "center_residual_px", "center", "p"},
//    "points": [{"pair", "status", "point", "gap", "mirror_point", "message"}],   optional
//    "lengths": [{"a", "b", "value", "unit"}]}                                    optional
//
// Pixel coordinates follow the image convention: origin top-left, x right, y down.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spheremirror/calibrate.hpp"
#include "spheremirror/center.hpp"
#include "spheremirror/stereo.hpp"
#include "spheremirror/synth.hpp"

namespace spheremirror::io {

struct AnnotationFile {
  std::optional<std::pair<int, int>> image_size;
  std::vector<ImagePoint> contour;
  std::optional<ImagePoint> camera_reflection;
  std::vector<CorrespondencePair> pairs;
  std::optional<Length> radius;
  std::optional<SceneSpec> truth;
};

struct PointResult {
  std::size_t pair = 0;
  /// "ok" or the name of the ErrorKind that stopped this pair.
  std::string status = "ok";
  std::optional<Reconstruction> reconstruction;
  std::string message;
};

struct LengthResult {
  std::size_t a = 0;
  std::size_t b = 0;
  Length length;
};

struct ResultFile {
  CalibrationResult calibration;
  std::vector<PointResult> points;
  std::vector<LengthResult> lengths;
};

AnnotationFile annotation_from_scene(const SceneAnnotation& scene);

// All parsers throw Error(InvalidInput) with the offending field named.
std::string to_json(const AnnotationFile& a);
std::string to_json(const ResultFile& r);
std::string to_json(const SceneSpec& s);
AnnotationFile parse_annotation(const std::string& text);
ResultFile parse_result(const std::string& text);
SceneSpec parse_scene_spec(const std::string& text);

std::string to_ply(const std::vector<PointResult>& points);

/// Throws InvalidInput when the file cannot be read or written.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace spheremirror::io
