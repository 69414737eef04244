#include "spheremirror/pipeline.hpp"

#include <string>

#include "spheremirror/error.hpp"

namespace spheremirror {

CenterChoice center_choice_from_string(std::string_view s) {
  if (s == "auto") return CenterChoice::Auto;
  if (s == "reflection") return CenterChoice::Reflection;
  if (s == "pairs") return CenterChoice::Pairs;
  if (s == "axial") return CenterChoice::Axial;
  throw Error(ErrorKind::InvalidInput,
              "unknown center method '" + std::string(s) + "' (expected auto|reflection|pairs|axial)");
}

CenterEstimate estimate_center(const io::AnnotationFile& a, const Conic& c, CenterChoice choice) {
  if (choice == CenterChoice::Auto) {
    if (a.camera_reflection)
      choice = CenterChoice::Reflection;
    else if (a.pairs.size() >= 2)
      choice = CenterChoice::Pairs;
    else if (!a.pairs.empty())
      choice = CenterChoice::Axial;
    else
      throw Error(ErrorKind::InsufficientEvidence, "annotation has no camera reflection and no correspondence pairs");
  }
  switch (choice) {
    case CenterChoice::Reflection:
      if (!a.camera_reflection)
        throw Error(ErrorKind::InsufficientEvidence, "center method 'reflection' needs camera_reflection");
      return center_from_self_reflection(*a.camera_reflection, c);
    case CenterChoice::Pairs:
      if (a.pairs.size() < 2)
        throw Error(ErrorKind::InsufficientEvidence,
                    "center method 'pairs' needs at least 2 pairs, got " + std::to_string(a.pairs.size()));
      return center_from_pairs(a.pairs);
    case CenterChoice::Axial:
      if (a.pairs.empty())
        throw Error(ErrorKind::InsufficientEvidence, "center method 'axial' needs at least 1 pair");
      return center_from_pair_and_axis(a.pairs.front(), c);
    case CenterChoice::Auto:
      break;
  }
  throw Error(ErrorKind::InvalidInput, "unhandled center method");
}

CalibrationResult calibrate_annotation(const io::AnnotationFile& a, CenterChoice choice) {
  const Conic c = fit_conic(a.contour);
  return solve_calibration(c, estimate_center(a, c, choice));
}

io::ResultFile reconstruct_annotation(const io::AnnotationFile& a, const CalibrationResult& calib,
                                      const std::optional<Length>& radius) {
  io::ResultFile out;
  out.calibration = calib;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    io::PointResult pr;
    pr.pair = i;
    try {
      pr.reconstruction = reconstruct(calib, a.pairs[i]);
    } catch (const Error& e) {
      pr.status = std::string(to_string(e.kind()));
      pr.message = e.what();
    }
    out.points.push_back(pr);
  }
  if (radius) {
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      if (!out.points[i].reconstruction) continue;
      for (std::size_t j = i + 1; j < out.points.size(); ++j) {
        if (!out.points[j].reconstruction) continue;
        const double d = (out.points[i].reconstruction->point - out.points[j].reconstruction->point).norm();
        out.lengths.push_back({i, j, {d * radius->value, radius->unit}});
      }
    }
  }
  return out;
}

}  // namespace spheremirror
