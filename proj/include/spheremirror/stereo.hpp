#pragma once

// Catadioptric stereo with a single spherical mirror: mirror points,
// reflected rays, two-ray triangulation and metric lengths.

#include <string>

#include <Eigen/Core>

#include "spheremirror/calibrate.hpp"
#include "spheremirror/center.hpp"

namespace spheremirror {

struct Ray3 {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d dir = Eigen::Vector3d::UnitZ();

  /// Normalizes `dir`. Throws InvalidInput for a zero direction.
  static Ray3 make(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir);
  Eigen::Vector3d at(double t) const { return origin + t * dir; }
};

struct Reconstruction {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  /// Closest distance between the direct and reflected rays.
  double gap = 0.0;
  /// Where the reflected ray leaves the mirror; |mirror_point - B| = 1.
  Eigen::Vector3d mirror_point = Eigen::Vector3d::Zero();
};

/// A physical length, e.g. the sphere radius {5, "cm"}.
struct Length {
  double value = 1.0;
  std::string unit;
};

/// Parses "5cm", "0.05 m", "5". Throws InvalidInput.
Length parse_length(const std::string& text);

/// Front-surface intersection of the viewing ray through `v_mirrored` with
/// the unit sphere at B. Throws RayMissesSphere.
Eigen::Vector3d mirror_point(const CalibrationResult& calib, const ImagePoint& v_mirrored);

/// Ray leaving the mirror point after specular reflection. Throws RayMissesSphere.
Ray3 reflected_ray(const CalibrationResult& calib, const ImagePoint& v_mirrored);

/// Ray from the camera center through a pixel.
Ray3 direct_ray(const Intrinsics& k, const ImagePoint& v);

/// Midpoint of the common perpendicular of the two rays.
/// Throws ParallelRays, BehindRay.
Reconstruction triangulate(const Ray3& direct, const Ray3& reflected);

/// Triangulates the direct ray of pair.direct against the reflected ray of pair.mirrored.
Reconstruction reconstruct(const CalibrationResult& calib, const CorrespondencePair& pair);

/// Distance between the two reconstructed points, in the radius' unit.
Length measure_length(const CalibrationResult& calib, const CorrespondencePair& a, const CorrespondencePair& b,
                      const Length& radius);

}  // namespace spheremirror
