#pragma once

// Ground-truth scene generator. Works from the tangent-cone and mirror
// reflection geometry only; it never touches the conic formula or the
// calibration solver, so it can serve as their oracle.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "spheremirror/camera.hpp"
#include "spheremirror/center.hpp"

namespace spheremirror {

struct SceneSpec {
  Intrinsics intrinsics;
  SphereCenter sphere;
  std::vector<Eigen::Vector3d> world_points;
  int contour_samples = 100;
  /// Standard deviation of isotropic Gaussian noise per pixel coordinate.
  double noise_px = 0.0;
  /// Round noisy pixels (contour and pairs) to integer coordinates.
  bool quantize = false;
  std::uint64_t rng_seed = 0;
  /// Informational; annotations are not clipped to the frame.
  std::optional<std::pair<int, int>> image_size;
};

struct SceneAnnotation {
  std::vector<ImagePoint> contour;
  ImagePoint camera_reflection;
  std::vector<CorrespondencePair> pairs;
  SceneSpec truth;
};

/// Tangent points of the cone from the camera to the sphere, projected;
/// uniform in cone azimuth. Throws CameraInsideSphere, and NotAnEllipse
/// when b_z <= 1 (part of the cone lies behind the camera).
std::vector<ImagePoint> sample_contour(const Intrinsics& k, const SphereCenter& b, int n);

struct ForwardReflection {
  CorrespondencePair pair;
  /// Surface point where the camera ray reflects through V.
  Eigen::Vector3d mirror_point;
  /// |<d_in, n> + <d_out, n>| at the mirror point.
  double law_residual = 0.0;
};

/// Solves for the mirror point reflecting V into the camera, in the plane of
/// (origin, B, V). Throws DegenerateColinear, NoVisibleReflection,
/// CameraInsideSphere, BehindCamera, InvalidInput (V inside the sphere).
ForwardReflection reflect_forward_full(const Intrinsics& k, const SphereCenter& b, const Eigen::Vector3d& v);

inline CorrespondencePair reflect_forward(const Intrinsics& k, const SphereCenter& b, const Eigen::Vector3d& v) {
  return reflect_forward_full(k, b, v).pair;
}

/// Deterministic in spec.rng_seed.
SceneAnnotation generate_scene(const SceneSpec& spec);

/// Scene presets sd1 and sd2.
SceneSpec synthetic_data_1();
SceneSpec synthetic_data_2();

}  // namespace spheremirror
