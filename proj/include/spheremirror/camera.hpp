#pragma once

// No-skew pinhole camera at the origin looking down +z, and the mirrored
// sphere it observes. Lengths are in sphere radii.

#include <Eigen/Core>

#include "spheremirror/conic.hpp"

namespace spheremirror {

struct Intrinsics {
  double f_x = 1.0;
  double f_y = 1.0;
  double t_x = 0.0;
  double t_y = 0.0;

  Eigen::Matrix3d matrix() const;
  Eigen::Matrix3d inverse() const;

  bool operator==(const Intrinsics&) const = default;
};

struct SphereCenter {
  double b_x = 0.0;
  double b_y = 0.0;
  double b_z = 1.0;

  Eigen::Vector3d vector() const { return {b_x, b_y, b_z}; }
  static SphereCenter from_vector(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

  bool operator==(const SphereCenter&) const = default;
};

/// Pixel of a camera-frame point. Throws BehindCamera unless X.z > 0.
ImagePoint project(const Intrinsics& k, const Eigen::Vector3d& x);

/// K⁻¹[x, y, 1]: the (unnormalized) viewing direction through a pixel.
Eigen::Vector3d back_project(const Intrinsics& k, const ImagePoint& v);

}  // namespace spheremirror
