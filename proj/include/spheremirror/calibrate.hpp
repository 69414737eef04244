#pragma once

// Closed-form recovery of the intrinsics and the sphere center from the
// contour conic and the image of the sphere center.

#include <Eigen/Core>

#include "spheremirror/camera.hpp"
#include "spheremirror/center.hpp"
#include "spheremirror/conic.hpp"

namespace spheremirror {

/// Numerical thresholds of the solver, all relative.
struct SolverTolerances {
  /// |m12| / sqrt(|m11 m22|) below this means the center image lies on an
  /// axis through the principal point and the closed form is undefined.
  double off_diagonal = 1e-9;
  /// Negative squares down to -radicand * |B|^2 are clamped to zero.
  double radicand = 1e-9;
};

struct CalibrationResult {
  Intrinsics k;
  SphereCenter b;
  /// Combined scale r / b_z^2 of the conic; r itself is never formed.
  double p = 0.0;
  /// Aligned Frobenius distance between the input conic and the conic
  /// predicted by (k, b).
  double conic_rms = 0.0;
  CenterEstimate center_used;
};

/// SᵀCS with S the translation moving the origin to o.
Eigen::Matrix3d shift_conic(const Conic& c, const ImagePoint& o);

/// Throws CenterOutsideContour, DegenerateCenterOnImageAxis, InfeasibleConic.
/// Output is canonical: f_x, f_y > 0 and b_z > 0.
CalibrationResult solve_calibration(const Conic& c, const CenterEstimate& center,
                                    const SolverTolerances& tol = {});
CalibrationResult solve_calibration(const Conic& c, const ImagePoint& o, const SolverTolerances& tol = {});

/// Contour of the sphere as seen by camera k: K⁻ᵀ(BBᵀ + (1-|B|²)I)K⁻¹ up to scale.
/// Throws CameraInsideSphere when |B| <= 1, NotAnEllipse when the sphere is
/// not entirely in front of the camera.
Conic conic_from_params(const Intrinsics& k, const SphereCenter& b);

/// min over sign of |A/|A| -+ B/|B||_F.
double aligned_frobenius_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

}  // namespace spheremirror
