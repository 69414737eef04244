#pragma once

// Projected sphere contour: fitting, normalization and ellipse geometry.
//
// Pixel convention: origin at the top-left corner, x rightward, y downward.
// Points are handled homogeneously as [x, y, 1].

#include <span>
#include <vector>

#include <Eigen/Core>

namespace spheremirror {

struct ImagePoint {
  double x = 0.0;
  double y = 0.0;

  Eigen::Vector3d homogeneous() const { return {x, y, 1.0}; }

  /// Dehomogenizes `h`. Throws InvalidInput when h(2) is zero or the result is not finite.
  static ImagePoint from_homogeneous(const Eigen::Vector3d& h);

  bool operator==(const ImagePoint&) const = default;
};

/// Homogeneous image line ax + by + c = 0 with (a, b) of unit length.
class Line2 {
 public:
  /// Normalizes `l` so that its first two components have unit norm.
  /// Throws DegenerateConfiguration for the line at infinity.
  explicit Line2(const Eigen::Vector3d& l);

  const Eigen::Vector3d& coeffs() const { return l_; }
  Eigen::Vector2d normal() const { return l_.head<2>(); }

  /// Signed perpendicular distance in pixels.
  double distance(const ImagePoint& p) const { return l_.dot(p.homogeneous()); }

 private:
  Eigen::Vector3d l_;
};

/// Symmetric 3x3 conic of an ellipse, unit Frobenius norm, negative inside.
class Conic {
 public:
  /// Symmetrizes, checks that the matrix describes a real ellipse, then
  /// normalizes scale and sign. Throws NotAnEllipse otherwise.
  explicit Conic(const Eigen::Matrix3d& c);

  const Eigen::Matrix3d& matrix() const { return c_; }

  /// vᵀCv for the homogeneous point [x, y, 1].
  double evaluate(const ImagePoint& v) const;

  /// vᵀCv / |v|², scale-free membership measure (C already has unit norm).
  double normalized_form(const ImagePoint& v) const;

 private:
  Eigen::Matrix3d c_;
};

struct EllipseGeometry {
  ImagePoint center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  /// Direction of the major axis in (-pi/2, pi/2]; 0 for circles.
  double angle = 0.0;
};

/// Relative difference (a - b) / a below which an ellipse counts as a circle.
inline constexpr double kCircularityTolerance = 1e-6;

/// Direct ellipse-specific least squares (numerically stable formulation),
/// on isotropically normalized coordinates.
/// Throws TooFewPoints for fewer than five points and DegenerateConfiguration
/// when the points are collinear or admit no ellipse solution.
Conic fit_conic(std::span<const ImagePoint> points);

/// Signed pixel distance from `v` to the contour measured along the gradient
/// line of the quadratic form. Matches the Sampson distance f/|∇f| to first
/// order, stays finite at the ellipse center, and is negative inside.
double conic_residual(const Conic& c, const ImagePoint& v);

EllipseGeometry ellipse_geometry(const Conic& c);

/// Builds the conic of an ellipse from its center, semi-axes and orientation.
Conic conic_from_geometry(const EllipseGeometry& g);

/// Line through the ellipse center along the major axis.
/// Throws CircularAmbiguity when (a - b) / a < kCircularityTolerance.
Line2 major_axis_line(const Conic& c);

/// Homogeneous intersection of two lines. Throws ParallelLines.
ImagePoint intersect(const Line2& a, const Line2& b);

}  // namespace spheremirror
