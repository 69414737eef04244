#pragma once

// Estimators for the image of the sphere's center.

#include <span>
#include <string_view>

#include "spheremirror/conic.hpp"

namespace spheremirror {

/// A scene point imaged directly and via its reflection on the mirror.
struct CorrespondencePair {
  ImagePoint direct;
  ImagePoint mirrored;
};

enum class CenterMethod { SelfReflection, TwoPairs, OnePairAxial };

std::string_view to_string(CenterMethod m);
/// Accepts the names produced by to_string. Throws InvalidInput.
CenterMethod center_method_from_string(std::string_view s);

struct CenterEstimate {
  ImagePoint o;
  CenterMethod method = CenterMethod::SelfReflection;
  /// RMS perpendicular distance to the contributing lines, pixels.
  double residual = 0.0;
};

/// Tolerance on Conic::normalized_form for contour membership tests.
inline constexpr double kMembershipTolerance = 1e-9;

/// True unless `v` is outside `c` beyond kMembershipTolerance.
bool inside_contour(const Conic& c, const ImagePoint& v);

/// Throws OutsideContour when the mirrored point is off the mirror,
/// CoincidentPoints when direct == mirrored.
void validate_pair(const Conic& c, const CorrespondencePair& pair);

/// The camera sees its own reflection exactly where the sphere center
/// projects. Throws OutsideContour when the pixel is not on the mirror.
CenterEstimate center_from_self_reflection(const ImagePoint& camera_reflection, const Conic& c);

/// Throws CoincidentPoints.
Line2 line_through_pair(const CorrespondencePair& pair);

/// Least-squares intersection of the pair lines.
/// Throws TooFewPoints for fewer than two pairs, DegenerateLines when the
/// lines do not pin down a point.
CenterEstimate center_from_pairs(std::span<const CorrespondencePair> pairs);

/// Intersects one pair line with the contour's major axis. Valid only for
/// equal focal lengths. Throws CircularAmbiguity, ParallelLines.
CenterEstimate center_from_pair_and_axis(const CorrespondencePair& pair, const Conic& c);

}  // namespace spheremirror
