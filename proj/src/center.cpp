#include "spheremirror/center.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "spheremirror/error.hpp"

namespace spheremirror {

std::string_view to_string(CenterMethod m) {
  switch (m) {
    case CenterMethod::SelfReflection: return "SelfReflection";
    case CenterMethod::TwoPairs: return "TwoPairs";
    case CenterMethod::OnePairAxial: return "OnePairAxial";
  }
  return "Unknown";
}

CenterMethod center_method_from_string(std::string_view s) {
  if (s == "SelfReflection") return CenterMethod::SelfReflection;
  if (s == "TwoPairs") return CenterMethod::TwoPairs;
  if (s == "OnePairAxial") return CenterMethod::OnePairAxial;
  throw Error(ErrorKind::InvalidInput, "unknown center method '" + std::string(s) + "'");
}

bool inside_contour(const Conic& c, const ImagePoint& v) {
  return c.normalized_form(v) < kMembershipTolerance;
}

void validate_pair(const Conic& c, const CorrespondencePair& pair) {
  if (pair.direct == pair.mirrored)
    throw Error(ErrorKind::CoincidentPoints, "direct and mirrored points coincide");
  if (!inside_contour(c, pair.mirrored))
    throw Error(ErrorKind::OutsideContour, "mirrored point lies outside the sphere contour");
}

CenterEstimate center_from_self_reflection(const ImagePoint& camera_reflection, const Conic& c) {
  if (!inside_contour(c, camera_reflection))
    throw Error(ErrorKind::OutsideContour, "camera reflection lies outside the sphere contour");
  return {camera_reflection, CenterMethod::SelfReflection, 0.0};
}

Line2 line_through_pair(const CorrespondencePair& pair) {
  const Eigen::Vector3d l = pair.direct.homogeneous().cross(pair.mirrored.homogeneous());
  const double scale = std::max({1.0, std::abs(pair.direct.x), std::abs(pair.direct.y)});
  if (l.head<2>().norm() <= 1e-12 * scale)
    throw Error(ErrorKind::CoincidentPoints, "direct and mirrored points coincide");
  return Line2(l);
}

CenterEstimate center_from_pairs(std::span<const CorrespondencePair> pairs) {
  if (pairs.size() < 2)
    throw Error(ErrorKind::TooFewPoints, "need at least 2 correspondence pairs, got " + std::to_string(pairs.size()));

  std::vector<Line2> lines;
  lines.reserve(pairs.size());
  for (const auto& p : pairs) lines.push_back(line_through_pair(p));

  // Minimize sum (n_i.x + c_i)^2 over x.
  Eigen::Matrix2d normal = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (const auto& l : lines) {
    const Eigen::Vector2d n = l.normal();
    normal += n * n.transpose();
    rhs -= n * l.coeffs()(2);
  }
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(normal).eigenvalues();
  if (ev(0) <= 1e-12 * ev(1))
    throw Error(ErrorKind::DegenerateLines, "correspondence lines are parallel or coincident");
  const Eigen::Vector2d x = normal.llt().solve(rhs);

  CenterEstimate est{{x.x(), x.y()}, CenterMethod::TwoPairs, 0.0};
  double sq = 0.0;
  for (const auto& l : lines) sq += std::pow(l.distance(est.o), 2);
  est.residual = std::sqrt(sq / static_cast<double>(lines.size()));
  return est;
}

CenterEstimate center_from_pair_and_axis(const CorrespondencePair& pair, const Conic& c) {
  const Line2 axis = major_axis_line(c);
  const Line2 line = line_through_pair(pair);
  return {intersect(line, axis), CenterMethod::OnePairAxial, 0.0};
}

}  // namespace spheremirror
