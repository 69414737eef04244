#include "spheremirror/stereo.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <Eigen/Geometry>

#include "spheremirror/error.hpp"

namespace spheremirror {

Ray3 Ray3::make(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir) {
  const double n = dir.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidInput, "ray direction must be non-zero");
  return {origin, dir / n};
}

Length parse_length(const std::string& text) {
  std::size_t begin = 0;
  while (begin < text.size() && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  double value = 0.0;
  const char* first = text.data() + begin;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || !std::isfinite(value) || !(value > 0.0))
    throw Error(ErrorKind::InvalidInput, "cannot parse length '" + text + "'");
  std::string unit(ptr, last);
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  unit.erase(unit.begin(), std::find_if(unit.begin(), unit.end(), not_space));
  unit.erase(std::find_if(unit.rbegin(), unit.rend(), not_space).base(), unit.end());
  for (const unsigned char ch : unit)
    if (!std::isalpha(ch)) throw Error(ErrorKind::InvalidInput, "bad unit in length '" + text + "'");
  return {value, unit};
}

Eigen::Vector3d mirror_point(const CalibrationResult& calib, const ImagePoint& v_mirrored) {
  const Eigen::Vector3d d = back_project(calib.k, v_mirrored);
  const Eigen::Vector3d b = calib.b.vector();
  const double db = d.dot(b);
  const double dd = d.squaredNorm();
  const double c0 = b.squaredNorm() - 1.0;
  double disc = db * db - dd * c0;
  // Grazing rays at the rim may come out marginally negative.
  if (disc < 0.0 && disc > -1e-12 * db * db) disc = 0.0;
  if (!(disc >= 0.0) || !(db > 0.0))
    throw Error(ErrorKind::RayMissesSphere, "viewing ray does not hit the mirror");
  // Smaller root of dd s^2 - 2 db s + c0 = 0 via the product of roots.
  const double s = c0 / (db + std::sqrt(disc));
  return s * d;
}

Ray3 reflected_ray(const CalibrationResult& calib, const ImagePoint& v_mirrored) {
  const Eigen::Vector3d h = mirror_point(calib, v_mirrored);
  const Eigen::Vector3d n = (h - calib.b.vector()).normalized();
  const Eigen::Vector3d d = h.normalized();
  return Ray3::make(h, d - 2.0 * n.dot(d) * n);
}

Ray3 direct_ray(const Intrinsics& k, const ImagePoint& v) {
  return Ray3::make(Eigen::Vector3d::Zero(), back_project(k, v));
}

Reconstruction triangulate(const Ray3& direct, const Ray3& reflected) {
  const Eigen::Vector3d& d1 = direct.dir;
  const Eigen::Vector3d& d2 = reflected.dir;
  const double cross = d1.cross(d2).norm();
  if (!(cross > 1e-9)) throw Error(ErrorKind::ParallelRays, "rays are parallel");

  const Eigen::Vector3d w = direct.origin - reflected.origin;
  const double b = d1.dot(d2);
  const double d = d1.dot(w);
  const double e = d2.dot(w);
  const double denom = 1.0 - b * b;
  const double t1 = (b * e - d) / denom;
  const double t2 = (e - b * d) / denom;

  const double scale = 1e-12 * (1.0 + w.norm());
  if (t1 < -scale || t2 < -scale)
    throw Error(ErrorKind::BehindRay, "closest approach lies behind a ray origin");

  const Eigen::Vector3d p1 = direct.at(t1);
  const Eigen::Vector3d p2 = reflected.at(t2);
  return {0.5 * (p1 + p2), (p1 - p2).norm(), reflected.origin};
}

Reconstruction reconstruct(const CalibrationResult& calib, const CorrespondencePair& pair) {
  return triangulate(direct_ray(calib.k, pair.direct), reflected_ray(calib, pair.mirrored));
}

Length measure_length(const CalibrationResult& calib, const CorrespondencePair& a, const CorrespondencePair& b,
                      const Length& radius) {
  const Reconstruction ra = reconstruct(calib, a);
  const Reconstruction rb = reconstruct(calib, b);
  return {(ra.point - rb.point).norm() * radius.value, radius.unit};
}

}  // namespace spheremirror
