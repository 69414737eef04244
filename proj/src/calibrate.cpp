#include "spheremirror/calibrate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "spheremirror/error.hpp"

namespace spheremirror {
namespace {

Eigen::Matrix3d contour_matrix(const Intrinsics& k, const SphereCenter& b) {
  const Eigen::Vector3d bv = b.vector();
  const Eigen::Matrix3d cone = bv * bv.transpose() + (1.0 - bv.squaredNorm()) * Eigen::Matrix3d::Identity();
  const Eigen::Matrix3d kinv = k.inverse();
  // Negated so that pixels on the mirror evaluate negative.
  return -(kinv.transpose() * cone * kinv);
}

// Clamps round-off negatives of a squared quantity; rejects genuinely negative ones.
double checked_square(double value, double scale, double tol, const char* name) {
  if (!std::isfinite(value))
    throw Error(ErrorKind::InfeasibleConic, std::string(name) + " is not finite");
  if (value >= 0.0) return value;
  if (value >= -tol * scale) return 0.0;
  std::ostringstream msg;
  msg << name << " = " << value << " < 0; conic and center are not consistent with a sphere";
  throw Error(ErrorKind::InfeasibleConic, msg.str());
}

}  // namespace

Eigen::Matrix3d shift_conic(const Conic& c, const ImagePoint& o) {
  Eigen::Matrix3d s;
  s << 1, 0, o.x,
       0, 1, o.y,
       0, 0, 1;
  const Eigen::Matrix3d m = s.transpose() * c.matrix() * s;
  return 0.5 * (m + m.transpose());
}

CalibrationResult solve_calibration(const Conic& c, const ImagePoint& o, const SolverTolerances& tol) {
  return solve_calibration(c, CenterEstimate{o, CenterMethod::SelfReflection, 0.0}, tol);
}

CalibrationResult solve_calibration(const Conic& c, const CenterEstimate& center, const SolverTolerances& tol) {
  const ImagePoint& o = center.o;
  if (!std::isfinite(o.x) || !std::isfinite(o.y))
    throw Error(ErrorKind::InvalidInput, "sphere center image is not finite");
  if (!inside_contour(c, o))
    throw Error(ErrorKind::CenterOutsideContour, "sphere center image lies outside the contour");

  const Eigen::Matrix3d m = shift_conic(c, o);
  const double m11 = m(0, 0), m22 = m(1, 1), m33 = m(2, 2);
  const double m12 = m(0, 1), m13 = m(0, 2), m23 = m(1, 2);

  const double off_diag_scale = std::sqrt(std::abs(m11 * m22));
  if (!(std::abs(m12) >= tol.off_diagonal * off_diag_scale)) {
    std::ostringstream msg;
    msg << "|m12| = " << std::abs(m12) << " < " << tol.off_diagonal << " * sqrt(|m11 m22|) = "
        << tol.off_diagonal * off_diag_scale << "; the closed form divides by m12 (b_x * b_y ~ 0)";
    throw Error(ErrorKind::DegenerateCenterOnImageAxis, msg.str());
  }

  const double p = m13 * m23 / m12;
  const double b_sq = m33 / p;
  if (!std::isfinite(p) || !std::isfinite(b_sq) || !(b_sq > 1.0)) {
    std::ostringstream msg;
    msg << "|B|^2 = " << b_sq << " must exceed 1";
    throw Error(ErrorKind::InfeasibleConic, msg.str());
  }

  const double bx_sq = checked_square((1.0 - b_sq) / (m11 * p / (m13 * m13) - 1.0), b_sq, tol.radicand, "b_x^2");
  const double by_sq = checked_square((1.0 - b_sq) / (m22 * p / (m23 * m23) - 1.0), b_sq, tol.radicand, "b_y^2");
  const double bz_sq = checked_square(b_sq - bx_sq - by_sq, b_sq, tol.radicand, "b_z^2");

  // The signs of b_x and b_y are tied to the signs of f_x and f_y; choose
  // them so that both focal lengths come out positive.
  const double b_z = std::sqrt(bz_sq);
  const double b_x = std::copysign(std::sqrt(bx_sq), m13 / p);
  const double b_y = std::copysign(std::sqrt(by_sq), m23 / p);
  const double f_x = p * b_x * b_z / m13;
  const double f_y = p * b_y * b_z / m23;
  if (!(b_z > 0.0) || !(f_x > 0.0) || !(f_y > 0.0) || !std::isfinite(f_x) || !std::isfinite(f_y)) {
    std::ostringstream msg;
    msg << "degenerate solution b = (" << b_x << ", " << b_y << ", " << b_z << "), f = (" << f_x << ", " << f_y
        << ")";
    throw Error(ErrorKind::InfeasibleConic, msg.str());
  }

  CalibrationResult r;
  r.b = {b_x, b_y, b_z};
  r.k = {f_x, f_y, o.x - f_x * b_x / b_z, o.y - f_y * b_y / b_z};
  r.p = p;
  r.center_used = center;
  r.conic_rms = aligned_frobenius_distance(c.matrix(), contour_matrix(r.k, r.b));
  return r;
}

Conic conic_from_params(const Intrinsics& k, const SphereCenter& b) {
  if (!(b.vector().squaredNorm() > 1.0))
    throw Error(ErrorKind::CameraInsideSphere, "|B| must exceed the sphere radius");
  return Conic(contour_matrix(k, b));
}

double aligned_frobenius_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  const Eigen::Matrix3d an = a / a.norm();
  const Eigen::Matrix3d bn = b / b.norm();
  return std::min((an - bn).norm(), (an + bn).norm());
}

}  // namespace spheremirror
