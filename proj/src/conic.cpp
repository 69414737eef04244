#include "spheremirror/conic.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "spheremirror/error.hpp"

namespace spheremirror {

ImagePoint ImagePoint::from_homogeneous(const Eigen::Vector3d& h) {
  if (h(2) == 0.0) throw Error(ErrorKind::InvalidInput, "point at infinity");
  ImagePoint p{h(0) / h(2), h(1) / h(2)};
  if (!std::isfinite(p.x) || !std::isfinite(p.y))
    throw Error(ErrorKind::InvalidInput, "non-finite image point");
  return p;
}

Line2::Line2(const Eigen::Vector3d& l) {
  const double n = l.head<2>().norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::DegenerateConfiguration, "line at infinity has no image direction");
  l_ = l / n;
}

Conic::Conic(const Eigen::Matrix3d& c) {
  Eigen::Matrix3d sym = 0.5 * (c + c.transpose());
  const double norm = sym.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw Error(ErrorKind::NotAnEllipse, "zero or non-finite conic matrix");
  sym /= norm;
  if (sym(0, 0) + sym(1, 1) < 0.0) sym = -sym;
  const double det2 = sym(0, 0) * sym(1, 1) - sym(0, 1) * sym(0, 1);
  if (!(det2 > 0.0))
    throw Error(ErrorKind::NotAnEllipse, "quadratic part is not definite");
  if (!(sym.determinant() < 0.0))
    throw Error(ErrorKind::NotAnEllipse, "conic has no real points");
  c_ = sym;
}

double Conic::evaluate(const ImagePoint& v) const {
  const Eigen::Vector3d h = v.homogeneous();
  return h.dot(c_ * h);
}

double Conic::normalized_form(const ImagePoint& v) const {
  return evaluate(v) / v.homogeneous().squaredNorm();
}

Conic fit_conic(std::span<const ImagePoint> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 5) throw Error(ErrorKind::TooFewPoints, "need at least 5 contour points, got " + std::to_string(n));

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : points) mean += Eigen::Vector2d(p.x, p.y);
  mean /= static_cast<double>(n);
  double spread = 0.0;
  for (const auto& p : points) spread += (Eigen::Vector2d(p.x, p.y) - mean).norm();
  spread /= static_cast<double>(n);
  if (!(spread > 0.0) || !std::isfinite(spread))
    throw Error(ErrorKind::DegenerateConfiguration, "contour points coincide or are not finite");
  const double scale = std::numbers::sqrt2 / spread;

  Eigen::MatrixXd quad(n, 3), lin(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = (points[i].x - mean.x()) * scale;
    const double v = (points[i].y - mean.y()) * scale;
    quad.row(i) << u * u, u * v, v * v;
    lin.row(i) << u, v, 1.0;
  }
  const Eigen::Matrix3d s1 = quad.transpose() * quad;
  const Eigen::Matrix3d s2 = quad.transpose() * lin;
  const Eigen::Matrix3d s3 = lin.transpose() * lin;

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(s3);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 1e-12 * sv(0))
    throw Error(ErrorKind::DegenerateConfiguration, "contour points are collinear");

  const Eigen::Matrix3d t = -s3.ldlt().solve(s2.transpose());
  const Eigen::Matrix3d reduced = s1 + s2 * t;
  // Multiply by the inverse of the ellipse constraint matrix 4ac - b^2.
  Eigen::Matrix3d constrained;
  constrained.row(0) = reduced.row(2) / 2.0;
  constrained.row(1) = -reduced.row(1);
  constrained.row(2) = reduced.row(0) / 2.0;

  Eigen::EigenSolver<Eigen::Matrix3d> es(constrained);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::DegenerateConfiguration, "eigen decomposition failed");

  int best = -1;
  double best_cond = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3cd ev = es.eigenvectors().col(k);
    if (ev.imag().norm() > 1e-9 * ev.real().norm()) continue;
    const Eigen::Vector3d a = ev.real().normalized();
    const double cond = 4.0 * a(0) * a(2) - a(1) * a(1);
    if (cond > best_cond) {
      best_cond = cond;
      best = k;
    }
  }
  if (best < 0)
    throw Error(ErrorKind::DegenerateConfiguration, "no ellipse satisfies the fit constraint");

  const Eigen::Vector3d a1 = es.eigenvectors().col(best).real();
  const Eigen::Vector3d a2 = t * a1;
  Eigen::Matrix3d cn;
  cn << a1(0), a1(1) / 2, a2(0) / 2,
        a1(1) / 2, a1(2), a2(1) / 2,
        a2(0) / 2, a2(1) / 2, a2(2);

  Eigen::Matrix3d denorm;
  denorm << scale, 0, -scale * mean.x(),
            0, scale, -scale * mean.y(),
            0, 0, 1;
  try {
    return Conic(denorm.transpose() * cn * denorm);
  } catch (const Error& e) {
    throw Error(ErrorKind::DegenerateConfiguration, std::string("fit is not an ellipse (") + e.what() + ")");
  }
}

double conic_residual(const Conic& c, const ImagePoint& v) {
  const Eigen::Matrix3d& m = c.matrix();
  const Eigen::Vector3d h = v.homogeneous();
  const double f = h.dot(m * h);
  const Eigen::Vector2d grad = 2.0 * (m * h).head<2>();
  const double g = grad.norm();
  const Eigen::Matrix2d quad = m.topLeftCorner<2, 2>();

  double curvature;
  if (g > 0.0) {
    const Eigen::Vector2d dir = grad / g;
    curvature = dir.dot(quad * dir);
  } else {
    curvature = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(quad).eigenvalues()(1);
  }
  // f restricted to the gradient line is exactly f + g d + curvature d^2.
  const double disc = g * g - 4.0 * curvature * f;
  if (disc < 0.0) return f / g;
  return 2.0 * f / (g + std::sqrt(disc));
}

EllipseGeometry ellipse_geometry(const Conic& c) {
  const Eigen::Matrix3d& m = c.matrix();
  const Eigen::Matrix2d quad = m.topLeftCorner<2, 2>();
  const Eigen::Vector2d lin = m.block<2, 1>(0, 2);
  const Eigen::Vector2d center = -quad.ldlt().solve(lin);
  const double at_center = m(2, 2) + lin.dot(center);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(quad);
  const Eigen::Vector2d lambda = es.eigenvalues();
  if (!(lambda(0) > 0.0) || !(at_center < 0.0))
    throw Error(ErrorKind::NotAnEllipse, "conic is not a real ellipse");

  EllipseGeometry g;
  g.center = {center.x(), center.y()};
  g.semi_major = std::sqrt(-at_center / lambda(0));
  g.semi_minor = std::sqrt(-at_center / lambda(1));
  if ((g.semi_major - g.semi_minor) / g.semi_major < kCircularityTolerance) {
    g.angle = 0.0;
  } else {
    const Eigen::Vector2d axis = es.eigenvectors().col(0);
    double angle = std::atan2(axis.y(), axis.x());
    if (angle <= -std::numbers::pi / 2) angle += std::numbers::pi;
    if (angle > std::numbers::pi / 2) angle -= std::numbers::pi;
    g.angle = angle;
  }
  return g;
}

Conic conic_from_geometry(const EllipseGeometry& g) {
  if (!(g.semi_minor > 0.0) || !(g.semi_major > 0.0))
    throw Error(ErrorKind::NotAnEllipse, "semi-axes must be positive");
  Eigen::Matrix2d rot;
  rot << std::cos(g.angle), -std::sin(g.angle),
         std::sin(g.angle), std::cos(g.angle);
  const Eigen::Matrix2d quad =
      rot * Eigen::Vector2d(1.0 / (g.semi_major * g.semi_major), 1.0 / (g.semi_minor * g.semi_minor)).asDiagonal() *
      rot.transpose();
  const Eigen::Vector2d x0(g.center.x, g.center.y);
  Eigen::Matrix3d m;
  m.topLeftCorner<2, 2>() = quad;
  m.block<2, 1>(0, 2) = -quad * x0;
  m.block<1, 2>(2, 0) = (-quad * x0).transpose();
  m(2, 2) = x0.dot(quad * x0) - 1.0;
  return Conic(m);
}

Line2 major_axis_line(const Conic& c) {
  const EllipseGeometry g = ellipse_geometry(c);
  if ((g.semi_major - g.semi_minor) / g.semi_major < kCircularityTolerance)
    throw Error(ErrorKind::CircularAmbiguity, "contour is circular; major axis undefined");
  const Eigen::Vector2d normal(-std::sin(g.angle), std::cos(g.angle));
  return Line2({normal.x(), normal.y(), -(normal.x() * g.center.x + normal.y() * g.center.y)});
}

ImagePoint intersect(const Line2& a, const Line2& b) {
  const Eigen::Vector3d x = a.coeffs().cross(b.coeffs());
  if (std::abs(x(2)) < 1e-12) throw Error(ErrorKind::ParallelLines, "lines are parallel");
  return ImagePoint::from_homogeneous(x);
}

}  // namespace spheremirror
