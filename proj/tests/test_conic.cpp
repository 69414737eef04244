#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "spheremirror/calibrate.hpp"
#include "spheremirror/conic.hpp"
#include "spheremirror/error.hpp"
#include "spheremirror/synth.hpp"

using namespace spheremirror;

namespace {

std::vector<ImagePoint> ellipse_points(double cx, double cy, double a, double b, double angle, int n) {
  std::vector<ImagePoint> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    const double x = a * std::cos(t), y = b * std::sin(t);
    pts.push_back({cx + x * std::cos(angle) - y * std::sin(angle), cy + x * std::sin(angle) + y * std::cos(angle)});
  }
  return pts;
}

Eigen::Matrix3d diag(double a, double b, double c) { return Eigen::Vector3d(a, b, c).asDiagonal(); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("fit_conic recovers the unit circle and an axis-aligned ellipse") {
  const Conic circle = fit_conic(ellipse_points(0, 0, 1, 1, 0, 8));
  CHECK(aligned_frobenius_distance(circle.matrix(), diag(1, 1, -1)) < 1e-12);

  const Conic ellipse = fit_conic(ellipse_points(0, 0, 2, 1, 0, 8));
  CHECK(aligned_frobenius_distance(ellipse.matrix(), diag(0.25, 1, -1)) < 1e-12);
}

TEST_CASE("Conic normalization invariants") {
  const Conic c(diag(-3, -12, 12));
  const Eigen::Matrix3d& m = c.matrix();
  CHECK(std::abs(m.norm() - 1.0) < 1e-12);
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c.evaluate({0, 0}) < 0.0);
  CHECK(kind_of([] { Conic(diag(1, -1, -1)); }) == ErrorKind::NotAnEllipse);
  CHECK(kind_of([] { Conic(diag(1, 1, 1)); }) == ErrorKind::NotAnEllipse);
}

TEST_CASE("fit_conic on tangent-cone samples matches the forward conic") {
  const SceneSpec s = synthetic_data_1();
  const auto pts = sample_contour(s.intrinsics, s.sphere, 100);
  const Conic fitted = fit_conic(pts);
  CHECK(aligned_frobenius_distance(fitted.matrix(), conic_from_params(s.intrinsics, s.sphere).matrix()) < 1e-9);
  for (const auto& p : pts) CHECK(std::abs(conic_residual(fitted, p)) < 1e-6);
}

TEST_CASE("fit_conic errors") {
  CHECK(kind_of([] { fit_conic(ellipse_points(0, 0, 2, 1, 0, 4)); }) == ErrorKind::TooFewPoints);
  std::vector<ImagePoint> line;
  for (int i = 0; i < 7; ++i) line.push_back({1.0 * i, 2.0 * i + 3.0});
  CHECK(kind_of([&] { fit_conic(line); }) == ErrorKind::DegenerateConfiguration);
}

TEST_CASE("conic_residual sign and scale") {
  const Conic c(diag(1, 1, -1) / std::sqrt(3.0));
  CHECK(conic_residual(c, {1, 0}) == doctest::Approx(0.0));
  CHECK(conic_residual(c, {0, 0}) < 0.0);
  // Along the gradient line it is the exact distance for a circle.
  CHECK(conic_residual(c, {0, 0}) == doctest::Approx(-1.0));
  CHECK(conic_residual(c, {2, 0}) == doctest::Approx(1.0));
  CHECK(conic_residual(c, {0, -0.5}) == doctest::Approx(-0.5));
}

TEST_CASE("fit idempotence on exact samples of random ellipses") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> center(-2000, 2000), axis(5, 800), ratio(1.05, 6), angle(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = axis(rng);
    const auto pts = ellipse_points(center(rng), center(rng), a, a / ratio(rng), angle(rng), 40);
    const Conic c = fit_conic(pts);
    for (const auto& p : pts) REQUIRE(std::abs(conic_residual(c, p)) < 1e-9);
  }
}

TEST_CASE("fit classifies scaled interiors identically") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> probe(-400, 400);
  const auto base = ellipse_points(120, -40, 250, 90, 0.4, 30);
  const Conic c1 = fit_conic(base);
  for (double s : {0.01, 0.5, 3.0, 250.0}) {
    std::vector<ImagePoint> scaled;
    for (const auto& p : base) scaled.push_back({s * p.x, s * p.y});
    const Conic cs = fit_conic(scaled);
    for (int i = 0; i < 200; ++i) {
      const ImagePoint q{probe(rng), probe(rng)};
      if (std::abs(conic_residual(c1, q)) < 1e-6) continue;
      REQUIRE((c1.evaluate(q) < 0) == (cs.evaluate({s * q.x, s * q.y}) < 0));
    }
  }
}

TEST_CASE("ellipse_geometry basic cases") {
  const EllipseGeometry g = ellipse_geometry(Conic(diag(0.25, 1, -1)));
  CHECK(g.center.x == doctest::Approx(0.0));
  CHECK(g.center.y == doctest::Approx(0.0));
  CHECK(g.semi_major == doctest::Approx(2.0));
  CHECK(g.semi_minor == doctest::Approx(1.0));
  CHECK(g.angle == doctest::Approx(0.0));

  const EllipseGeometry circle = ellipse_geometry(Conic(diag(1, 1, -4)));
  CHECK(circle.semi_major == doctest::Approx(circle.semi_minor));
  CHECK(circle.semi_major == doctest::Approx(2.0));
  CHECK(circle.angle == 0.0);
}

TEST_CASE("ellipse_geometry matches a brute-force extremum search") {
  const SceneSpec s = synthetic_data_1();
  const EllipseGeometry g = ellipse_geometry(conic_from_params(s.intrinsics, s.sphere));

  // Oracle: dense tangent-cone samples; bounding-box midpoint is the center,
  // extreme distances from it are the semi-axes.
  const auto pts = sample_contour(s.intrinsics, s.sphere, 40000);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
  }
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  double dmin = 1e300, dmax = 0;
  for (const auto& p : pts) {
    const double d = std::hypot(p.x - cx, p.y - cy);
    dmin = std::min(dmin, d), dmax = std::max(dmax, d);
  }
  CHECK(std::abs(g.center.x - cx) < 0.1);
  CHECK(std::abs(g.center.y - cy) < 0.1);
  CHECK(std::abs(g.semi_major - dmax) < 0.1);
  CHECK(std::abs(g.semi_minor - dmin) < 0.1);
}

TEST_CASE("ellipse_geometry round-trips conic_from_geometry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> center(-3000, 3000), axis(1, 1000), ratio(1.1, 8),
      angle(-std::numbers::pi / 2 + 1e-6, std::numbers::pi / 2);
  for (int trial = 0; trial < 500; ++trial) {
    EllipseGeometry in;
    in.center = {center(rng), center(rng)};
    in.semi_major = axis(rng);
    in.semi_minor = in.semi_major / ratio(rng);
    in.angle = angle(rng);
    const EllipseGeometry out = ellipse_geometry(conic_from_geometry(in));
    const auto tol = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };
    REQUIRE(std::abs(out.center.x - in.center.x) < tol(in.center.x));
    REQUIRE(std::abs(out.center.y - in.center.y) < tol(in.center.y));
    REQUIRE(std::abs(out.semi_major - in.semi_major) < tol(in.semi_major));
    REQUIRE(std::abs(out.semi_minor - in.semi_minor) < tol(in.semi_minor));
    double dangle = std::remainder(out.angle - in.angle, std::numbers::pi);
    REQUIRE(std::abs(dangle) < 1e-9);
  }
}

TEST_CASE("major_axis_line") {
  const Line2 l = major_axis_line(Conic(diag(0.25, 1, -1)));
  CHECK(std::abs(l.coeffs()(0)) < 1e-12);
  CHECK(std::abs(l.coeffs()(1)) == doctest::Approx(1.0));
  CHECK(std::abs(l.coeffs()(2)) < 1e-12);

  const Line2 rotated = major_axis_line(Conic(diag(1, 0.25, -1)));
  CHECK(std::abs(rotated.coeffs()(0)) == doctest::Approx(1.0));
  CHECK(std::abs(rotated.coeffs()(1)) < 1e-12);
  CHECK(std::abs(rotated.coeffs()(2)) < 1e-12);

  CHECK(kind_of([] { major_axis_line(Conic(diag(1, 1, -1))); }) == ErrorKind::CircularAmbiguity);

  const SceneSpec s = synthetic_data_1();
  const Line2 axis = major_axis_line(fit_conic(sample_contour(s.intrinsics, s.sphere, 100)));
  CHECK(std::abs(axis.distance(project(s.intrinsics, s.sphere.vector()))) < 0.5);
}

TEST_CASE("axial constraint holds for equal focal lengths") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Intrinsics k = fixtures::random_intrinsics(rng, true);
    const SphereCenter b = fixtures::random_sphere(rng);
    const Line2 axis = major_axis_line(conic_from_params(k, b));
    REQUIRE(std::abs(axis.distance(project(k, b.vector()))) < 1e-6);
  }
}

TEST_CASE("intersect") {
  const ImagePoint p = intersect(Line2({1, 0, -3}), Line2({0, 1, 0}));
  CHECK(p.x == doctest::Approx(3.0));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(kind_of([] { intersect(Line2({0, 1, 0}), Line2({0, 2, 1})); }) == ErrorKind::ParallelLines);
}
