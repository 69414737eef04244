#include "spheremirror/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/tools/toms748_solve.hpp>
#include <Eigen/Geometry>

#include "spheremirror/error.hpp"

namespace spheremirror {
namespace {

void require_outside(const SphereCenter& b) {
  if (!(b.vector().squaredNorm() > 1.0))
    throw Error(ErrorKind::CameraInsideSphere, "|B| must exceed the sphere radius");
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// Mirror geometry in the plane spanned by B (first axis) and V.
struct PlanarMirror {
  double beta;         // |B|
  Eigen::Vector2d v;   // V in plane coordinates, v.y() > 0

  Eigen::Vector2d surface(double theta) const { return {beta + std::cos(theta), std::sin(theta)}; }
  Eigen::Vector2d reflected(double theta) const {
    const Eigen::Vector2d h = surface(theta);
    const Eigen::Vector2d n(std::cos(theta), std::sin(theta));
    const Eigen::Vector2d d = h.normalized();
    return d - 2.0 * d.dot(n) * n;
  }
  // Zero when V lies on the line of the reflected ray.
  double side(double theta) const { return cross2(reflected(theta), v - surface(theta)); }
  bool ahead(double theta) const { return reflected(theta).dot(v - surface(theta)) > 0.0; }
};

}  // namespace

std::vector<ImagePoint> sample_contour(const Intrinsics& k, const SphereCenter& b, int n) {
  require_outside(b);
  if (n < 1) throw Error(ErrorKind::InvalidInput, "contour sample count must be positive");
  // The tangent cone stays in front of the camera exactly when b_z > 1.
  if (!(b.b_z > 1.0))
    throw Error(ErrorKind::NotAnEllipse, "sphere crosses the camera's principal plane (b_z <= 1); contour is not an ellipse");
  const Eigen::Vector3d bv = b.vector();
  const double dist = bv.norm();
  const Eigen::Vector3d axis = bv / dist;
  Eigen::Vector3d u = axis.cross(Eigen::Vector3d::UnitZ());
  if (u.norm() < 1e-12) u = Eigen::Vector3d::UnitX();
  u.normalize();
  const Eigen::Vector3d w = axis.cross(u);

  const double sin_a = 1.0 / dist;
  const double cos_a = std::sqrt(1.0 - sin_a * sin_a);
  std::vector<ImagePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / n;
    const Eigen::Vector3d dir = cos_a * axis + sin_a * (std::cos(phi) * u + std::sin(phi) * w);
    out.push_back(project(k, dir));
  }
  return out;
}

ForwardReflection reflect_forward_full(const Intrinsics& k, const SphereCenter& b, const Eigen::Vector3d& v) {
  require_outside(b);
  const Eigen::Vector3d bv = b.vector();
  if (!((v - bv).norm() > 1.0)) throw Error(ErrorKind::InvalidInput, "world point lies inside the sphere");
  if (!(v.z() > 0.0)) throw Error(ErrorKind::BehindCamera, "world point has non-positive depth");

  const double beta = bv.norm();
  const Eigen::Vector3d e1 = bv / beta;
  const Eigen::Vector3d perp = v - v.dot(e1) * e1;
  if (perp.norm() <= 1e-12 * std::max(1.0, v.norm()))
    throw Error(ErrorKind::DegenerateColinear, "world point is on the camera-sphere axis");
  const Eigen::Vector3d e2 = perp.normalized();

  const PlanarMirror mirror{beta, {v.dot(e1), perp.norm()}};
  // Visible cap: cos(theta) < -1/beta. V sits on the sin(theta) > 0 side.
  const double rim = std::acos(-1.0 / beta);
  const double lo = rim;
  const double hi = std::numbers::pi;

  constexpr int kGrid = 512;
  std::optional<double> root;
  double prev_t = hi;
  double prev_g = mirror.side(hi);
  for (int i = 1; i <= kGrid && !root; ++i) {
    const double t = hi - (hi - lo) * i / kGrid;
    const double g = mirror.side(t);
    if (g == 0.0 || (g > 0.0) != (prev_g > 0.0)) {
      double r = t;
      if (g != 0.0) {
        // Full double-precision bracket.
        boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits);
        std::uintmax_t iters = 200;
        const auto [a, c] = boost::math::tools::toms748_solve(
            [&](double th) { return mirror.side(th); }, t, prev_t, g, prev_g, tol, iters);
        r = 0.5 * (a + c);
      }
      if (mirror.ahead(r)) root = r;
    }
    prev_t = t;
    prev_g = g;
  }
  if (!root) throw Error(ErrorKind::NoVisibleReflection, "world point has no visible reflection on the mirror");

  const Eigen::Vector3d h = bv + std::cos(*root) * e1 + std::sin(*root) * e2;
  const Eigen::Vector3d n = (h - bv).normalized();
  const double residual = std::abs(h.normalized().dot(n) + (v - h).normalized().dot(n));

  ForwardReflection out;
  out.pair = {project(k, v), project(k, h)};
  out.mirror_point = h;
  out.law_residual = residual;
  return out;
}

SceneAnnotation generate_scene(const SceneSpec& spec) {
  if (!(spec.noise_px >= 0.0) || !std::isfinite(spec.noise_px))
    throw Error(ErrorKind::InvalidInput, "noise_px must be non-negative");
  if (!(spec.intrinsics.f_x > 0.0) || !(spec.intrinsics.f_y > 0.0))
    throw Error(ErrorKind::InvalidInput, "focal lengths must be positive");

  SceneAnnotation a;
  a.truth = spec;
  a.contour = sample_contour(spec.intrinsics, spec.sphere, spec.contour_samples);
  // The camera's own reflection is seen along the ray through B. It is kept
  // exact; noise applies to contour and pair pixels.
  a.camera_reflection = project(spec.intrinsics, spec.sphere.vector());
  for (const auto& v : spec.world_points) a.pairs.push_back(reflect_forward(spec.intrinsics, spec.sphere, v));

  std::mt19937_64 rng(spec.rng_seed);
  std::normal_distribution<double> noise(0.0, spec.noise_px);
  auto perturb = [&](ImagePoint& p) {
    if (spec.noise_px > 0.0) {
      p.x += noise(rng);
      p.y += noise(rng);
    }
    if (spec.quantize) {
      p.x = std::round(p.x);
      p.y = std::round(p.y);
    }
  };
  for (auto& p : a.contour) perturb(p);
  for (auto& pair : a.pairs) {
    perturb(pair.direct);
    perturb(pair.mirrored);
  }
  return a;
}

SceneSpec synthetic_data_1() {
  SceneSpec s;
  s.intrinsics = {1024, 1024, 1024, 1024};
  s.sphere = {3, -4, 7};
  s.world_points = {{2, 1, 10}, {2, 1, 12}};
  s.image_size = {{2048, 2048}};
  return s;
}

SceneSpec synthetic_data_2() {
  SceneSpec s;
  s.intrinsics = {1144, 1144, 960, 540};
  s.sphere = {-1.5, 3, 1};
  s.world_points = {{1, 1, 6}, {1, 1, 8}};
  s.image_size = {{1920, 1080}};
  return s;
}

}  // namespace spheremirror
