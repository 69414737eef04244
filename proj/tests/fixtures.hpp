#pragma once

// Shared helpers for the test suites: random feasible scenes and error metrics.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "spheremirror/calibrate.hpp"
#include "spheremirror/synth.hpp"

namespace fixtures {

using namespace spheremirror;

inline double rel_err(double est, double truth) { return std::abs(est - truth) / std::abs(truth); }

/// Largest relative error over the seven recovered parameters.
inline double max_param_err(const CalibrationResult& r, const Intrinsics& k, const SphereCenter& b) {
  return std::max({rel_err(r.k.f_x, k.f_x), rel_err(r.k.f_y, k.f_y), rel_err(r.k.t_x, k.t_x),
                   rel_err(r.k.t_y, k.t_y), rel_err(r.b.b_x, b.b_x), rel_err(r.b.b_y, b.b_y),
                   rel_err(r.b.b_z, b.b_z)});
}

inline CalibrationResult truth_calibration(const Intrinsics& k, const SphereCenter& b) {
  CalibrationResult r;
  r.k = k;
  r.b = b;
  r.center_used.o = project(k, b.vector());
  return r;
}

/// Sphere center with |B| in [min_dist, max_dist], in front of the camera
/// (b_z > 1.2), and with b_x, b_y both bounded away from zero.
inline SphereCenter random_sphere(std::mt19937_64& rng, double min_dist = 1.5, double max_dist = 20.0) {
  std::uniform_real_distribution<double> dist(min_dist, max_dist);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double r = dist(rng);
    const double polar = (5.0 + 50.0 * unit(rng)) * std::numbers::pi / 180.0;
    // Azimuth at least 10 degrees away from the image axes.
    const double quadrant = std::floor(4.0 * unit(rng));
    const double azimuth = (quadrant * 90.0 + 10.0 + 70.0 * unit(rng)) * std::numbers::pi / 180.0;
    const SphereCenter b{r * std::sin(polar) * std::cos(azimuth), r * std::sin(polar) * std::sin(azimuth),
                         r * std::cos(polar)};
    if (b.b_z > 1.2) return b;
  }
}

inline Intrinsics random_intrinsics(std::mt19937_64& rng, bool equal_focal = false) {
  std::uniform_real_distribution<double> focal(200.0, 5000.0);
  std::uniform_real_distribution<double> principal(200.0, 3000.0);
  const double fx = focal(rng);
  return {fx, equal_focal ? fx : focal(rng), principal(rng), principal(rng)};
}

/// World point with a visible reflection, found by rejection sampling
/// around the sphere.
inline Eigen::Vector3d random_visible_point(std::mt19937_64& rng, const Intrinsics& k, const SphereCenter& b) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> range(2.0, 8.0);
  for (;;) {
    const Eigen::Vector3d dir = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng)).normalized();
    const Eigen::Vector3d v = b.vector() + range(rng) * dir;
    if (v.z() < 0.5) continue;
    try {
      const auto fr = reflect_forward_full(k, b, v);
      // Keep away from grazing reflections at the rim.
      const Eigen::Vector3d n = fr.mirror_point - b.vector();
      if (-fr.mirror_point.normalized().dot(n) < 0.05) continue;
      return v;
    } catch (const std::exception&) {
    }
  }
}

}  // namespace fixtures
