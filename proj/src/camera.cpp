#include "spheremirror/camera.hpp"

#include "spheremirror/error.hpp"

namespace spheremirror {

Eigen::Matrix3d Intrinsics::matrix() const {
  Eigen::Matrix3d k;
  k << f_x, 0, t_x,
       0, f_y, t_y,
       0, 0, 1;
  return k;
}

Eigen::Matrix3d Intrinsics::inverse() const {
  Eigen::Matrix3d k;
  k << 1 / f_x, 0, -t_x / f_x,
       0, 1 / f_y, -t_y / f_y,
       0, 0, 1;
  return k;
}

ImagePoint project(const Intrinsics& k, const Eigen::Vector3d& x) {
  if (!(x.z() > 0.0)) throw Error(ErrorKind::BehindCamera, "point has non-positive depth");
  return {k.f_x * x.x() / x.z() + k.t_x, k.f_y * x.y() / x.z() + k.t_y};
}

Eigen::Vector3d back_project(const Intrinsics& k, const ImagePoint& v) {
  return {(v.x - k.t_x) / k.f_x, (v.y - k.t_y) / k.f_y, 1.0};
}

}  // namespace spheremirror
