#include <array>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spheremirror/calibrate.hpp"
#include "spheremirror/conic.hpp"
#include "spheremirror/error.hpp"
#include "spheremirror/io.hpp"
#include "spheremirror/pipeline.hpp"
#include "spheremirror/stereo.hpp"
#include "spheremirror/synth.hpp"

namespace py = pybind11;
namespace sm = spheremirror;

using Pixel = std::array<double, 2>;

namespace {

sm::ImagePoint to_point(const Pixel& p) { return {p[0], p[1]}; }
Pixel to_pixel(const sm::ImagePoint& p) { return {p.x, p.y}; }

std::vector<sm::ImagePoint> to_points(const std::vector<Pixel>& pts) {
  std::vector<sm::ImagePoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_point(p));
  return out;
}

std::vector<Pixel> to_pixels(const std::vector<sm::ImagePoint>& pts) {
  std::vector<Pixel> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_pixel(p));
  return out;
}

sm::CorrespondencePair to_pair(const std::pair<Pixel, Pixel>& p) { return {to_point(p.first), to_point(p.second)}; }

std::optional<sm::Length> to_length(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return sm::parse_length(*text);
}

PyObject* g_error_type = nullptr;

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Camera calibration and catadioptric stereo from one image of a spherical mirror";

  g_error_type = PyErr_NewException("spheremirror._core.Error", PyExc_ValueError, nullptr);
  m.attr("Error") = py::handle(g_error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sm::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(g_error_type)(e.what());
      exc.attr("kind") = std::string(sm::to_string(e.kind()));
      PyErr_SetObject(g_error_type, exc.ptr());
    }
  });

  py::class_<sm::Intrinsics>(m, "Intrinsics")
      .def(py::init<double, double, double, double>(), py::arg("f_x"), py::arg("f_y"), py::arg("t_x"),
           py::arg("t_y"))
      .def_readwrite("f_x", &sm::Intrinsics::f_x)
      .def_readwrite("f_y", &sm::Intrinsics::f_y)
      .def_readwrite("t_x", &sm::Intrinsics::t_x)
      .def_readwrite("t_y", &sm::Intrinsics::t_y)
      .def("matrix", &sm::Intrinsics::matrix)
      .def("__repr__", [](const sm::Intrinsics& k) {
        return "Intrinsics(f_x=" + std::to_string(k.f_x) + ", f_y=" + std::to_string(k.f_y) +
               ", t_x=" + std::to_string(k.t_x) + ", t_y=" + std::to_string(k.t_y) + ")";
      });

  py::class_<sm::SphereCenter>(m, "SphereCenter")
      .def(py::init<double, double, double>(), py::arg("b_x"), py::arg("b_y"), py::arg("b_z"))
      .def_readwrite("b_x", &sm::SphereCenter::b_x)
      .def_readwrite("b_y", &sm::SphereCenter::b_y)
      .def_readwrite("b_z", &sm::SphereCenter::b_z)
      .def("vector", &sm::SphereCenter::vector)
      .def("__repr__", [](const sm::SphereCenter& b) {
        return "SphereCenter(b_x=" + std::to_string(b.b_x) + ", b_y=" + std::to_string(b.b_y) +
               ", b_z=" + std::to_string(b.b_z) + ")";
      });

  py::class_<sm::Conic>(m, "Conic")
      .def(py::init<const Eigen::Matrix3d&>(), py::arg("matrix"))
      .def_property_readonly("matrix", &sm::Conic::matrix)
      .def("evaluate", [](const sm::Conic& c, const Pixel& p) { return c.evaluate(to_point(p)); })
      .def("residual", [](const sm::Conic& c, const Pixel& p) { return sm::conic_residual(c, to_point(p)); })
      .def("geometry", [](const sm::Conic& c) {
        const sm::EllipseGeometry g = sm::ellipse_geometry(c);
        py::dict d;
        d["center"] = to_pixel(g.center);
        d["semi_major"] = g.semi_major;
        d["semi_minor"] = g.semi_minor;
        d["angle"] = g.angle;
        return d;
      });

  py::class_<sm::CalibrationResult>(m, "CalibrationResult")
      .def_readonly("intrinsics", &sm::CalibrationResult::k)
      .def_readonly("sphere", &sm::CalibrationResult::b)
      .def_readonly("p", &sm::CalibrationResult::p)
      .def_readonly("conic_rms", &sm::CalibrationResult::conic_rms)
      .def_property_readonly("center", [](const sm::CalibrationResult& r) { return to_pixel(r.center_used.o); })
      .def_property_readonly("center_method",
                             [](const sm::CalibrationResult& r) { return std::string(sm::to_string(r.center_used.method)); })
      .def("to_json", [](const sm::CalibrationResult& r) { return sm::io::to_json(sm::io::ResultFile{r, {}, {}}); });

  py::class_<sm::SceneSpec>(m, "SceneSpec")
      .def(py::init([](const sm::Intrinsics& k, const sm::SphereCenter& b, const std::vector<Eigen::Vector3d>& pts,
                       int samples, double noise, bool quantize, std::uint64_t seed) {
             sm::SceneSpec s;
             s.intrinsics = k;
             s.sphere = b;
             s.world_points = pts;
             s.contour_samples = samples;
             s.noise_px = noise;
             s.quantize = quantize;
             s.rng_seed = seed;
             return s;
           }),
           py::arg("intrinsics"), py::arg("sphere"), py::arg("world_points") = std::vector<Eigen::Vector3d>{},
           py::arg("contour_samples") = 100, py::arg("noise_px") = 0.0, py::arg("quantize") = false,
           py::arg("seed") = 0)
      .def_readwrite("intrinsics", &sm::SceneSpec::intrinsics)
      .def_readwrite("sphere", &sm::SceneSpec::sphere)
      .def_readwrite("world_points", &sm::SceneSpec::world_points)
      .def_readwrite("contour_samples", &sm::SceneSpec::contour_samples)
      .def_readwrite("noise_px", &sm::SceneSpec::noise_px)
      .def_readwrite("quantize", &sm::SceneSpec::quantize)
      .def_readwrite("seed", &sm::SceneSpec::rng_seed)
      .def("to_json", [](const sm::SceneSpec& s) { return sm::io::to_json(s); });

  m.def("synthetic_data_1", &sm::synthetic_data_1);
  m.def("synthetic_data_2", &sm::synthetic_data_2);
  m.def("scene_spec_from_json", &sm::io::parse_scene_spec, py::arg("text"));

  m.def(
      "generate_annotation",
      [](const sm::SceneSpec& s) { return sm::io::to_json(sm::io::annotation_from_scene(sm::generate_scene(s))); },
      py::arg("spec"), "Annotation JSON for a synthetic scene.");

  m.def(
      "sample_contour",
      [](const sm::Intrinsics& k, const sm::SphereCenter& b, int n) { return to_pixels(sm::sample_contour(k, b, n)); },
      py::arg("intrinsics"), py::arg("sphere"), py::arg("n") = 100);

  m.def(
      "reflect_forward",
      [](const sm::Intrinsics& k, const sm::SphereCenter& b, const Eigen::Vector3d& v) {
        const sm::CorrespondencePair p = sm::reflect_forward(k, b, v);
        return std::make_pair(to_pixel(p.direct), to_pixel(p.mirrored));
      },
      py::arg("intrinsics"), py::arg("sphere"), py::arg("point"));

  m.def(
      "fit_conic", [](const std::vector<Pixel>& pts) { return sm::fit_conic(to_points(pts)); }, py::arg("points"));
  m.def("conic_from_params", &sm::conic_from_params, py::arg("intrinsics"), py::arg("sphere"));

  m.def(
      "solve_calibration",
      [](const sm::Conic& c, const Pixel& o) { return sm::solve_calibration(c, to_point(o)); }, py::arg("conic"),
      py::arg("center"));

  m.def(
      "calibrate",
      [](const std::string& annotation, const std::string& method) {
        return sm::calibrate_annotation(sm::io::parse_annotation(annotation), sm::center_choice_from_string(method));
      },
      py::arg("annotation"), py::arg("center_method") = "auto", "Calibrate from annotation JSON text.");

  m.def(
      "reconstruct",
      [](const std::string& annotation, const sm::CalibrationResult& calib, const std::optional<std::string>& radius) {
        const auto a = sm::io::parse_annotation(annotation);
        return sm::io::to_json(sm::reconstruct_annotation(a, calib, radius ? to_length(radius) : a.radius));
      },
      py::arg("annotation"), py::arg("calibration"), py::arg("radius") = py::none(),
      "Result JSON with triangulated points and lengths.");

  m.def(
      "reconstruct_pair",
      [](const sm::CalibrationResult& calib, const Pixel& direct, const Pixel& mirrored) {
        const sm::Reconstruction r = sm::reconstruct(calib, {to_point(direct), to_point(mirrored)});
        return std::make_pair(Eigen::Vector3d(r.point), r.gap);
      },
      py::arg("calibration"), py::arg("direct"), py::arg("mirrored"));

  m.def(
      "measure_length",
      [](const sm::CalibrationResult& calib, const std::pair<Pixel, Pixel>& a, const std::pair<Pixel, Pixel>& b,
         const std::string& radius) {
        const sm::Length l = sm::measure_length(calib, to_pair(a), to_pair(b), sm::parse_length(radius));
        return std::make_pair(l.value, l.unit);
      },
      py::arg("calibration"), py::arg("a"), py::arg("b"), py::arg("radius"));
}
