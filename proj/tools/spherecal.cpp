// spherecal: single-image camera calibration and catadioptric stereo with a
// spherical mirror.
//
//   spherecal synth       --preset sd1 --output scene.json
//   spherecal fit         --input scene.json
//   spherecal calibrate   --input scene.json --center-method auto --output calib.json
//   spherecal reconstruct --input scene.json --calibration calib.json --radius 5cm

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spheremirror/error.hpp"
#include "spheremirror/io.hpp"
#include "spheremirror/pipeline.hpp"

namespace sm = spheremirror;

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string center_method = "auto";
  std::string radius;
  std::string calibration;
  std::string format = "json";
  std::string spec;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_px;
  std::optional<int> contour_samples;
  bool quantize = false;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty())
    std::cout << text;
  else
    sm::io::write_file(opt.output, text);
}

sm::io::AnnotationFile load_annotation(const Options& opt) {
  if (opt.input.empty()) throw sm::Error(sm::ErrorKind::InvalidInput, "--input is required");
  return sm::io::parse_annotation(sm::io::read_file(opt.input));
}

int cmd_fit(const Options& opt) {
  const auto a = load_annotation(opt);
  const sm::Conic c = sm::fit_conic(a.contour);
  const sm::EllipseGeometry g = sm::ellipse_geometry(c);

  double sq = 0.0, worst = 0.0;
  for (const auto& p : a.contour) {
    const double r = sm::conic_residual(c, p);
    sq += r * r;
    worst = std::max(worst, std::abs(r));
  }
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({c.matrix()(i, 0), c.matrix()(i, 1), c.matrix()(i, 2)});
  j["conic"] = rows;
  j["ellipse"] = {{"center", {g.center.x, g.center.y}},
                  {"semi_major", g.semi_major},
                  {"semi_minor", g.semi_minor},
                  {"angle", g.angle}};
  j["residuals"] = {{"count", a.contour.size()},
                    {"rms_px", std::sqrt(sq / static_cast<double>(a.contour.size()))},
                    {"max_px", worst}};
  emit(opt, j.dump(2) + "\n");
  return 0;
}

std::string summary(const sm::CalibrationResult& r) {
  std::ostringstream s;
  s << std::setprecision(6);
  s << "center method " << sm::to_string(r.center_used.method) << " at (" << r.center_used.o.x << ", "
    << r.center_used.o.y << "), residual " << r.center_used.residual << " px\n"
    << "f_x = " << r.k.f_x << "  f_y = " << r.k.f_y << "  t_x = " << r.k.t_x << "  t_y = " << r.k.t_y << "\n"
    << "b_x = " << r.b.b_x << "  b_y = " << r.b.b_y << "  b_z = " << r.b.b_z << "  (sphere radii)\n"
    << "conic consistency " << r.conic_rms << "\n";
  return s.str();
}

int cmd_calibrate(const Options& opt) {
  const auto a = load_annotation(opt);
  const auto choice = sm::center_choice_from_string(opt.center_method);
  sm::io::ResultFile r;
  r.calibration = sm::calibrate_annotation(a, choice);
  if (opt.output.empty()) {
    std::cerr << summary(r.calibration);
  } else {
    std::cout << summary(r.calibration);
  }
  emit(opt, sm::io::to_json(r));
  return 0;
}

int cmd_reconstruct(const Options& opt) {
  const auto a = load_annotation(opt);
  if (opt.format != "json" && opt.format != "ply")
    throw sm::Error(sm::ErrorKind::InvalidInput, "--format must be json or ply");
  if (a.pairs.empty()) throw sm::Error(sm::ErrorKind::InsufficientEvidence, "annotation has no correspondence pairs");

  sm::CalibrationResult calib;
  if (!opt.calibration.empty())
    calib = sm::io::parse_result(sm::io::read_file(opt.calibration)).calibration;
  else
    calib = sm::calibrate_annotation(a, sm::center_choice_from_string(opt.center_method));

  std::optional<sm::Length> radius = a.radius;
  if (!opt.radius.empty()) radius = sm::parse_length(opt.radius);

  const sm::io::ResultFile r = sm::reconstruct_annotation(a, calib, radius);
  emit(opt, opt.format == "ply" ? sm::io::to_ply(r.points) : sm::io::to_json(r));

  int failed = 0;
  for (const auto& p : r.points) {
    if (p.reconstruction) continue;
    ++failed;
    std::cerr << "pair " << p.pair << ": " << p.message << "\n";
  }
  return failed ? 5 : 0;
}

int cmd_synth(const Options& opt) {
  sm::SceneSpec spec;
  if (!opt.spec.empty()) {
    spec = sm::io::parse_scene_spec(sm::io::read_file(opt.spec));
  } else if (opt.preset == "sd1") {
    spec = sm::synthetic_data_1();
  } else if (opt.preset == "sd2") {
    spec = sm::synthetic_data_2();
  } else {
    throw sm::Error(sm::ErrorKind::InvalidInput, "synth needs --spec <file> or --preset sd1|sd2");
  }
  if (opt.seed) spec.rng_seed = *opt.seed;
  if (opt.noise_px) spec.noise_px = *opt.noise_px;
  if (opt.contour_samples) spec.contour_samples = *opt.contour_samples;
  if (opt.quantize) spec.quantize = true;

  emit(opt, sm::io::to_json(sm::io::annotation_from_scene(sm::generate_scene(spec))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera calibration and catadioptric stereo from one image of a spherical mirror"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", opt.input, "Annotation file (JSON)");
    if (needs_input) in->required();
    sub->add_option("-o,--output", opt.output, "Output file (default: stdout)");
  };

  auto* fit = app.add_subcommand("fit", "Fit the contour conic and report its geometry");
  add_io(fit, true);

  auto* calibrate = app.add_subcommand("calibrate", "Recover intrinsics and sphere center");
  add_io(calibrate, true);
  calibrate->add_option("--center-method", opt.center_method, "auto|reflection|pairs|axial")
      ->check(CLI::IsMember({"auto", "reflection", "pairs", "axial"}));

  auto* reconstruct = app.add_subcommand("reconstruct", "Triangulate correspondence pairs and measure lengths");
  add_io(reconstruct, true);
  reconstruct->add_option("--calibration", opt.calibration, "Result file from 'calibrate' (default: calibrate inline)");
  reconstruct->add_option("--center-method", opt.center_method, "auto|reflection|pairs|axial")
      ->check(CLI::IsMember({"auto", "reflection", "pairs", "axial"}));
  reconstruct->add_option("--radius", opt.radius, "Sphere radius with unit, e.g. 5cm");
  reconstruct->add_option("--format", opt.format, "json|ply")->check(CLI::IsMember({"json", "ply"}));

  auto* synth = app.add_subcommand("synth", "Generate a ground-truth annotation");
  synth->add_option("--spec", opt.spec, "Scene spec file (JSON)");
  synth->add_option("--preset", opt.preset, "sd1|sd2")->check(CLI::IsMember({"sd1", "sd2"}));
  synth->add_option("-o,--output", opt.output, "Output file (default: stdout)");
  synth->add_option("--seed", opt.seed, "RNG seed");
  synth->add_option("--noise-px", opt.noise_px, "Gaussian pixel noise sigma")->check(CLI::NonNegativeNumber);
  synth->add_option("--contour-samples", opt.contour_samples, "Number of contour points");
  synth->add_flag("--quantize", opt.quantize, "Round noisy pixels to integers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit) return cmd_fit(opt);
    if (*calibrate) return cmd_calibrate(opt);
    if (*reconstruct) return cmd_reconstruct(opt);
    if (*synth) return cmd_synth(opt);
  } catch (const sm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sm::exit_code(e.kind());
  }
  return 1;
}
