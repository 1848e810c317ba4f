#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "melsolid/analysis.hpp"
#include "melsolid/annotation.hpp"
#include "melsolid/config.hpp"
#include "melsolid/fit.hpp"
#include "melsolid/perspective.hpp"
#include "melsolid/projective.hpp"
#include "melsolid/solid.hpp"
#include "melsolid/synth.hpp"
#include "melsolid/theories.hpp"

namespace {

using namespace melsolid;
using nlohmann::json;

// Exit codes, stable across releases:
//   0 success, 1 usage, 2 input/schema error, 3 computation failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format;  // empty = from config
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "Run-configuration JSON (default: $MELSOLID_CONFIG)");
  cmd->add_option("--out", args.out_path, "Write the report here instead of stdout");
  cmd->add_option("--format", args.format, "Report format: table|json")
      ->check(CLI::IsMember({"table", "json"}));
}

RunConfig resolve_config(const CommonArgs& args) {
  std::string path = args.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("MELSOLID_CONFIG")) path = env;
  }
  RunConfig config = path.empty() ? RunConfig{} : load_run_config(path);
  if (!args.format.empty()) config.format = args.format;
  return config;
}

void emit(const CommonArgs& args, const std::string& text) {
  if (args.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(args.out_path);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + args.out_path + "'");
  out << text;
}

std::string fmt4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

json point_json(const HPoint2& p) {
  json j;
  const HPoint2 n = p.normalized();
  j["h"] = {n.x, n.y, n.w};
  if (p.is_ideal()) {
    j["xy"] = nullptr;
  } else {
    const Vec2 v = p.affine();
    j["xy"] = {v.x, v.y};
  }
  return j;
}

json camera_json(const Camera& cam) {
  return json{{"eye", {cam.eye.x, cam.eye.y, cam.eye.z}},
              {"look", {cam.look.x, cam.look.y, cam.look.z}},
              {"up", {cam.up.x, cam.up.y, cam.up.z}},
              {"focal", cam.focal},
              {"scale", cam.scale},
              {"offset", {cam.offset_x, cam.offset_y}},
              {"image", {cam.width, cam.height}}};
}

// ---------------------------------------------------------------- measure

int run_measure(const CommonArgs& common, const std::string& annotation_path) {
  Annotation annotation;
  RunConfig config;
  try {
    config = resolve_config(common);
    annotation = load_annotation(annotation_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const MeasureSummary summary = measure(annotation, config.measure);
    if (summary.faces.empty()) {
      std::cerr << "error: no face could be measured\n";
      for (const auto& f : summary.failures)
        std::cerr << "  face " << f.face_id << ": " << f.message << "\n";
      return kExitCompute;
    }

    std::ostringstream os;
    if (config.format == "json") {
      json j{{"schema", 1}, {"kind", "measure"}};
      json faces = json::array();
      for (const auto& m : summary.faces)
        faces.push_back({{"id", m.face_id},
                         {"lambda", m.lambda},
                         {"A", point_json(m.a)},
                         {"B", point_json(m.b)},
                         {"C", point_json(m.c)},
                         {"D", point_json(m.d)},
                         {"collinearity_defect", m.collinearity_defect},
                         {"apex_condition", m.apex_condition}});
      j["faces"] = std::move(faces);
      json failures = json::array();
      for (const auto& f : summary.failures)
        failures.push_back({{"id", f.face_id},
                            {"error", error_code_name(f.code)},
                            {"message", f.message}});
      j["failures"] = std::move(failures);
      j["summary"] = {{"count", summary.faces.size()},
                      {"mean", summary.mean},
                      {"spread", summary.spread},
                      {"stddev", summary.stddev}};
      os << j.dump(2) << "\n";
    } else {
      os << "face        lambda     defect_px  condition\n";
      for (const auto& m : summary.faces)
        os << m.face_id << std::string(12 - std::min<size_t>(11, m.face_id.size()), ' ')
           << fmt4(m.lambda) << "     " << fmt4(m.collinearity_defect) << "     "
           << fmt4(m.apex_condition) << "\n";
      for (const auto& f : summary.failures)
        os << f.face_id << "  FAILED: " << f.message << "\n";
      os << "faces " << summary.faces.size() << "  mean " << fmt4(summary.mean)
         << "  spread " << fmt4(summary.spread) << "  stddev "
         << fmt4(summary.stddev) << "\n";
    }
    emit(common, os.str());
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BadAnnotation || e.code() == ErrorCode::IoError
               ? kExitInput
               : kExitCompute;
  }
}

// ------------------------------------------------------------------ synth

struct SynthArgs {
  double alpha = 0.0;
  double lambda = 0.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string svg_path;
  CommonArgs common;
  CameraSpec camera_flags;
  bool has_cam_override = false;
};

int run_synth(SynthArgs& args, CLI::App* cmd) {
  FaceShape shape{args.alpha, args.lambda};
  RunConfig config;
  CameraSpec spec;
  try {
    config = resolve_config(args.common);
    spec = config.camera;
    // Flag overrides beat the config file.
    if (cmd->count("--cam-distance")) spec.distance = args.camera_flags.distance;
    if (cmd->count("--cam-azimuth")) spec.azimuth_deg = args.camera_flags.azimuth_deg;
    if (cmd->count("--cam-elevation"))
      spec.elevation_deg = args.camera_flags.elevation_deg;
    if (cmd->count("--cam-focal")) spec.focal = args.camera_flags.focal;
    if (cmd->count("--cam-scale")) spec.scale = args.camera_flags.scale;
    if (cmd->count("--width")) spec.width = args.camera_flags.width;
    if (cmd->count("--height")) spec.height = args.camera_flags.height;
    shape.validate();
    if (!(shape.lambda > 1.0))
      raise(ErrorCode::OutOfRange, "synth needs lambda > 1 (a genuine cut)");
    if (args.noise < 0.0) raise(ErrorCode::OutOfRange, "noise sigma must be >= 0");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const SolidMesh mesh = synthetic_mesh(shape);
    const Camera camera = make_camera(spec, mesh.centroid());
    const Annotation annotation =
        synthesize_annotation(shape, camera, args.noise, args.seed);
    const std::string out =
        args.common.out_path.empty() ? "annotation.json" : args.common.out_path;
    save_annotation(out, annotation);
    if (!args.svg_path.empty()) {
      RenderOptions options;
      options.vertex_labels = true;
      options.centerlines = true;
      std::ofstream svg(args.svg_path);
      if (!svg) raise(ErrorCode::IoError, "cannot write '" + args.svg_path + "'");
      svg << render_svg(mesh, camera, options);
    }
    std::cout << "wrote " << out << " (alpha " << fmt4(shape.alpha_deg) << ", lambda "
              << fmt4(shape.lambda) << ", sigma " << fmt4(args.noise) << ", seed "
              << args.seed << ")\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}

// -------------------------------------------------------------------- fit

int run_fit(const CommonArgs& common, const std::string& annotation_path,
            double init_alpha, double init_lambda) {
  Annotation annotation;
  RunConfig config;
  try {
    config = resolve_config(common);
    annotation = load_annotation(annotation_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const FaceShape initial{init_alpha, init_lambda};
    const SolidMesh probe = synthetic_mesh(initial);
    const Camera camera = make_camera(config.camera, probe.centroid());
    const FitResult fit = fit_model(annotation, initial, camera, config.fit);

    std::ostringstream os;
    if (config.format == "json") {
      json j{{"schema", 1},
             {"kind", "fit"},
             {"alpha_deg", fit.alpha_deg},
             {"lambda", fit.lambda},
             {"rms_px", fit.rms},
             {"iterations", fit.iterations},
             {"evaluations", fit.evaluations},
             {"matched_points", fit.matched_points},
             {"converged", fit.converged},
             {"camera", camera_json(fit.camera)}};
      os << j.dump(2) << "\n";
    } else {
      os << "fit: alpha " << fmt4(fit.alpha_deg) << " deg, lambda "
         << fmt4(fit.lambda) << ", rms " << fmt4(fit.rms) << " px over "
         << fit.matched_points << " points\n";
      os << "     " << (fit.converged ? "converged" : "NOT converged") << " after "
         << fit.iterations << " iterations (" << fit.evaluations << " evaluations)\n";
    }
    emit(common, os.str());
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BadAnnotation ? kExitInput : kExitCompute;
  }
}

// --------------------------------------------------------------- theories

int run_theories(const CommonArgs& common, std::optional<double> lambda_flag,
                 std::optional<double> alpha_flag, const std::string& annotation_path,
                 const std::string& theories_path, bool no_builtin) {
  RunConfig config;
  std::vector<Theory> catalog;
  Annotation annotation;
  bool have_annotation = false;
  try {
    config = resolve_config(common);
    if (!no_builtin) catalog = builtin_theories();
    if (!theories_path.empty()) {
      auto extra = load_theories(theories_path);
      catalog.insert(catalog.end(), extra.begin(), extra.end());
    }
    if (catalog.empty()) raise(ErrorCode::BadConfig, "theory catalog is empty");
    if (!annotation_path.empty()) {
      annotation = load_annotation(annotation_path);
      have_annotation = true;
    } else if (!lambda_flag) {
      raise(ErrorCode::BadConfig, "need --lambda or --annotation");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    double measured = 0.0;
    if (have_annotation) {
      const MeasureSummary summary = measure(annotation, config.measure);
      if (summary.faces.empty())
        raise(ErrorCode::DegenerateQuadruple, "no face could be measured");
      measured = summary.mean;
    } else {
      measured = *lambda_flag;
    }

    const auto rows = compare_report(measured, alpha_flag, catalog);
    const GoldenProximity proximity = golden_proximity();

    std::ostringstream os;
    if (config.format == "json") {
      json j{{"schema", 1}, {"kind", "theories"}, {"measured_lambda", measured}};
      if (alpha_flag) j["measured_alpha_deg"] = *alpha_flag;
      json jrows = json::array();
      for (const auto& row : rows) {
        json r{{"name", row.theory}, {"assessment", row.assessment}};
        r["lambda"] =
            row.theory_lambda_value ? json(*row.theory_lambda_value) : json(nullptr);
        r["lambda_deviation_pct"] =
            row.lambda_deviation_pct ? json(*row.lambda_deviation_pct) : json(nullptr);
        r["alpha_deg"] =
            row.theory_alpha_deg ? json(*row.theory_alpha_deg) : json(nullptr);
        r["alpha_deviation_pct"] =
            row.alpha_deviation_pct ? json(*row.alpha_deviation_pct) : json(nullptr);
        jrows.push_back(std::move(r));
      }
      j["rows"] = std::move(jrows);
      j["golden_proximity"] = {
          {"half_width_ratio", proximity.half_width_ratio},
          {"truncation_height_ratio", proximity.truncation_height_ratio}};
      os << j.dump(2) << "\n";
    } else {
      os << "measured lambda " << fmt4(measured);
      if (alpha_flag) os << ", alpha " << fmt4(*alpha_flag) << " deg";
      os << "\n\nrank  theory            lambda    dev%     alpha     adev%\n";
      const auto fmt2 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
      };
      int rank = 1;
      for (const auto& row : rows) {
        char line[160];
        std::snprintf(
            line, sizeof line, "%-5d %-17s %-9s %-8s %-9s %s\n", rank++,
            row.theory.c_str(),
            row.theory_lambda_value ? fmt4(*row.theory_lambda_value).c_str() : "-",
            row.lambda_deviation_pct ? fmt2(*row.lambda_deviation_pct).c_str() : "-",
            row.theory_alpha_deg ? fmt4(*row.theory_alpha_deg).c_str() : "-",
            row.alpha_deviation_pct ? fmt2(*row.alpha_deviation_pct).c_str() : "-");
        os << line;
      }
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "\ngolden proximity: tan(39)/(phi/2) = %.5f, 0.45*sqrt(5) = %.5f\n",
                    proximity.half_width_ratio, proximity.truncation_height_ratio);
      os << buf;
    }
    emit(common, os.str());
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}

// ---------------------------------------------------------------- anomaly

int run_anomaly(const CommonArgs& common, const std::string& annotation_path) {
  Annotation annotation;
  RunConfig config;
  try {
    config = resolve_config(common);
    annotation = load_annotation(annotation_path);
    if (annotation.segment_groups.empty())
      raise(ErrorCode::BadAnnotation, "annotation has no segment groups to check");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    json jgroups = json::array();
    std::ostringstream table;
    size_t failures = 0;
    for (const auto& group : annotation.segment_groups) {
      const auto seg = [&](const SegmentRef& ref) {
        return Segment2{annotation.point(ref.p0), annotation.point(ref.p1)};
      };
      json jg{{"id", group.id}, {"kind", group.kind}};
      try {
        if (group.kind == "triple") {
          const ConcurrencyReport report =
              concurrency_defect(seg(group.segments[0]), seg(group.segments[1]),
                                 seg(group.segments[2]), config.anomaly);
          jg["verdict"] = to_string(report.verdict);
          jg["defect"] = report.defect;
          jg["defect_angle_deg"] = report.defect_angle_deg;
          jg["meet"] = point_json(report.meet12);
          jg["meet_is_ideal"] = report.meet_is_ideal;
          table << group.id << ": " << to_string(report.verdict)
                << " (defect angle " << fmt4(report.defect_angle_deg)
                << " deg, residual " << report.defect << ")\n";
        } else {
          const auto side = group.expected_side
                                ? side_from_string(*group.expected_side)
                                : std::nullopt;
          if (!side)
            raise(ErrorCode::BadAnnotation,
                  "pair group '" + group.id + "' needs expected_side left|right");
          const ConvergenceReport report = convergence_direction_check(
              seg(group.segments[0]), seg(group.segments[1]), *side, config.anomaly);
          jg["verdict"] = to_string(report.verdict);
          jg["expected_side"] = to_string(report.expected_side);
          jg["actual_side"] =
              report.actual_side ? json(to_string(*report.actual_side)) : json(nullptr);
          jg["angle_deg"] = report.angle_deg;
          jg["meet"] = point_json(report.meet);
          table << group.id << ": " << to_string(report.verdict) << " (expected "
                << to_string(report.expected_side) << ", angle "
                << fmt4(report.angle_deg) << " deg)\n";
        }
      } catch (const Error& e) {
        ++failures;
        jg["error"] = e.what();
        table << group.id << ": FAILED " << e.what() << "\n";
      }
      jgroups.push_back(std::move(jg));
    }

    if (failures == annotation.segment_groups.size()) {
      std::cerr << table.str();
      return kExitCompute;
    }
    std::ostringstream os;
    if (config.format == "json") {
      json j{{"schema", 1}, {"kind", "anomaly"}, {"groups", std::move(jgroups)}};
      os << j.dump(2) << "\n";
    } else {
      os << table.str();
    }
    emit(common, os.str());
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}

// ----------------------------------------------------------------- golden

int run_golden(const CommonArgs& common) {
  try {
    const RunConfig config = resolve_config(common);
    const FaceShape shape = golden_pentagon();
    const double r = truncation_ratio(shape.lambda);
    const double t = (2.0 * shape.lambda - 2.0) / (2.0 * shape.lambda - 1.0);
    const Vec2 ray = golden_ray_intersection();
    const GoldenProximity proximity = golden_proximity();

    std::ostringstream os;
    if (config.format == "json") {
      json j{{"schema", 1},
             {"kind", "golden"},
             {"alpha_phi_deg", shape.alpha_deg},
             {"lambda_phi", shape.lambda},
             {"truncation_ratio", r},
             {"cut_fraction", t},
             {"ray_intersection", {ray.x, ray.y}},
             {"half_width_ratio", proximity.half_width_ratio},
             {"truncation_height_ratio", proximity.truncation_height_ratio}};
      os << j.dump(2) << "\n";
    } else {
      os << "golden face shape\n";
      os << "  alpha_phi  = " << fmt4(shape.alpha_deg)
         << " deg  (2*arctan(phi/2))\n";
      os << "  lambda_phi = " << fmt4(shape.lambda) << "  (phi)\n";
      os << "  r = BC/AC  = " << fmt4(r) << "  (1/sqrt(5))\n";
      os << "  cut fraction t = " << fmt4(t) << "\n";
      os << "  45-deg ray meets the rhombus edge at (" << fmt4(ray.x) << ", "
         << fmt4(ray.y) << ")\n";
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "closeness to the 78-deg / 0.45 face: tan(39)/(phi/2) = %.5f, "
                    "0.45*sqrt(5) = %.5f\n",
                    proximity.half_width_ratio, proximity.truncation_height_ratio);
      os << buf;
    }
    emit(common, os.str());
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

// ------------------------------------------------------------------- mesh

int run_mesh(const CommonArgs& common, double alpha, std::optional<double> lambda) {
  try {
    SolidMesh mesh = build_rhombohedron(alpha);
    if (lambda && *lambda != 1.0) mesh = truncate(mesh, *lambda);
    emit(common, mesh_to_text(mesh));
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective analysis of the Melencolia I solid: construct "
               "truncated rhombohedra, render them in perspective, measure "
               "cross ratios from annotated images, fit shape and camera "
               "parameters, and score published shape theories."};
  app.require_subcommand(1);

  // measure
  auto* measure_cmd =
      app.add_subcommand("measure", "Per-face cross ratios of an annotation");
  CommonArgs measure_common;
  std::string measure_annotation;
  measure_cmd->add_option("--annotation", measure_annotation, "Annotation JSON")
      ->required();
  add_common(measure_cmd, measure_common);

  // synth
  auto* synth_cmd = app.add_subcommand(
      "synth", "Synthesize an annotation (and SVG) of a rendered solid");
  SynthArgs synth_args;
  synth_cmd->add_option("--alpha", synth_args.alpha, "Rhombus angle, degrees")
      ->required();
  synth_cmd->add_option("--lambda", synth_args.lambda, "Centerline cross ratio")
      ->required();
  synth_cmd->add_option("--noise", synth_args.noise, "Gaussian pixel noise sigma");
  synth_cmd->add_option("--seed", synth_args.seed, "Noise seed");
  synth_cmd->add_option("--svg", synth_args.svg_path, "Also write a labeled SVG");
  synth_cmd->add_option("--cam-distance", synth_args.camera_flags.distance,
                        "Camera distance from the solid");
  synth_cmd->add_option("--cam-azimuth", synth_args.camera_flags.azimuth_deg,
                        "Camera azimuth, degrees");
  synth_cmd->add_option("--cam-elevation", synth_args.camera_flags.elevation_deg,
                        "Camera elevation, degrees");
  synth_cmd->add_option("--cam-focal", synth_args.camera_flags.focal, "Focal length");
  synth_cmd->add_option("--cam-scale", synth_args.camera_flags.scale,
                        "Pixels per picture-plane unit");
  synth_cmd->add_option("--width", synth_args.camera_flags.width, "Image width, px");
  synth_cmd->add_option("--height", synth_args.camera_flags.height,
                        "Image height, px");
  add_common(synth_cmd, synth_args.common);

  // fit
  auto* fit_cmd =
      app.add_subcommand("fit", "Fit (alpha, lambda, camera) to an annotation");
  CommonArgs fit_common;
  std::string fit_annotation;
  double fit_alpha = 75.0, fit_lambda = 1.55;
  fit_cmd->add_option("--annotation", fit_annotation, "Annotation JSON")->required();
  fit_cmd->add_option("--alpha", fit_alpha, "Initial rhombus angle, degrees");
  fit_cmd->add_option("--lambda", fit_lambda, "Initial cross ratio");
  add_common(fit_cmd, fit_common);

  // theories
  auto* theories_cmd = app.add_subcommand(
      "theories", "Score shape theories against a measured cross ratio");
  CommonArgs theories_common;
  std::string theories_annotation, theories_file;
  double theories_lambda = 0.0, theories_alpha = 0.0;
  bool theories_no_builtin = false;
  auto* lambda_opt = theories_cmd->add_option("--lambda", theories_lambda,
                                              "Measured cross ratio");
  auto* alpha_opt = theories_cmd->add_option("--alpha", theories_alpha,
                                             "Measured rhombus angle, degrees");
  theories_cmd->add_option("--annotation", theories_annotation,
                           "Measure this annotation first");
  theories_cmd->add_option("--theories", theories_file,
                           "Additional theory catalog JSON");
  theories_cmd->add_flag("--no-builtin", theories_no_builtin,
                         "Drop the built-in catalog");
  add_common(theories_cmd, theories_common);

  // anomaly
  auto* anomaly_cmd = app.add_subcommand(
      "anomaly", "Concurrency / convergence checks on annotated segments");
  CommonArgs anomaly_common;
  std::string anomaly_annotation;
  anomaly_cmd->add_option("--annotation", anomaly_annotation, "Annotation JSON")
      ->required();
  add_common(anomaly_cmd, anomaly_common);

  // golden
  auto* golden_cmd =
      app.add_subcommand("golden", "Print the golden face shape parameters");
  CommonArgs golden_common;
  add_common(golden_cmd, golden_common);

  // mesh
  auto* mesh_cmd =
      app.add_subcommand("mesh", "Export the solid as a text polygon mesh");
  CommonArgs mesh_common;
  double mesh_alpha = 0.0;
  double mesh_lambda = 1.0;
  mesh_cmd->add_option("--alpha", mesh_alpha, "Rhombus angle, degrees")->required();
  auto* mesh_lambda_opt =
      mesh_cmd->add_option("--lambda", mesh_lambda, "Cross ratio (1 = untruncated)");
  add_common(mesh_cmd, mesh_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (measure_cmd->parsed()) return run_measure(measure_common, measure_annotation);
  if (synth_cmd->parsed()) return run_synth(synth_args, synth_cmd);
  if (fit_cmd->parsed())
    return run_fit(fit_common, fit_annotation, fit_alpha, fit_lambda);
  if (theories_cmd->parsed())
    return run_theories(
        theories_common,
        lambda_opt->count() ? std::optional<double>(theories_lambda) : std::nullopt,
        alpha_opt->count() ? std::optional<double>(theories_alpha) : std::nullopt,
        theories_annotation, theories_file, theories_no_builtin);
  if (anomaly_cmd->parsed()) return run_anomaly(anomaly_common, anomaly_annotation);
  if (golden_cmd->parsed()) return run_golden(golden_common);
  if (mesh_cmd->parsed())
    return run_mesh(mesh_common, mesh_alpha,
                    mesh_lambda_opt->count() ? std::optional<double>(mesh_lambda)
                                             : std::nullopt);
  return kExitUsage;
}
