#include "melsolid/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace melsolid {

using nlohmann::json;

Camera make_camera(const CameraSpec& spec, const Vec3& default_target) {
  const Vec3 target = spec.target.value_or(default_target);
  const double az = deg2rad(spec.azimuth_deg);
  const double el = deg2rad(spec.elevation_deg);
  const Vec3 eye = target + Vec3{spec.distance * std::cos(el) * std::cos(az),
                                 spec.distance * std::cos(el) * std::sin(az),
                                 spec.distance * std::sin(el)};
  return Camera::look_at(eye, target, Vec3{0, 0, 1}, spec.focal, spec.scale,
                         spec.width, spec.height);
}

void RunConfig::validate() const {
  if (!(measure.collinearity_tol_px > 0.0))
    raise(ErrorCode::BadConfig, "tolerances.collinearity_px must be > 0");
  if (!(measure.condition_max > 0.0))
    raise(ErrorCode::BadConfig, "tolerances.condition_max must be > 0");
  if (!(anomaly.parallel_angle_deg > 0.0))
    raise(ErrorCode::BadConfig, "tolerances.parallel_angle_deg must be > 0");
  if (fit.max_evals < 1) raise(ErrorCode::BadConfig, "fit.max_evals must be >= 1");
  if (fit.restarts < 0 || fit.random_restarts < 0)
    raise(ErrorCode::BadConfig, "fit restart counts must be >= 0");
  if (format != "table" && format != "json")
    raise(ErrorCode::BadConfig, "format must be table|json");
  if (!(camera.distance > 0.0) || !(camera.focal > 0.0) || camera.scale == 0.0)
    raise(ErrorCode::BadConfig, "camera distance/focal/scale must be positive");
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::BadConfig, std::string("invalid config JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("schema", 0) != 1)
      raise(ErrorCode::BadConfig, "config file needs \"schema\": 1");
    RunConfig c;
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      c.measure.collinearity_tol_px =
          t.value("collinearity_px", c.measure.collinearity_tol_px);
      c.measure.condition_max = t.value("condition_max", c.measure.condition_max);
      c.anomaly.parallel_angle_deg =
          t.value("parallel_angle_deg", c.anomaly.parallel_angle_deg);
    }
    if (j.contains("fit")) {
      const auto& f = j["fit"];
      c.fit.max_evals = f.value("max_evals", c.fit.max_evals);
      c.fit.restarts = f.value("restarts", c.fit.restarts);
      c.fit.random_restarts = f.value("random_restarts", c.fit.random_restarts);
      c.fit.seed = f.value("seed", c.fit.seed);
      c.fit.reflect = f.value("reflect", c.fit.reflect);
      c.fit.expand = f.value("expand", c.fit.expand);
      c.fit.contract = f.value("contract", c.fit.contract);
      c.fit.shrink = f.value("shrink", c.fit.shrink);
      c.fit.ftol = f.value("ftol", c.fit.ftol);
      c.fit.rms_threshold = f.value("rms_threshold", c.fit.rms_threshold);
    }
    if (j.contains("camera")) {
      const auto& cam = j["camera"];
      c.camera.distance = cam.value("distance", c.camera.distance);
      c.camera.azimuth_deg = cam.value("azimuth_deg", c.camera.azimuth_deg);
      c.camera.elevation_deg = cam.value("elevation_deg", c.camera.elevation_deg);
      c.camera.focal = cam.value("focal", c.camera.focal);
      c.camera.scale = cam.value("scale", c.camera.scale);
      c.camera.width = cam.value("width", c.camera.width);
      c.camera.height = cam.value("height", c.camera.height);
      if (cam.contains("target")) {
        const auto& t = cam["target"];
        if (!t.is_array() || t.size() != 3)
          raise(ErrorCode::BadConfig, "camera.target must be [x, y, z]");
        c.camera.target = Vec3{t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
      }
    }
    c.format = j.value("format", c.format);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    raise(ErrorCode::BadConfig, std::string("bad config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string run_config_to_json_text(const RunConfig& c, int indent) {
  json j;
  j["schema"] = 1;
  j["tolerances"] = {{"collinearity_px", c.measure.collinearity_tol_px},
                     {"condition_max", c.measure.condition_max},
                     {"parallel_angle_deg", c.anomaly.parallel_angle_deg}};
  j["fit"] = {{"max_evals", c.fit.max_evals},
              {"restarts", c.fit.restarts},
              {"random_restarts", c.fit.random_restarts},
              {"seed", c.fit.seed},
              {"reflect", c.fit.reflect},
              {"expand", c.fit.expand},
              {"contract", c.fit.contract},
              {"shrink", c.fit.shrink},
              {"ftol", c.fit.ftol},
              {"rms_threshold", c.fit.rms_threshold}};
  json cam = {{"distance", c.camera.distance},
              {"azimuth_deg", c.camera.azimuth_deg},
              {"elevation_deg", c.camera.elevation_deg},
              {"focal", c.camera.focal},
              {"scale", c.camera.scale},
              {"width", c.camera.width},
              {"height", c.camera.height}};
  if (c.camera.target)
    cam["target"] = {c.camera.target->x, c.camera.target->y, c.camera.target->z};
  j["camera"] = std::move(cam);
  j["format"] = c.format;
  return j.dump(indent) + "\n";
}

}  // namespace melsolid
