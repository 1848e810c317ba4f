#pragma once

#include <optional>
#include <string>

#include "melsolid/analysis.hpp"
#include "melsolid/fit.hpp"
#include "melsolid/perspective.hpp"

namespace melsolid {

/// Look-at camera description used by the CLI and config files.
struct CameraSpec {
  double distance = 6.0;
  double azimuth_deg = 25.0;
  double elevation_deg = 18.0;
  double focal = 1.0;
  double scale = 1800.0;  // pixels per picture-plane unit
  double width = 1000.0;
  double height = 1000.0;
  std::optional<Vec3> target;  // defaults to the solid centroid
};

Camera make_camera(const CameraSpec& spec, const Vec3& default_target);

/// Run configuration: tolerances, fit controls, default camera, report
/// format. All fields optional in the JSON file; missing ones keep their
/// defaults.
struct RunConfig {
  MeasureOptions measure;
  AnomalyOptions anomaly;
  FitConfig fit;
  CameraSpec camera;
  std::string format = "table";  // "table" | "json"

  void validate() const;  // throws BadConfig
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json_text(const RunConfig& config, int indent = 2);

}  // namespace melsolid
