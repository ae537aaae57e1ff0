#pragma once

#include <string>

#include "soapgait/dynamics.hpp"
#include "soapgait/fields.hpp"
#include "soapgait/optimizer.hpp"

namespace soapgait {

struct OutputOptions {
  std::string directory = "out";
  bool csv = true;
  bool svg = true;
};

/// Everything one run needs, loadable from a single JSON file with strict
/// (unknown-key rejecting) validation.
struct RunConfig {
  SystemModel::Kind system = SystemModel::Kind::three_link;
  int n_segments = 99;
  ShapeBounds shape_bounds;
  double serpenoid_mode_scale = kSerpenoidModeScale;
  DragModel drag;
  GridSpec grid;
  OptimizerConfig optimizer;
  OutputOptions output;

  static RunConfig defaults(SystemModel::Kind kind);

  void validate() const;
  SystemModel make_model() const;
};

const char* system_name(SystemModel::Kind kind);
SystemModel::Kind system_from_name(const std::string& name);

/// Parse a config JSON document; unknown keys are rejected with their path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Serialized config echo (stable key order).
std::string config_to_json_string(const RunConfig& config);

}  // namespace soapgait
