#include "soapgait/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soapgait/errors.hpp"

namespace soapgait {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError("expected an object at " + path);
  }
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' at " + path);
    }
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError(std::string("expected a number at ") + path + "." + key);
  }
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw ConfigError(std::string("expected an integer at ") + path + "." + key);
  }
  return obj[key].get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    throw ConfigError(std::string("expected a boolean at ") + path + "." + key);
  }
  return obj[key].get<bool>();
}

std::string get_string(const json& obj, const std::string& path,
                       const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw ConfigError(std::string("expected a string at ") + path + "." + key);
  }
  return obj[key].get<std::string>();
}

ShapeBounds get_bounds(const json& obj, const std::string& path,
                       const char* key, const ShapeBounds& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& b = obj[key];
  if (!b.is_array() || b.size() != 2 || !b[0].is_array() || !b[1].is_array() ||
      b[0].size() != 2 || b[1].size() != 2) {
    throw ConfigError(std::string("expected [[min,max],[min,max]] at ") + path +
                      "." + key);
  }
  ShapeBounds out;
  out.b1 = {b[0][0].get<double>(), b[0][1].get<double>()};
  out.b2 = {b[1][0].get<double>(), b[1][1].get<double>()};
  return out;
}

json bounds_to_json(const ShapeBounds& b) {
  return json::array({json::array({b.b1.min, b.b1.max}),
                      json::array({b.b2.min, b.b2.max})});
}

}  // namespace

const char* system_name(SystemModel::Kind kind) {
  return kind == SystemModel::Kind::three_link ? "three_link" : "serpenoid";
}

SystemModel::Kind system_from_name(const std::string& name) {
  if (name == "three_link") return SystemModel::Kind::three_link;
  if (name == "serpenoid") return SystemModel::Kind::serpenoid;
  throw ConfigError("unknown system '" + name +
                    "' (expected three_link|serpenoid)");
}

RunConfig RunConfig::defaults(SystemModel::Kind kind) {
  RunConfig cfg;
  cfg.system = kind;
  if (kind == SystemModel::Kind::three_link) {
    cfg.n_segments = 99;
    cfg.shape_bounds = {{-3.0, 3.0}, {-3.0, 3.0}};
  } else {
    cfg.n_segments = 100;
    cfg.shape_bounds = {{-6.0, 6.0}, {-6.0, 6.0}};
  }
  cfg.grid.bounds = cfg.shape_bounds;
  cfg.grid.n1 = cfg.grid.n2 = 101;
  return cfg;
}

void RunConfig::validate() const {
  drag.validate();
  grid.validate();
  optimizer.validate();
  if (system == SystemModel::Kind::three_link) {
    if (n_segments < 3 || n_segments % 3 != 0) {
      throw ConfigError("three_link n_segments must be >= 3 and divisible by 3");
    }
  } else if (n_segments < 16) {
    throw ConfigError("serpenoid n_segments must be >= 16");
  }
  if (grid.bounds.b1.min < shape_bounds.b1.min ||
      grid.bounds.b1.max > shape_bounds.b1.max ||
      grid.bounds.b2.min < shape_bounds.b2.min ||
      grid.bounds.b2.max > shape_bounds.b2.max) {
    throw ConfigError("grid bounds must lie within the shape bounds");
  }
  if (output.directory.empty()) {
    throw ConfigError("output directory must be non-empty");
  }
}

SystemModel RunConfig::make_model() const {
  return SystemModel(system, n_segments, drag, shape_bounds,
                     serpenoid_mode_scale);
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config",
             {"system", "body", "drag", "grid", "optimizer", "output"});

  const SystemModel::Kind kind =
      system_from_name(get_string(root, "config", "system", "three_link"));
  RunConfig cfg = RunConfig::defaults(kind);

  if (root.contains("body")) {
    const json& body = root["body"];
    check_keys(body, "body",
               {"n_segments", "shape_bounds", "serpenoid_mode_scale"});
    cfg.n_segments = get_int(body, "body", "n_segments", cfg.n_segments);
    cfg.shape_bounds = get_bounds(body, "body", "shape_bounds", cfg.shape_bounds);
    cfg.serpenoid_mode_scale = get_number(body, "body", "serpenoid_mode_scale",
                                          cfg.serpenoid_mode_scale);
    if (!root.contains("grid") || !root["grid"].contains("bounds")) {
      cfg.grid.bounds = cfg.shape_bounds;
    }
  }
  if (root.contains("drag")) {
    const json& drag = root["drag"];
    check_keys(drag, "drag", {"c_tangential", "c_normal"});
    cfg.drag.c_tangential =
        get_number(drag, "drag", "c_tangential", cfg.drag.c_tangential);
    cfg.drag.c_normal = get_number(drag, "drag", "c_normal", cfg.drag.c_normal);
  }
  if (root.contains("grid")) {
    const json& grid = root["grid"];
    check_keys(grid, "grid", {"n1", "n2", "bounds"});
    cfg.grid.n1 = get_int(grid, "grid", "n1", cfg.grid.n1);
    cfg.grid.n2 = get_int(grid, "grid", "n2", cfg.grid.n2);
    cfg.grid.bounds = get_bounds(grid, "grid", "bounds", cfg.grid.bounds);
  }
  if (root.contains("optimizer")) {
    const json& opt = root["optimizer"];
    check_keys(opt, "optimizer",
               {"mode", "component", "strain_weight", "tolerance",
                "max_iterations", "initial_step_fraction", "backtrack_factor",
                "max_backtracks", "substeps_per_segment", "flux_subdivisions",
                "seed"});
    cfg.optimizer.mode = mode_from_name(
        get_string(opt, "optimizer", "mode", mode_name(cfg.optimizer.mode)));
    cfg.optimizer.component = component_from_name(get_string(
        opt, "optimizer", "component", component_name(cfg.optimizer.component)));
    cfg.optimizer.strain_weight =
        get_number(opt, "optimizer", "strain_weight", cfg.optimizer.strain_weight);
    cfg.optimizer.tolerance =
        get_number(opt, "optimizer", "tolerance", cfg.optimizer.tolerance);
    cfg.optimizer.max_iterations =
        get_int(opt, "optimizer", "max_iterations", cfg.optimizer.max_iterations);
    cfg.optimizer.initial_step_fraction =
        get_number(opt, "optimizer", "initial_step_fraction",
                   cfg.optimizer.initial_step_fraction);
    cfg.optimizer.backtrack_factor = get_number(
        opt, "optimizer", "backtrack_factor", cfg.optimizer.backtrack_factor);
    cfg.optimizer.max_backtracks =
        get_int(opt, "optimizer", "max_backtracks", cfg.optimizer.max_backtracks);
    cfg.optimizer.substeps_per_segment =
        get_int(opt, "optimizer", "substeps_per_segment",
                cfg.optimizer.substeps_per_segment);
    cfg.optimizer.flux_subdivisions = get_int(
        opt, "optimizer", "flux_subdivisions", cfg.optimizer.flux_subdivisions);
    if (opt.contains("seed")) {
      const json& seed = opt["seed"];
      check_keys(seed, "optimizer.seed", {"n_waypoints", "radius", "center"});
      cfg.optimizer.seed.n_waypoints = get_int(
          seed, "optimizer.seed", "n_waypoints", cfg.optimizer.seed.n_waypoints);
      cfg.optimizer.seed.radius =
          get_number(seed, "optimizer.seed", "radius", cfg.optimizer.seed.radius);
      if (seed.contains("center") && !seed["center"].is_null()) {
        const json& c = seed["center"];
        if (!c.is_array() || c.size() != 2) {
          throw ConfigError("expected [b1, b2] at optimizer.seed.center");
        }
        cfg.optimizer.seed.center =
            Eigen::Vector2d(c[0].get<double>(), c[1].get<double>());
      }
    }
  }
  if (root.contains("output")) {
    const json& out = root["output"];
    check_keys(out, "output", {"directory", "csv", "svg"});
    cfg.output.directory =
        get_string(out, "output", "directory", cfg.output.directory);
    cfg.output.csv = get_bool(out, "output", "csv", cfg.output.csv);
    cfg.output.svg = get_bool(out, "output", "svg", cfg.output.svg);
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json_string(const RunConfig& cfg) {
  json root;
  root["system"] = system_name(cfg.system);
  root["body"] = {{"n_segments", cfg.n_segments},
                  {"shape_bounds", bounds_to_json(cfg.shape_bounds)},
                  {"serpenoid_mode_scale", cfg.serpenoid_mode_scale}};
  root["drag"] = {{"c_tangential", cfg.drag.c_tangential},
                  {"c_normal", cfg.drag.c_normal}};
  root["grid"] = {{"n1", cfg.grid.n1},
                  {"n2", cfg.grid.n2},
                  {"bounds", bounds_to_json(cfg.grid.bounds)}};
  json seed = {{"n_waypoints", cfg.optimizer.seed.n_waypoints},
               {"radius", cfg.optimizer.seed.radius}};
  if (cfg.optimizer.seed.center) {
    seed["center"] = json::array(
        {cfg.optimizer.seed.center->x(), cfg.optimizer.seed.center->y()});
  } else {
    seed["center"] = nullptr;
  }
  root["optimizer"] = {
      {"mode", mode_name(cfg.optimizer.mode)},
      {"component", component_name(cfg.optimizer.component)},
      {"strain_weight", cfg.optimizer.strain_weight},
      {"tolerance", cfg.optimizer.tolerance},
      {"max_iterations", cfg.optimizer.max_iterations},
      {"initial_step_fraction", cfg.optimizer.initial_step_fraction},
      {"backtrack_factor", cfg.optimizer.backtrack_factor},
      {"max_backtracks", cfg.optimizer.max_backtracks},
      {"substeps_per_segment", cfg.optimizer.substeps_per_segment},
      {"flux_subdivisions", cfg.optimizer.flux_subdivisions},
      {"seed", seed}};
  root["output"] = {{"directory", cfg.output.directory},
                    {"csv", cfg.output.csv},
                    {"svg", cfg.output.svg}};
  return root.dump(2) + "\n";
}

}  // namespace soapgait
