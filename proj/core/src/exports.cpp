#include "soapgait/exports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soapgait/errors.hpp"

namespace soapgait {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file: " + path);
  }
  return out;
}

json grid_values(const FieldGrid& g) {
  return json(g.values());
}

json group_to_json(const GroupElement& g) {
  return {{"x", g.x}, {"y", g.y}, {"theta", g.theta}};
}

json gait_to_json(const Gait& gait) {
  json waypoints = json::array();
  for (const auto& w : gait.waypoints) {
    waypoints.push_back(json::array({w.x(), w.y()}));
  }
  return {{"waypoints", waypoints}, {"orientation", gait.orientation}};
}

json evaluation_to_json(const GaitEvaluation& eval) {
  return {{"displacement", group_to_json(eval.displacement)},
          {"pathlength", eval.pathlength},
          {"enclosed_flux", json::array({eval.enclosed_flux(0),
                                         eval.enclosed_flux(1),
                                         eval.enclosed_flux(2)})},
          {"efficiency",
           {{"x", eval.efficiency(0)},
            {"y", eval.efficiency(1)},
            {"theta", eval.efficiency(2)}}}};
}

}  // namespace

void write_grid_csv(const std::string& path, const FieldGrid& grid) {
  std::ofstream out = open_out(path);
  out << "beta1,beta2,value\n";
  const GridSpec& spec = grid.spec();
  for (int i = 0; i < spec.n1; ++i) {
    for (int j = 0; j < spec.n2; ++j) {
      out << num(spec.beta1(i)) << ',' << num(spec.beta2(j)) << ','
          << num(grid.at(i, j)) << '\n';
    }
  }
}

void write_vector_grid_csv(const std::string& path, const FieldGrid& col1,
                           const FieldGrid& col2) {
  std::ofstream out = open_out(path);
  out << "beta1,beta2,a1,a2\n";
  const GridSpec& spec = col1.spec();
  for (int i = 0; i < spec.n1; ++i) {
    for (int j = 0; j < spec.n2; ++j) {
      out << num(spec.beta1(i)) << ',' << num(spec.beta2(j)) << ','
          << num(col1.at(i, j)) << ',' << num(col2.at(i, j)) << '\n';
    }
  }
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open csv file: " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      row.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_fields_json(const std::string& path, const FieldSet& fields,
                       const RunConfig& config) {
  json root;
  root["config"] = json::parse(config_to_json_string(config));
  root["grid"] = {{"n1", fields.spec.n1},
                  {"n2", fields.spec.n2},
                  {"h1", fields.spec.h1()},
                  {"h2", fields.spec.h2()},
                  {"bounds",
                   json::array({json::array({fields.spec.bounds.b1.min,
                                             fields.spec.bounds.b1.max}),
                                json::array({fields.spec.bounds.b2.min,
                                             fields.spec.bounds.b2.max})})},
                  {"node_order", "row-major (beta1 outer, beta2 inner)"}};
  root["max_omega_condition"] = fields.max_omega_condition;
  const char* row_names[3] = {"x", "y", "theta"};
  json a;
  for (int r = 0; r < 3; ++r) {
    a[row_names[r]] = {{"a1", grid_values(fields.A.comp[r][0])},
                       {"a2", grid_values(fields.A.comp[r][1])}};
  }
  root["connection"] = a;
  root["metric"] = {{"m11", grid_values(fields.M.m11)},
                    {"m12", grid_values(fields.M.m12)},
                    {"m22", grid_values(fields.M.m22)}};
  json dm;
  const char* comp_names[3] = {"m11", "m12", "m22"};
  for (int c = 0; c < 3; ++c) {
    dm[comp_names[c]] = {{"d_beta1", grid_values(fields.dM.d1[c])},
                         {"d_beta2", grid_values(fields.dM.d2[c])}};
  }
  root["metric_gradient"] = dm;
  json da, h;
  for (int r = 0; r < 3; ++r) {
    da[row_names[r]] = grid_values(fields.dA[r]);
    h[row_names[r]] = grid_values(fields.H.h[r]);
  }
  root["exterior_derivative"] = da;
  root["height_functions"] = h;

  std::ofstream out = open_out(path);
  out << root.dump(2) << '\n';
}

void write_gait_json(const std::string& path, const Gait& gait) {
  std::ofstream out = open_out(path);
  out << gait_to_json(gait).dump(2) << '\n';
}

Gait parse_gait_json(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("gait file " + origin + " is not valid JSON: " + e.what());
  }
  if (!root.is_object() || !root.contains("waypoints")) {
    throw ConfigError("gait file " + origin + ": missing 'waypoints'");
  }
  for (const auto& item : root.items()) {
    if (item.key() != "waypoints" && item.key() != "orientation") {
      throw ConfigError("gait file " + origin + ": unknown key '" +
                        item.key() + "'");
    }
  }
  const json& wps = root["waypoints"];
  if (!wps.is_array() || wps.size() < static_cast<std::size_t>(kMinWaypoints)) {
    throw ConfigError("gait file " + origin + ": 'waypoints' must be a list of at least " +
                      std::to_string(kMinWaypoints) + " [b1,b2] pairs");
  }
  Gait gait;
  for (const auto& w : wps) {
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() ||
        !w[1].is_number()) {
      throw ConfigError("gait file " + origin +
                        ": waypoints must be [b1,b2] number pairs");
    }
    gait.waypoints.emplace_back(w[0].get<double>(), w[1].get<double>());
  }
  gait.orientation = 1;
  if (root.contains("orientation")) {
    if (!root["orientation"].is_number_integer()) {
      throw ConfigError("gait file " + origin + ": orientation must be +1 or -1");
    }
    gait.orientation = root["orientation"].get<int>();
  }
  try {
    validate_gait(gait);
  } catch (const std::exception& e) {
    throw ConfigError("gait file " + origin + ": " + e.what());
  }
  return gait;
}

Gait load_gait_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open gait file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gait_json(buf.str(), path);
}

void write_evaluation_json(const std::string& path, const Gait& gait,
                           const GaitEvaluation& eval) {
  json root = gait_to_json(gait);
  root["evaluation"] = evaluation_to_json(eval);
  std::ofstream out = open_out(path);
  out << root.dump(2) << '\n';
}

void write_report_json(const std::string& path, const RunConfig& config,
                       const OptimizeResult& result, const Gait& seed) {
  json root;
  root["config"] = json::parse(config_to_json_string(config));
  root["termination"] = {{"reason", termination_name(result.reason)},
                         {"iterations", result.iterations},
                         {"message", result.message},
                         {"clamped_waypoints", result.clamped_waypoints}};
  json history = json::array();
  for (const auto& rec : result.history) {
    history.push_back({{"displacement", group_to_json(rec.displacement)},
                       {"pathlength", rec.pathlength},
                       {"efficiency", rec.efficiency},
                       {"residual", rec.residual}});
  }
  root["history"] = history;
  root["seed_gait"] = gait_to_json(seed);
  root["gait"] = gait_to_json(result.gait);
  root["evaluation"] = evaluation_to_json(result.evaluation);

  std::ofstream out = open_out(path);
  out << root.dump(2) << '\n';
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<TrajectorySample>& trajectory) {
  std::ofstream out = open_out(path);
  out << "t,beta1,beta2,x,y,theta\n";
  for (const auto& s : trajectory) {
    out << num(s.t) << ',' << num(s.beta.b1) << ',' << num(s.beta.b2) << ','
        << num(s.g.x) << ',' << num(s.g.y) << ',' << num(s.g.theta) << '\n';
  }
}

}  // namespace soapgait
