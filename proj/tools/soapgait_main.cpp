// soapgait: compute the geometric locomotion structure of two-shape-variable
// drag-dominated swimmers and find optimal gaits via the bubble flow.
//
// Subcommands:
//   fields    sample connection / metric / height-function fields, export
//             CSV + JSON (+ SVG contour plots)
//   optimize  evolve a seed gait to a max-displacement or max-efficiency
//             equilibrium, export report + gait + overlay plot
//   simulate  evaluate a gait file: displacement, pathlength, efficiency,
//             world-frame trajectory

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "soapgait/config.hpp"
#include "soapgait/errors.hpp"
#include "soapgait/exports.hpp"
#include "soapgait/svg.hpp"

namespace {

using namespace soapgait;

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitConfigError = 3;
constexpr int kExitDomainError = 4;

struct Overrides {
  std::optional<std::string> system;
  std::optional<std::string> mode;
  std::optional<std::string> component;
  std::optional<std::string> out;
};

RunConfig resolve_config(const std::string& config_path,
                         const Overrides& ov) {
  RunConfig cfg;
  if (!config_path.empty()) {
    cfg = load_config(config_path);
    if (ov.system) cfg.system = system_from_name(*ov.system);
  } else {
    cfg = RunConfig::defaults(
        system_from_name(ov.system.value_or("three_link")));
  }
  if (ov.mode) cfg.optimizer.mode = mode_from_name(*ov.mode);
  if (ov.component) cfg.optimizer.component = component_from_name(*ov.component);
  if (ov.out) cfg.output.directory = *ov.out;
  cfg.validate();
  return cfg;
}

std::string axis_label(SystemModel::Kind kind, int axis) {
  if (kind == SystemModel::Kind::three_link) {
    return axis == 0 ? "alpha1 (rad)" : "alpha2 (rad)";
  }
  return axis == 0 ? "a1 (amplitude)" : "a2 (amplitude)";
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.output.directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory " + dir.string() + ": " +
                      ec.message());
  }
  return dir;
}

int run_fields(const RunConfig& cfg) {
  const auto dir = ensure_out_dir(cfg);
  const SystemModel model = cfg.make_model();
  const FieldSet fields = sample_fields(model, cfg.grid);

  std::cerr << "[soapgait] max omega_g condition number over grid: "
            << fields.max_omega_condition << "\n";

  const char* rows[3] = {"x", "y", "theta"};
  if (cfg.output.csv) {
    for (int r = 0; r < 3; ++r) {
      write_vector_grid_csv((dir / ("A_" + std::string(rows[r]) + ".csv")).string(),
                            fields.A.comp[r][0], fields.A.comp[r][1]);
      write_grid_csv((dir / ("dA_" + std::string(rows[r]) + ".csv")).string(),
                     fields.dA[r]);
      write_grid_csv((dir / ("H_" + std::string(rows[r]) + ".csv")).string(),
                     fields.H.h[r]);
    }
    write_grid_csv((dir / "M_11.csv").string(), fields.M.m11);
    write_grid_csv((dir / "M_12.csv").string(), fields.M.m12);
    write_grid_csv((dir / "M_22.csv").string(), fields.M.m22);
  }
  write_fields_json((dir / "fields.json").string(), fields, cfg);

  if (cfg.output.svg) {
    for (int r = 0; r < 3; ++r) {
      write_field_svg((dir / ("H_" + std::string(rows[r]) + ".svg")).string(),
                      fields.H.h[r],
                      "height function H_" + std::string(rows[r]) + " (" +
                          system_name(cfg.system) + ")",
                      axis_label(cfg.system, 0), axis_label(cfg.system, 1));
    }
  }
  std::cout << "fields written to " << dir.string() << "\n";
  return kExitOk;
}

int run_optimize(const RunConfig& cfg) {
  const auto dir = ensure_out_dir(cfg);
  const SystemModel model = cfg.make_model();
  const FieldSet fields = sample_fields(model, cfg.grid);

  const Gait seed = seed_circle(fields, cfg.optimizer.component, cfg.optimizer.seed);
  OptimizeResult result = optimize(fields, cfg.optimizer, seed);

  // Plot/report orientation convention: positive target displacement.
  const int comp = static_cast<int>(cfg.optimizer.component);
  const double disp_comp =
      (comp == 0)   ? result.evaluation.displacement.x
      : (comp == 1) ? result.evaluation.displacement.y
                    : result.evaluation.displacement.theta;
  if (disp_comp < 0.0) {
    result.gait = result.gait.reversed();
    result.evaluation = evaluate_gait(result.gait, fields,
                                      cfg.optimizer.substeps_per_segment,
                                      cfg.optimizer.flux_subdivisions);
  }

  if (result.clamped_waypoints > 0) {
    std::cerr << "[soapgait] warning: " << result.clamped_waypoints
              << " waypoint updates clamped to the grid bounds; the domain "
                 "may be too small for this gait\n";
  }

  write_report_json((dir / "report.json").string(), cfg, result, seed);
  write_gait_json((dir / "gait.json").string(), result.gait);
  if (cfg.output.svg) {
    const char* rows[3] = {"x", "y", "theta"};
    std::vector<GaitOverlay> overlays;
    overlays.push_back({&seed, /*dashed=*/true, "#202020"});
    overlays.push_back({&result.gait, /*dashed=*/false, "#000000"});
    write_field_svg((dir / "optimized_gait.svg").string(), fields.H.h[comp],
                    std::string(mode_name(cfg.optimizer.mode)) + " gait on H_" +
                        rows[comp] + " (" + system_name(cfg.system) + ")",
                    axis_label(cfg.system, 0), axis_label(cfg.system, 1),
                    overlays);
  }

  std::cout << termination_name(result.reason) << ": " << result.message
            << "\n";
  return result.reason == TerminationReason::converged ? kExitOk
                                                       : kExitNotConverged;
}

int run_simulate(const RunConfig& cfg, const std::string& gait_path) {
  const auto dir = ensure_out_dir(cfg);
  const Gait gait = load_gait_json(gait_path);
  const SystemModel model = cfg.make_model();
  const FieldSet fields = sample_fields(model, cfg.grid);

  const auto trajectory = integrate_trajectory(
      gait, [&fields](const Shape& b) { return fields.connection_at(b); },
      cfg.optimizer.substeps_per_segment);
  const GaitEvaluation eval = evaluate_gait(
      gait, fields, cfg.optimizer.substeps_per_segment,
      cfg.optimizer.flux_subdivisions);

  write_trajectory_csv((dir / "trajectory.csv").string(), trajectory);
  write_evaluation_json((dir / "evaluation.json").string(), gait, eval);
  if (cfg.output.svg) {
    write_trajectory_svg((dir / "world_trajectory.svg").string(), trajectory,
                         model);
  }
  std::cout << "displacement per cycle: (" << eval.displacement.x << ", "
            << eval.displacement.y << ", " << eval.displacement.theta
            << "), pathlength " << eval.pathlength << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric gait analysis and soap-bubble gait optimization "
               "for drag-dominated swimmers"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  std::string gait_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--system", ov.system,
                    "system override: three_link|serpenoid");
    sub->add_option("--out", ov.out, "output directory override");
  };

  CLI::App* fields_cmd =
      app.add_subcommand("fields", "sample and export the shape-space fields");
  add_common(fields_cmd);

  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "run the bubble-flow gait optimizer");
  add_common(optimize_cmd);
  optimize_cmd->add_option("--mode", ov.mode,
                           "objective: max_displacement|max_efficiency");
  optimize_cmd->add_option("--component", ov.component,
                           "displacement component: x|y|theta");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "evaluate a gait JSON file");
  simulate_cmd->add_option("gait", gait_path, "gait JSON file")->required();
  add_common(simulate_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = resolve_config(config_path, ov);
    if (fields_cmd->parsed()) return run_fields(cfg);
    if (optimize_cmd->parsed()) return run_optimize(cfg);
    if (simulate_cmd->parsed()) return run_simulate(cfg, gait_path);
  } catch (const soapgait::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const soapgait::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}
