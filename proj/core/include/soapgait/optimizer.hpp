#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "soapgait/gait.hpp"

namespace soapgait {

enum class OptimizeMode { max_displacement, max_efficiency };

const char* mode_name(OptimizeMode m);
OptimizeMode mode_from_name(const std::string& name);

/// Seed gait generator: circle centered on the extremum of the target
/// curvature component (or an explicit center), wound so the enclosed flux
/// starts positive.
struct SeedSpec {
  int n_waypoints = 100;
  double radius = 0.3;
  std::optional<Eigen::Vector2d> center;
};

struct OptimizerConfig {
  OptimizeMode mode = OptimizeMode::max_efficiency;
  Component component = Component::x;
  double strain_weight = 1.0;
  /// Convergence: max per-waypoint flow norm below this value.
  double tolerance = 2e-4;
  int max_iterations = 20000;
  /// Initial trial step sized so the largest waypoint move is this fraction
  /// of the grid width.
  double initial_step_fraction = 0.01;
  double backtrack_factor = 0.5;
  int max_backtracks = 40;
  int substeps_per_segment = kDefaultSubstepsPerSegment;
  int flux_subdivisions = kDefaultFluxSubdivisions;
  SeedSpec seed;

  void validate() const;
};

/// Local tangent/normal basis of a waypoint, from its neighbor chord.
/// n_hat points outward from the polygon.
struct WaypointFrame {
  Eigen::Vector2d t_hat = Eigen::Vector2d::Zero();
  Eigen::Vector2d n_hat = Eigen::Vector2d::Zero();
  double ell = 0.0;  // neighbor chord length
};

std::vector<WaypointFrame> waypoint_frames(const Gait& gait);

/// The three per-waypoint vector fields of the bubble flow.
struct GradientTerms {
  std::vector<Eigen::Vector2d> pressure;
  std::vector<Eigen::Vector2d> tension;
  std::vector<Eigen::Vector2d> strain;
};

/// Gradient of the enclosed-flux component w.r.t. each waypoint:
/// (ell/2) * H(beta_i) along the outward normal, signed by the winding.
/// Normal-directed by construction.
std::vector<Eigen::Vector2d> pressure_gradient(const Gait& gait,
                                               const FieldSet& fields,
                                               Component component);

/// Gradient of the discrete metric pathlength w.r.t. each waypoint;
/// combines neighbor-offset terms with the metric variation at segment
/// midpoints (which move at half the waypoint rate).
std::vector<Eigen::Vector2d> tension_gradient(const Gait& gait,
                                              const FieldSet& fields);

/// Tangential spacing-equalization term: proportional to the difference of
/// the adjacent metric segment lengths, directed along the local tangent.
std::vector<Eigen::Vector2d> strain_gradient(const Gait& gait,
                                             const FieldSet& fields,
                                             double weight);

GradientTerms gradient_terms(const Gait& gait, const FieldSet& fields,
                             const OptimizerConfig& config);

/// Mode-dependent waypoint velocity field:
///   max_displacement:  pressure + strain
///   max_efficiency:    pressure - (displacement_c / pathlength) * tension
///                      + strain
/// with the scaling taken from the true line-integral displacement.
std::vector<Eigen::Vector2d> flow_rhs(const Gait& gait, const FieldSet& fields,
                                      const OptimizerConfig& config,
                                      const GaitEvaluation& eval);

enum class TerminationReason {
  converged,
  max_iterations,
  self_intersection,
  stalled,
};

const char* termination_name(TerminationReason r);

struct IterationRecord {
  GroupElement displacement;
  double pathlength = 0.0;
  double efficiency = 0.0;  // target component
  double residual = 0.0;    // max per-waypoint flow norm
};

struct OptimizeResult {
  Gait gait;
  GaitEvaluation evaluation;
  std::vector<IterationRecord> history;
  TerminationReason reason = TerminationReason::max_iterations;
  int iterations = 0;
  int clamped_waypoints = 0;  // nonzero signals a mis-sized domain
  std::string message;
};

Gait seed_circle(const FieldSet& fields, Component component,
                 const SeedSpec& spec);

/// Evolve the seed by backtracking ascent on the mode objective until the
/// flow residual drops below tolerance.
OptimizeResult optimize(const FieldSet& fields, const OptimizerConfig& config,
                        const Gait& seed);

/// Convenience: build the default seed, then optimize.
OptimizeResult optimize(const FieldSet& fields, const OptimizerConfig& config);

}  // namespace soapgait
