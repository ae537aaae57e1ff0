#include "soapgait/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "soapgait/errors.hpp"

namespace soapgait {
namespace {

constexpr double kPi = 3.14159265358979323846;

double component_of(const GroupElement& g, Component c) {
  switch (c) {
    case Component::x: return g.x;
    case Component::y: return g.y;
    case Component::theta: return g.theta;
  }
  return 0.0;
}

double objective_of(const GaitEvaluation& eval, const OptimizerConfig& cfg) {
  const double d = component_of(eval.displacement, cfg.component);
  return cfg.mode == OptimizeMode::max_displacement ? d : d / eval.pathlength;
}

// Metric length of the segment a -> b with the metric at its midpoint.
double segment_metric_length(const FieldSet& fields, const Eigen::Vector2d& a,
                             const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const Eigen::Matrix2d m = fields.metric_at(Shape::from(0.5 * (a + b)));
  return std::sqrt(std::max(d.dot(m * d), 0.0));
}

}  // namespace

const char* mode_name(OptimizeMode m) {
  return m == OptimizeMode::max_displacement ? "max_displacement"
                                             : "max_efficiency";
}

OptimizeMode mode_from_name(const std::string& name) {
  if (name == "max_displacement") return OptimizeMode::max_displacement;
  if (name == "max_efficiency") return OptimizeMode::max_efficiency;
  throw ConfigError("unknown mode '" + name +
                    "' (expected max_displacement|max_efficiency)");
}

const char* termination_name(TerminationReason r) {
  switch (r) {
    case TerminationReason::converged: return "converged";
    case TerminationReason::max_iterations: return "max_iterations";
    case TerminationReason::self_intersection: return "self_intersection";
    case TerminationReason::stalled: return "stalled";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (!(strain_weight > 0.0)) throw ConfigError("strain_weight must be > 0");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(initial_step_fraction > 0.0) || initial_step_fraction > 0.5) {
    throw ConfigError("initial_step_fraction must be in (0, 0.5]");
  }
  if (!(backtrack_factor > 0.0) || !(backtrack_factor < 1.0)) {
    throw ConfigError("backtrack_factor must be in (0, 1)");
  }
  if (max_backtracks < 1) throw ConfigError("max_backtracks must be >= 1");
  if (substeps_per_segment < 4) {
    throw ConfigError("substeps_per_segment must be >= 4");
  }
  if (flux_subdivisions < 1) throw ConfigError("flux_subdivisions must be >= 1");
  if (seed.n_waypoints < kMinWaypoints) {
    throw ConfigError("seed must have at least " +
                      std::to_string(kMinWaypoints) + " waypoints");
  }
  if (!(seed.radius > 0.0)) throw ConfigError("seed radius must be > 0");
}

std::vector<WaypointFrame> waypoint_frames(const Gait& gait) {
  validate_gait(gait);
  const std::size_t n = gait.waypoints.size();
  const int winding = polygon_winding(gait.waypoints);
  const double w = (winding != 0) ? winding : gait.orientation;

  std::vector<WaypointFrame> frames(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& prev = gait.waypoints[(i + n - 1) % n];
    const Eigen::Vector2d& next = gait.waypoints[(i + 1) % n];
    const Eigen::Vector2d chord = next - prev;
    const double ell = chord.norm();
    frames[i].ell = ell;
    if (ell > 0.0) {
      frames[i].t_hat = chord / ell;
      // Rotate the tangent -90 deg, then flip by the winding so the normal
      // points out of the polygon.
      frames[i].n_hat =
          w * Eigen::Vector2d(frames[i].t_hat.y(), -frames[i].t_hat.x());
    }
  }
  return frames;
}

std::vector<Eigen::Vector2d> pressure_gradient(const Gait& gait,
                                               const FieldSet& fields,
                                               Component component) {
  const std::vector<WaypointFrame> frames = waypoint_frames(gait);
  const int winding = polygon_winding(gait.waypoints);
  const double w = (winding != 0) ? winding : gait.orientation;
  const int c = static_cast<int>(component);

  std::vector<Eigen::Vector2d> out(gait.waypoints.size());
  for (std::size_t i = 0; i < gait.waypoints.size(); ++i) {
    const double h = fields.H.h[c].interpolate(Shape::from(gait.waypoints[i]));
    out[i] = w * 0.5 * frames[i].ell * h * frames[i].n_hat;
  }
  return out;
}

std::vector<Eigen::Vector2d> tension_gradient(const Gait& gait,
                                              const FieldSet& fields) {
  validate_gait(gait);
  const std::size_t n = gait.waypoints.size();
  std::vector<Eigen::Vector2d> out(n, Eigen::Vector2d::Zero());

  // Per-segment contribution to the gradient at one endpoint. sign = -1 for
  // the tail (d dbeta / d beta_i = -I), +1 for the head.
  auto segment_term = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                          double sign) -> Eigen::Vector2d {
    const Eigen::Vector2d d = b - a;
    const Shape mid = Shape::from(0.5 * (a + b));
    const Eigen::Matrix2d m = fields.metric_at(mid);
    const double len = std::sqrt(std::max(d.dot(m * d), 0.0));
    if (!(len > 0.0)) return Eigen::Vector2d::Zero();
    const std::array<Eigen::Matrix2d, 2> dm = fields.metric_gradient_at(mid);
    Eigen::Vector2d g;
    for (int k = 0; k < 2; ++k) {
      // Endpoint moves the offset at full rate, the midpoint at half rate.
      g(k) = (sign * 2.0 * (m * d)(k) + 0.5 * d.dot(dm[k] * d)) / (2.0 * len);
    }
    return g;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& prev = gait.waypoints[(i + n - 1) % n];
    const Eigen::Vector2d& here = gait.waypoints[i];
    const Eigen::Vector2d& next = gait.waypoints[(i + 1) % n];
    out[i] = segment_term(prev, here, +1.0) + segment_term(here, next, -1.0);
  }
  return out;
}

std::vector<Eigen::Vector2d> strain_gradient(const Gait& gait,
                                             const FieldSet& fields,
                                             double weight) {
  const std::vector<WaypointFrame> frames = waypoint_frames(gait);
  const std::size_t n = gait.waypoints.size();
  std::vector<Eigen::Vector2d> out(n, Eigen::Vector2d::Zero());
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& prev = gait.waypoints[(i + n - 1) % n];
    const Eigen::Vector2d& here = gait.waypoints[i];
    const Eigen::Vector2d& next = gait.waypoints[(i + 1) % n];
    const double l_next = segment_metric_length(fields, here, next);
    const double l_prev = segment_metric_length(fields, prev, here);
    out[i] = weight * (l_next - l_prev) * frames[i].t_hat;
  }
  return out;
}

GradientTerms gradient_terms(const Gait& gait, const FieldSet& fields,
                             const OptimizerConfig& config) {
  GradientTerms terms;
  terms.pressure = pressure_gradient(gait, fields, config.component);
  terms.tension = tension_gradient(gait, fields);
  terms.strain = strain_gradient(gait, fields, config.strain_weight);
  return terms;
}

std::vector<Eigen::Vector2d> flow_rhs(const Gait& gait, const FieldSet& fields,
                                      const OptimizerConfig& config,
                                      const GaitEvaluation& eval) {
  const GradientTerms terms = gradient_terms(gait, fields, config);
  const std::size_t n = gait.waypoints.size();
  std::vector<Eigen::Vector2d> rhs(n);
  if (config.mode == OptimizeMode::max_displacement) {
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = terms.pressure[i] + terms.strain[i];
    }
  } else {
    const double ratio =
        component_of(eval.displacement, config.component) / eval.pathlength;
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = terms.pressure[i] - ratio * terms.tension[i] + terms.strain[i];
    }
  }
  return rhs;
}

Gait seed_circle(const FieldSet& fields, Component component,
                 const SeedSpec& spec) {
  const GridSpec& grid = fields.spec;
  const int c = static_cast<int>(component);

  Eigen::Vector2d center;
  if (spec.center) {
    center = *spec.center;
  } else {
    // Extremum of |H_c| over nodes far enough from the boundary that the
    // seed circle fits inside the grid.
    const double margin1 = spec.radius + grid.h1();
    const double margin2 = spec.radius + grid.h2();
    double best = -1.0;
    center = Eigen::Vector2d::Zero();
    for (int i = 0; i < grid.n1; ++i) {
      const double b1 = grid.beta1(i);
      if (b1 - grid.bounds.b1.min < margin1 || grid.bounds.b1.max - b1 < margin1)
        continue;
      for (int j = 0; j < grid.n2; ++j) {
        const double b2 = grid.beta2(j);
        if (b2 - grid.bounds.b2.min < margin2 ||
            grid.bounds.b2.max - b2 < margin2)
          continue;
        const double v = std::abs(fields.H.h[c].at(i, j));
        if (v > best) {
          best = v;
          center = Eigen::Vector2d(b1, b2);
        }
      }
    }
    if (best < 0.0) {
      throw DomainError("seed circle does not fit inside the field grid");
    }
  }

  const double h_center = fields.H.h[c].interpolate(Shape::from(center));
  const int winding = (h_center >= 0.0) ? +1 : -1;

  Gait gait;
  gait.orientation = winding;
  gait.waypoints.reserve(spec.n_waypoints);
  for (int k = 0; k < spec.n_waypoints; ++k) {
    const double phi = winding * 2.0 * kPi * k / spec.n_waypoints;
    gait.waypoints.emplace_back(center.x() + spec.radius * std::cos(phi),
                                center.y() + spec.radius * std::sin(phi));
  }
  return gait;
}

namespace {

// Explicit-Euler stability cap for the spacing-equalization (strain) term,
// which acts as a diffusion along the curve: the step must stay below
// ~1 / (weight * largest local metric-per-length coefficient).
double strain_stable_step(const Gait& gait, const FieldSet& fields,
                          double weight) {
  const std::size_t n = gait.waypoints.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& prev = gait.waypoints[(i + n - 1) % n];
    const Eigen::Vector2d& here = gait.waypoints[i];
    const Eigen::Vector2d& next = gait.waypoints[(i + 1) % n];
    double coeff = 0.0;
    for (const auto* pair : {&prev, &next}) {
      const Eigen::Vector2d d = *pair - here;
      const double len = d.norm();
      if (len > 0.0) {
        const Eigen::Matrix2d m =
            fields.metric_at(Shape::from(0.5 * (*pair + here)));
        coeff += std::sqrt(std::max(d.dot(m * d), 0.0)) / len;
      }
    }
    worst = std::max(worst, weight * coeff);
  }
  return worst > 0.0 ? 0.5 / worst : std::numeric_limits<double>::infinity();
}

void check_in_bounds(const Gait& gait, const GridSpec& grid) {
  for (const auto& w : gait.waypoints) {
    if (w.x() < grid.bounds.b1.min || w.x() > grid.bounds.b1.max ||
        w.y() < grid.bounds.b2.min || w.y() > grid.bounds.b2.max) {
      std::ostringstream os;
      os << "seed waypoint (" << w.x() << ", " << w.y()
         << ") outside the field grid bounds";
      throw DomainError(os.str());
    }
  }
}

}  // namespace

OptimizeResult optimize(const FieldSet& fields, const OptimizerConfig& config,
                        const Gait& seed) {
  config.validate();
  validate_gait(seed);
  check_in_bounds(seed, fields.spec);

  const double domain_width =
      std::max(fields.spec.bounds.b1.max - fields.spec.bounds.b1.min,
               fields.spec.bounds.b2.max - fields.spec.bounds.b2.min);

  OptimizeResult result;
  result.gait = seed;

  Gait gait = seed;
  GaitEvaluation eval = evaluate_gait(gait, fields, config.substeps_per_segment,
                                      config.flux_subdivisions);
  double obj = objective_of(eval, config);

  auto clamp_point = [&](Eigen::Vector2d p, int& clamped) {
    const auto& b = fields.spec.bounds;
    const Eigen::Vector2d q(std::clamp(p.x(), b.b1.min, b.b1.max),
                            std::clamp(p.y(), b.b2.min, b.b2.max));
    if (q != p) ++clamped;
    return q;
  };

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    const std::vector<Eigen::Vector2d> flow =
        flow_rhs(gait, fields, config, eval);
    double max_flow = 0.0;
    for (const auto& f : flow) max_flow = std::max(max_flow, f.norm());

    result.history.push_back(
        {eval.displacement, eval.pathlength,
         component_of(eval.displacement, config.component) / eval.pathlength,
         max_flow});
    result.iterations = iter;

    if (max_flow < config.tolerance) {
      result.gait = gait;
      result.evaluation = eval;
      result.reason = TerminationReason::converged;
      std::ostringstream os;
      os << "converged after " << iter << " iterations (residual " << max_flow
         << " < " << config.tolerance << ")";
      result.message = os.str();
      return result;
    }

    // Backtracking line search on the mode objective.
    double eta =
        std::min(config.initial_step_fraction * domain_width / max_flow,
                 strain_stable_step(gait, fields, config.strain_weight));
    bool accepted = false;
    bool saw_self_intersection = false;
    const double slack = 1e-12 * std::max(1.0, std::abs(obj));
    for (int bt = 0; bt < config.max_backtracks && !accepted; ++bt) {
      Gait candidate = gait;
      int clamped = 0;
      for (std::size_t i = 0; i < candidate.waypoints.size(); ++i) {
        candidate.waypoints[i] =
            clamp_point(candidate.waypoints[i] + eta * flow[i], clamped);
      }
      if (!is_simple_polygon(candidate.waypoints)) {
        saw_self_intersection = true;
        eta *= config.backtrack_factor;
        continue;
      }
      GaitEvaluation cand_eval;
      try {
        cand_eval = evaluate_gait(candidate, fields,
                                  config.substeps_per_segment,
                                  config.flux_subdivisions);
      } catch (const DomainError&) {
        eta *= config.backtrack_factor;
        continue;
      }
      const double cand_obj = objective_of(cand_eval, config);
      if (cand_obj >= obj - slack) {
        result.clamped_waypoints += clamped;
        gait = std::move(candidate);
        eval = cand_eval;
        obj = cand_obj;
        accepted = true;
      } else {
        eta *= config.backtrack_factor;
      }
    }

    if (!accepted) {
      result.gait = gait;
      result.evaluation = eval;
      std::ostringstream os;
      if (saw_self_intersection) {
        result.reason = TerminationReason::self_intersection;
        os << "gait self-intersection (internal loops) at iteration " << iter
           << "; flow residual " << max_flow;
      } else {
        result.reason = TerminationReason::stalled;
        os << "line search stalled at iteration " << iter
           << "; flow residual " << max_flow << " above tolerance "
           << config.tolerance;
      }
      result.message = os.str();
      return result;
    }
  }

  result.gait = gait;
  result.evaluation = eval;
  result.iterations = config.max_iterations;
  result.reason = TerminationReason::max_iterations;
  std::ostringstream os;
  os << "not converged after " << config.max_iterations << " iterations";
  result.message = os.str();
  return result;
}

OptimizeResult optimize(const FieldSet& fields, const OptimizerConfig& config) {
  config.validate();
  return optimize(fields, config, seed_circle(fields, config.component, config.seed));
}

}  // namespace soapgait
