#pragma once

#include <string>
#include <vector>

#include "soapgait/config.hpp"
#include "soapgait/fields.hpp"
#include "soapgait/gait.hpp"
#include "soapgait/optimizer.hpp"

namespace soapgait {

/// Scalar grid CSV: header beta1,beta2,value; row-major node order.
void write_grid_csv(const std::string& path, const FieldGrid& grid);

/// Connection-row vector field CSV: header beta1,beta2,a1,a2.
void write_vector_grid_csv(const std::string& path, const FieldGrid& col1,
                           const FieldGrid& col2);

std::vector<std::vector<double>> read_csv(const std::string& path);

/// All sampled fields plus grid metadata in one JSON document.
void write_fields_json(const std::string& path, const FieldSet& fields,
                       const RunConfig& config);

void write_gait_json(const std::string& path, const Gait& gait);
Gait load_gait_json(const std::string& path);
Gait parse_gait_json(const std::string& text, const std::string& origin);

/// Gait plus its evaluation numbers.
void write_evaluation_json(const std::string& path, const Gait& gait,
                           const GaitEvaluation& eval);

/// Optimization report: config echo, per-iteration history, converged gait,
/// termination reason.
void write_report_json(const std::string& path, const RunConfig& config,
                       const OptimizeResult& result, const Gait& seed);

/// Time series of one gait cycle: t,beta1,beta2,x,y,theta.
void write_trajectory_csv(const std::string& path,
                          const std::vector<TrajectorySample>& trajectory);

}  // namespace soapgait
