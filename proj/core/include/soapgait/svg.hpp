#pragma once

#include <string>
#include <vector>

#include "soapgait/contour.hpp"
#include "soapgait/dynamics.hpp"
#include "soapgait/fields.hpp"
#include "soapgait/gait.hpp"

namespace soapgait {

struct GaitOverlay {
  const Gait* gait = nullptr;
  bool dashed = false;
  std::string color = "#000000";
};

/// Static SVG 1.1 heatmap of a scalar field with the zero contour
/// emphasized, labeled axes, a colorbar with the plotted range, and
/// optional gait overlays.
void write_field_svg(const std::string& path, const FieldGrid& field,
                     const std::string& title, const std::string& xlabel,
                     const std::string& ylabel,
                     const std::vector<GaitOverlay>& overlays = {});

/// World-frame trajectory of one gait cycle with body snapshots.
void write_trajectory_svg(const std::string& path,
                          const std::vector<TrajectorySample>& trajectory,
                          const SystemModel& model, int n_snapshots = 8);

}  // namespace soapgait
