#pragma once

// Self-contained SVG rendering of a sweep: D1 counts as black squares, D2
// counts as red triangles, fitted fringe curves overlaid, and dashed green
// verticals at the proper-phase voltages. A plain-text sidecar table makes
// the plotted numbers diffable.

#include <string>
#include <vector>

#include "sptq/labsim.hpp"

namespace sptq {

struct PlotResult {
  std::string svg;
  std::string sidecar;
};

PlotResult render_sweep_plot(const std::vector<DetectionRecord>& records,
                             const SweepConfig& cfg, const std::string& title);

}  // namespace sptq
