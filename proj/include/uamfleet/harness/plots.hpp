#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "uamfleet/harness/pipeline.hpp"

namespace uam::harness {

struct BoxGroup {
  std::string label;
  std::vector<double> values;
};

struct LineSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), drawn in order
};

// Box plots (quartile box, median bar, min/max whiskers) on a shared axis.
// Groups without values are left out.
std::string BoxPlotSvg(const std::string& title, const std::string& y_label, const std::vector<BoxGroup>& groups);

std::string LinePlotSvg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<LineSeries>& series);

// passengers.svg, fleet_size.svg, and per scenario spill_<label>.svg (mean
// spill and bounds against F) and spill_box_<label>.svg (daily spill by F).
// Plots with no data are skipped with a warning. Returns the paths written.
std::vector<std::string> EmitPlots(const AggregateReport& report, const std::string& dir, std::ostream& warn);

}  // namespace uam::harness
