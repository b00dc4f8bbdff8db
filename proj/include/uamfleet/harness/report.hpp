#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uamfleet/harness/pipeline.hpp"

namespace uam::harness {

// Linear-interpolation quantile (q in [0,1]); values need not be sorted.
// Throws DomainError on an empty set.
double Quantile(std::vector<double> values, double q);

struct ScenarioSummary {
  std::string label;
  double add = 0.0;
  double ar_coeff = 0.0;
  int profiles = 0;
  int failures = 0;
  std::optional<double> passengers_q1, passengers_median, passengers_q3;
  std::optional<double> fleet_min, fleet_q1, fleet_median, fleet_q3, fleet_max;
};

struct SpillSummary {
  std::string label;
  int fleet_size = 0;
  int profiles = 0;
  double mean_spill = 0.0;
  double variance_spill = 0.0;  // sample variance, 0 for a single profile
  std::optional<double> mean_lower, mean_upper;
};

std::vector<ScenarioSummary> Summarize(const AggregateReport& report);
std::vector<SpillSummary> SummarizeSpill(const AggregateReport& report);

// One row per profile; spill_F<n> columns over every swept size, ascending.
std::string SerializeReport(const AggregateReport& report);
// One row per (profile, fleet size) with status, gap and bounds.
std::string SerializeSpillTable(const AggregateReport& report);
std::string SerializeSummary(const std::vector<ScenarioSummary>& summary);
std::string SerializeSpillSummary(const std::vector<SpillSummary>& summary);

// Rebuilds a report from report.csv and spill.csv.
AggregateReport ParseReport(std::string_view report_csv, std::string_view spill_csv);

// Writes report.csv, spill.csv, summary.csv and spill_summary.csv; returns
// the paths written.
std::vector<std::string> WriteReport(const AggregateReport& report, const std::string& dir);

}  // namespace uam::harness
