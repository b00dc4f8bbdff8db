#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "uamfleet/harness/config.hpp"
#include "uamfleet/milp/model.hpp"

namespace uam::harness {

struct SpillCell {
  long long spill = -1;  // -1 when the solve produced no solution
  std::string status;
  double gap = 0.0;
  long long lower = -1;  // bound simulations, -1 when not run
  long long upper = -1;
  int violations = 0;
};

struct ProfileRow {
  std::string day;
  std::size_t scenario = 0;  // index into AggregateReport::scenarios
  long long realized_passengers = 0;
  long long demanded_flights = 0;
  long long fleet_size = -1;  // F*, -1 when unknown
  std::string fleet_status;
  double fleet_gap = 0.0;
  int violations = 0;
  std::map<int, SpillCell> spill;  // keyed by fleet size
  std::string error;

  bool failed() const;
};

struct AggregateReport {
  std::vector<Scenario> scenarios;
  std::vector<ProfileRow> rows;  // ordered by scenario, then day

  int failures() const;
};

std::unique_ptr<milp::SolverAdapter> MakeSolver(const std::string& name);

AirlineSchedule LoadSchedule(const ExperimentConfig& config);

// Scenario x day: profile -> dispatch -> fleet sizing -> spill sweep ->
// bound simulations. Per-row failures are recorded and the run continues.
// Writes per-profile artifacts under config.output_dir when enabled; the
// aggregate files are written by WriteReport.
AggregateReport RunPipeline(const ExperimentConfig& config, std::ostream& log);

// The sizes at which spill is solved for one row, given the F* values of the
// rows in its scenario.
std::vector<int> SweepFor(const SweepSpec& sweep, const Scenario& scenario, long long own_fleet,
                          const std::vector<long long>& scenario_fleets);

}  // namespace uam::harness
