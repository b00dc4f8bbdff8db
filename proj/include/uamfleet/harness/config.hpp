#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uamfleet/demand.hpp"
#include "uamfleet/dispatch.hpp"
#include "uamfleet/milp/builders.hpp"
#include "uamfleet/milp/model.hpp"
#include "uamfleet/network.hpp"
#include "uamfleet/schedule.hpp"

namespace uam::harness {

struct Scenario {
  double add = 0.0;
  double ar_coeff = 0.0;
  std::vector<int> fleet_sizes;  // absolute sweep for this scenario; empty uses the global one

  // e.g. "add1500_ar0.7"
  std::string Label() const;
};

enum class SweepMode { kAbsolute, kRelative, kNone };

// Fleet sizes at which the spill program is solved.
//   relative: F*-below .. F* of each profile
//   absolute: `fleet_sizes` (or the scenario's own list); when both are empty,
//             median(F*)-below .. max(F*) over the scenario's profiles
//   none:     fleet sizing only
struct SweepSpec {
  SweepMode mode = SweepMode::kAbsolute;
  int below = 5;
  std::vector<int> fleet_sizes;
};

struct SolverSpec {
  std::string name = "highs";  // highs | highs-lp
  milp::SolverLimits limits;
  double flight_weight = 1e-5;
  milp::ChargeArcs charge_arcs = milp::ChargeArcs::kAllPairs;
  // Seed each spill solve with a schedule cut down from a larger fleet.
  bool warm_start = true;
};

struct ExperimentConfig {
  std::optional<std::string> schedule_csv;
  SyntheticScheduleParams synthetic;
  bool synthetic_seed_explicit = false;  // otherwise derived from base_seed
  int days = 0;  // first N schedule days; 0 means all
  std::vector<Scenario> scenarios;
  DemandParams demand;  // add and ar_coeff are taken from each scenario
  double max_wait_minutes = 5.0;
  NetworkConfig network;
  SweepSpec sweep;
  bool simulate_bounds = true;
  SolverSpec solver;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  std::string output_dir = "out";
  bool write_artifacts = true;

  // Throws ConfigError.
  void Validate();
  void SetBaseSeed(std::uint64_t seed);
  DispatchRule dispatch_rule() const;
};

// Parses the JSON experiment file. Unknown keys are rejected.
ExperimentConfig ParseExperimentConfig(std::string_view json_text);

// Network settings as used by the standalone CLI stages; the same keys as the
// "network" object of an experiment file.
NetworkConfig ParseNetworkConfig(std::string_view json_text);

}  // namespace uam::harness
