#pragma once

#include <string>
#include <vector>

#include "uamfleet/dispatch.hpp"
#include "uamfleet/milp/model.hpp"
#include "uamfleet/network.hpp"

namespace uam::milp {

struct Violation {
  std::string constraint;  // tag name, "bounds" or "conservation"
  int i = -1;
  int j = -1;
  int k = -1;
  int t = -1;
  std::string detail;

  std::string ToString() const;
};

// What the solution claims to solve. `fleet_size` is used by the spill model.
struct ValidationInputs {
  ModelKind kind = ModelKind::kFleetSizing;
  const DemandTimeSeries* demand = nullptr;
  int fleet_size = 0;
};

// Re-evaluates every constraint family from the network and demand data
// directly (not from the model's rows), plus variable bounds and the fleet
// count at every t. Returns an empty list for a valid solution.
std::vector<Violation> ValidateSolution(const NetworkConfig& config, const ValidationInputs& inputs,
                                        const MilpModel& model, const Solution& solution);

}  // namespace uam::milp
