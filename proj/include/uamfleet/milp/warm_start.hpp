#pragma once

#include <optional>
#include <vector>

#include "uamfleet/dispatch.hpp"
#include "uamfleet/milp/model.hpp"
#include "uamfleet/network.hpp"

namespace uam::milp {

// Builds a feasible point of the spill program `target` (fleet F) from a
// solution of `source`, which may be a fleet-sizing or spill program over the
// same network and charge arcs. The source schedule is split into aircraft
// itineraries; following each aircraft's end state to the aircraft that
// starts in that state gives closed tours. Whole tours are dropped (fewest
// flights per aircraft first) until at most F aircraft remain, then idle
// full aircraft at vertiport 0 make up the rest. Spill is set to what the
// kept flights leave unserved.
//
// Returns nullopt if `source_values` cannot be split into aircraft.
std::optional<std::vector<long long>> SpillStartFrom(const NetworkConfig& config,
                                                     const DemandTimeSeries& demand,
                                                     const MilpModel& source,
                                                     const std::vector<long long>& source_values,
                                                     const MilpModel& target, int fleet_size);

}  // namespace uam::milp
