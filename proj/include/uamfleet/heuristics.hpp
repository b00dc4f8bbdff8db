#pragma once

#include <string>
#include <vector>

#include "uamfleet/dispatch.hpp"
#include "uamfleet/network.hpp"

namespace uam {

inline constexpr int kNoLocation = -1;  // pooled (lower-bound policy)

struct SimAircraft {
  int location = 0;    // vertiport, or kNoLocation when pooled
  int soc_level = 0;   // 0..K
  int busy_until = 0;  // first step at which the aircraft is free again
  int charge_progress = 0;  // steps spent towards the next level (lower bound)
  int charge_target = 0;    // level reached when a committed charge finishes
};

struct SimResult {
  long long daily_spill = 0;
  DemandTimeSeries spill_by_step;  // passengers column holds the spill
  long long flights_flown = 0;     // revenue plus repositioning
  long long repositioning_flights = 0;
};

struct SimPolicy {
  // A vertiport holding more than this many idle aircraft at or above
  // reposition_min_soc sends the surplus to the next vertiport.
  int reposition_threshold = 5;
  double reposition_min_soc = 0.5;
  int charge_target = -1;  // level idle aircraft charge to; -1 means K
};

// Greedy operation at two or more separate vertiports: charge idle aircraft
// to full (non-preemptible), serve the fullest flights first, and move
// surplus charged aircraft when a vertiport holds more than the threshold.
// All aircraft start fully charged, spread round-robin over the vertiports.
SimResult SimulateUpperBound(const NetworkConfig& config, const DemandTimeSeries& demand,
                             int fleet_size, const SimPolicy& policy = {});

// Same serving order with one pooled location: an aircraft is available to
// any flight as soon as it lands, and idle aircraft charge level by level
// and may be interrupted. There are no repositioning flights.
SimResult SimulateLowerBound(const NetworkConfig& config, const DemandTimeSeries& demand,
                             int fleet_size, const SimPolicy& policy = {});

}  // namespace uam
