#pragma once

#include <string>
#include <vector>

#include "uamfleet/dispatch.hpp"
#include "uamfleet/milp/model.hpp"
#include "uamfleet/network.hpp"

namespace uam::milp {

inline constexpr double kDefaultFlightWeight = 1e-5;

// Which charge variables C_i^xy exist. kUnitSteps keeps only y = x+1: a
// longer charge is the chain of its unit steps (a completion at level x+1 may
// restart at once), so both sets give the same optimum. The unit set is much
// smaller and solves faster.
enum class ChargeArcs { kAllPairs, kUnitSteps };

// "all" or "unit"; throws ConfigError otherwise.
ChargeArcs ParseChargeArcs(const std::string& text);

// Dispatch steps are 0-based; the network's first decision step is 1 because
// t=0 holds the start-of-day state, where no aircraft is airborne.
inline int ModelTime(int step) { return step + 1; }
inline int SeriesStep(int model_time) { return model_time - 1; }

// Minimum fleet that flies every demanded flight:
//   min  sum_i,k n(0) + sum_i,x,y C(0) + w * sum u
// subject to state dynamics, demand cover, energy floor and cyclic
// start/end states.
MilpModel BuildFleetSizing(const NetworkConfig& config, const DemandTimeSeries& demand,
                           double flight_weight = kDefaultFlightWeight,
                           ChargeArcs arcs = ChargeArcs::kAllPairs);

// Spill-minimising schedule for a fixed fleet. Demand cover is replaced by
// s_ij(t) >= p_ij^t - O * sum_k u_ij^k(t); any flight may be declined and
// extra (repositioning) flights are allowed.
MilpModel BuildSpill(const NetworkConfig& config, const DemandTimeSeries& demand, int fleet_size,
                     double flight_weight = kDefaultFlightWeight,
                     ChargeArcs arcs = ChargeArcs::kAllPairs);

// Checks that the series fits the network: same vertiports, no self-loop
// demand, every demanded flight lands within the horizon, p <= O * f.
void ValidateDemand(const NetworkConfig& config, const DemandTimeSeries& demand);

// Aircraft counted at t=0: idle plus starting a charge.
long long FleetSize(const MilpModel& model, const Solution& solution);
long long TotalFlights(const MilpModel& model, const Solution& solution);
long long TotalSpill(const MilpModel& model, const Solution& solution);

// s_ij per dispatch step, laid out like a DemandTimeSeries (flights column
// left at zero, passengers column holds the spill).
DemandTimeSeries SpillByStep(const NetworkConfig& config, const MilpModel& model,
                             const Solution& solution, int num_steps);

// Spill per step and pair as CSV `from,to,step,spill` (nonzero rows only).
std::string SerializeSpill(const DemandTimeSeries& spill, const std::vector<std::string>& names);

}  // namespace uam::milp
