#pragma once

#include "uamfleet/dispatch.hpp"
#include "uamfleet/milp/model.hpp"
#include "uamfleet/network.hpp"

namespace uam::milp {

inline constexpr int kBruteForceMaxHorizon = 10;
inline constexpr int kBruteForceMaxLevels = 4;
inline constexpr int kBruteForceMaxFleet = 3;

// Exact optimum of a fleet-sizing or spill program on a micro instance
// (two vertiports, T <= 10, K <= 4, at most three aircraft), found by
// enumerating every start pool and every per-aircraft action sequence rather
// than by solving the linear model. `model` is the program built from the
// same inputs; it only fixes the kind and the layout of Solution::values.
// `fleet_size` is read for the spill program only.
// Throws SizeError when the instance is outside those limits, including a
// fleet-sizing instance that needs more than three aircraft.
Solution BruteForceSolve(const NetworkConfig& config, const DemandTimeSeries& demand,
                         const MilpModel& model, int fleet_size, double flight_weight);

}  // namespace uam::milp
