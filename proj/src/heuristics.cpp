#include "uamfleet/heuristics.hpp"

#include <algorithm>

#include "uamfleet/errors.hpp"
#include "uamfleet/milp/builders.hpp"

namespace uam {

namespace {

struct PendingFlight {
  int occupancy = 0;
  int from = 0;
  int to = 0;
};

// Flights demanded at step s, fullest first, then by pair index.
std::vector<PendingFlight> FlightsAt(const DemandTimeSeries& demand, int s, int seat_capacity) {
  std::vector<PendingFlight> out;
  const int V = demand.num_vertiports();
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      const int f = demand.flights(i, j, s);
      if (f == 0) continue;
      for (int occ : FlightOccupancies(f, demand.passengers(i, j, s), seat_capacity)) {
        if (occ > 0) out.push_back({occ, i, j});
      }
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const PendingFlight& a, const PendingFlight& b) { return a.occupancy > b.occupancy; });
  return out;
}

void CheckInputs(const NetworkConfig& config, const DemandTimeSeries& demand, int fleet_size) {
  if (fleet_size < 0) throw ValidationError("fleet size must be nonnegative");
  if (demand.num_vertiports() != config.num_vertiports()) {
    throw ValidationError("demand series and network disagree on the vertiport count");
  }
}

// Ready aircraft with the highest SoC that can fly from `loc` (any location
// when loc == kNoLocation), ties to the lowest index. Returns -1 if none.
int PickAircraft(const std::vector<SimAircraft>& fleet, int step, int loc, int min_level) {
  int best = -1;
  for (std::size_t a = 0; a < fleet.size(); ++a) {
    const auto& c = fleet[a];
    if (c.busy_until > step || c.soc_level < min_level) continue;
    if (loc != kNoLocation && c.location != loc) continue;
    if (best < 0 || c.soc_level > fleet[static_cast<std::size_t>(best)].soc_level) best = static_cast<int>(a);
  }
  return best;
}

SimResult EmptyResult(const DemandTimeSeries& demand) {
  SimResult r;
  r.spill_by_step = DemandTimeSeries(demand.num_vertiports(), demand.num_steps(), demand.step_minutes());
  return r;
}

void AddSpill(SimResult& r, const PendingFlight& f, int s) {
  r.daily_spill += f.occupancy;
  r.spill_by_step.Set(f.from, f.to, s, 0, r.spill_by_step.passengers(f.from, f.to, s) + f.occupancy);
}

}  // namespace

SimResult SimulateUpperBound(const NetworkConfig& raw_config, const DemandTimeSeries& demand,
                             int fleet_size, const SimPolicy& policy) {
  NetworkConfig config = raw_config;
  config.Validate();
  CheckInputs(config, demand, fleet_size);
  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int full = policy.charge_target < 0 ? K : std::min(policy.charge_target, K);
  std::vector<SimAircraft> fleet(static_cast<std::size_t>(fleet_size));
  for (int a = 0; a < fleet_size; ++a) fleet[static_cast<std::size_t>(a)] = {a % V, K, 0, 0, 0};

  SimResult result = EmptyResult(demand);
  for (int s = 0; s < demand.num_steps(); ++s) {
    const int t = milp::ModelTime(s);
    for (auto& c : fleet) {
      if (c.busy_until <= s && c.charge_target > 0) {
        c.soc_level = c.charge_target;
        c.charge_target = 0;
      }
    }
    for (const auto& f : FlightsAt(demand, s, config.seat_capacity)) {
      const int a = PickAircraft(fleet, s, f.from, config.kappa(f.from, f.to, t));
      if (a < 0) {
        AddSpill(result, f, s);
        continue;
      }
      auto& c = fleet[static_cast<std::size_t>(a)];
      c.soc_level -= config.kappa(f.from, f.to, t);
      c.location = f.to;
      c.busy_until = s + config.tau(f.from, f.to, t);
      ++result.flights_flown;
    }
    for (int i = 0; i < V; ++i) {
      std::vector<int> charged;
      for (std::size_t a = 0; a < fleet.size(); ++a) {
        const auto& c = fleet[a];
        if (c.location == i && c.busy_until <= s && config.SocFraction(c.soc_level) >= policy.reposition_min_soc) {
          charged.push_back(static_cast<int>(a));
        }
      }
      if (static_cast<int>(charged.size()) <= policy.reposition_threshold) continue;
      std::stable_sort(charged.begin(), charged.end(), [&](int x, int y) {
        return fleet[static_cast<std::size_t>(x)].soc_level > fleet[static_cast<std::size_t>(y)].soc_level;
      });
      const int to = (i + 1) % V;
      int surplus = static_cast<int>(charged.size()) - policy.reposition_threshold;
      for (int a : charged) {
        if (surplus == 0) break;
        auto& c = fleet[static_cast<std::size_t>(a)];
        const int kappa = config.kappa(i, to, t);
        if (c.soc_level < kappa) continue;
        c.soc_level -= kappa;
        c.location = to;
        c.busy_until = s + config.tau(i, to, t);
        ++result.flights_flown;
        ++result.repositioning_flights;
        --surplus;
      }
    }
    for (auto& c : fleet) {
      if (c.busy_until > s || c.soc_level >= full) continue;
      c.busy_until = s + ChargingDuration(c.soc_level, full, config.charging_curve());
      c.charge_target = full;
    }
  }
  return result;
}

SimResult SimulateLowerBound(const NetworkConfig& raw_config, const DemandTimeSeries& demand,
                             int fleet_size, const SimPolicy& policy) {
  NetworkConfig config = raw_config;
  config.Validate();
  CheckInputs(config, demand, fleet_size);
  const int K = config.soc_levels;
  const int full = policy.charge_target < 0 ? K : std::min(policy.charge_target, K);
  std::vector<SimAircraft> fleet(static_cast<std::size_t>(fleet_size), {kNoLocation, K, 0, 0, 0});

  SimResult result = EmptyResult(demand);
  for (int s = 0; s < demand.num_steps(); ++s) {
    const int t = milp::ModelTime(s);
    std::vector<bool> used(fleet.size(), false);
    for (const auto& f : FlightsAt(demand, s, config.seat_capacity)) {
      const int a = PickAircraft(fleet, s, kNoLocation, config.kappa(f.from, f.to, t));
      if (a < 0) {
        AddSpill(result, f, s);
        continue;
      }
      auto& c = fleet[static_cast<std::size_t>(a)];
      c.soc_level -= config.kappa(f.from, f.to, t);
      c.busy_until = s + config.tau(f.from, f.to, t);
      c.charge_progress = 0;
      used[static_cast<std::size_t>(a)] = true;
      ++result.flights_flown;
    }
    for (std::size_t a = 0; a < fleet.size(); ++a) {
      auto& c = fleet[a];
      if (used[a] || c.busy_until > s || c.soc_level >= full) continue;
      if (++c.charge_progress >= config.ChargeStep(c.soc_level + 1)) {
        ++c.soc_level;
        c.charge_progress = 0;
      }
    }
  }
  return result;
}

}  // namespace uam
