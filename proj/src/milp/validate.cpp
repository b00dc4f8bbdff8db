#include "uamfleet/milp/validate.hpp"

#include "uamfleet/errors.hpp"
#include "uamfleet/milp/builders.hpp"

namespace uam::milp {

std::string Violation::ToString() const {
  std::string out = constraint;
  auto add = [&](const char* label, int v) {
    if (v >= 0) out += std::string(" ") + label + "=" + std::to_string(v);
  };
  add("i", i);
  add("j", j);
  add("k", k);
  add("t", t);
  if (!detail.empty()) out += ": " + detail;
  return out;
}

namespace {

class Reader {
 public:
  Reader(const MilpModel& model, const Solution& solution) : model_(model), solution_(solution) {}

  long long operator()(const VarKey& key) const { return solution_.Value(model_, key); }

 private:
  const MilpModel& model_;
  const Solution& solution_;
};

}  // namespace

std::vector<Violation> ValidateSolution(const NetworkConfig& raw_config,
                                        const ValidationInputs& inputs, const MilpModel& model,
                                        const Solution& solution) {
  NetworkConfig config = raw_config;
  config.Validate();
  std::vector<Violation> out;
  if (solution.values.size() != model.variables().size()) {
    out.push_back({"bounds", -1, -1, -1, -1, "solution has no value for every variable"});
    return out;
  }
  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int T = config.horizon();
  const int O = config.seat_capacity;
  const auto& gamma = config.charging_curve();
  const Reader x(model, solution);

  for (std::size_t v = 0; v < model.variables().size(); ++v) {
    const auto& var = model.variables()[v];
    const auto value = static_cast<double>(solution.values[v]);
    if (value < var.lower || value > var.upper) {
      out.push_back({"bounds", var.key.i, var.key.j, var.key.a, var.key.t,
                     var.key.Name() + " = " + std::to_string(solution.values[v])});
    }
  }

  // Departures that land inside the horizon, indexed by landing time.
  for (int i = 0; i < V; ++i) {
    for (int k = 0; k <= K; ++k) {
      for (int t = 1; t <= T; ++t) {
        long long lhs = x(VarKey::Idle(i, k, t)) - x(VarKey::Idle(i, k, t - 1));
        long long rhs = 0;
        for (int j = 0; j < V; ++j) {
          if (j == i) continue;
          for (int tp = 1; tp <= T; ++tp) {
            const int level = k + config.kappa(j, i, tp);
            if (tp + config.tau(j, i, tp) == t && level <= K) rhs += x(VarKey::Flight(j, i, level, tp));
          }
          rhs -= x(VarKey::Flight(i, j, k, t));
        }
        for (int from = 0; from < k; ++from) {
          const int start = t - ChargingDuration(from, k, gamma);
          if (start >= 0) rhs += x(VarKey::Charge(i, from, k, start));
        }
        for (int to = k + 1; to <= K; ++to) rhs -= x(VarKey::Charge(i, k, to, t));
        if (lhs != rhs) {
          out.push_back({"dynamics", i, -1, k, t,
                         "idle change " + std::to_string(lhs) + " != net inflow " + std::to_string(rhs)});
        }
      }
    }
  }

  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int t = 0; t <= T; ++t) {
        for (int k = 0; k < config.kappa(i, j, t) && k <= K; ++k) {
          if (x(VarKey::Flight(i, j, k, t)) != 0) {
            out.push_back({"energy", i, j, k, t, "departure below the flight's energy cost"});
          }
        }
      }
    }

  for (int i = 0; i < V; ++i) {
    for (int k = 0; k <= K; ++k) {
      if (x(VarKey::Idle(i, k, 0)) != x(VarKey::Idle(i, k, T))) {
        out.push_back({"cyclic", i, -1, k, 0, "idle count differs between t=0 and t=T"});
      }
      for (int j = 0; j < V; ++j) {
        if (j != i && x(VarKey::Flight(i, j, k, 0)) != x(VarKey::Flight(i, j, k, T))) {
          out.push_back({"cyclic", i, j, k, 0, "departures differ between t=0 and t=T"});
        }
      }
      for (int y = k + 1; y <= K; ++y) {
        if (x(VarKey::Charge(i, k, y, 0)) != x(VarKey::Charge(i, k, y, T))) {
          out.push_back({"cyclic", i, -1, k, 0, "charge starts to " + std::to_string(y) + " differ"});
        }
      }
    }
  }

  const DemandTimeSeries* demand = inputs.demand;
  auto demand_at = [&](int i, int j, int t, bool passengers) {
    const int s = SeriesStep(t);
    if (demand == nullptr || s < 0 || s >= demand->num_steps()) return 0;
    return passengers ? demand->passengers(i, j, s) : demand->flights(i, j, s);
  };
  auto flights_at = [&](int i, int j, int t) {
    long long sum = 0;
    for (int k = 1; k <= K; ++k) sum += x(VarKey::Flight(i, j, k, t));
    return sum;
  };

  if (inputs.kind == ModelKind::kFleetSizing) {
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j) {
        if (i == j) continue;
        for (int t = 1; t <= T; ++t) {
          const long long flown = flights_at(i, j, t);
          const int wanted = demand_at(i, j, t, false);
          if (flown < wanted) {
            out.push_back({"demand", i, j, -1, t,
                           std::to_string(flown) + " flights for " + std::to_string(wanted) + " demanded"});
          }
        }
      }
  } else if (inputs.kind == ModelKind::kSpill) {
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j) {
        if (i == j) continue;
        for (int t = 1; t <= T; ++t) {
          const long long s = x(VarKey::Spill(i, j, t));
          if (s < 0) out.push_back({"spill_pos", i, j, -1, t, "negative spill"});
          const long long floor_value = demand_at(i, j, t, true) - O * flights_at(i, j, t);
          if (s < floor_value) {
            out.push_back({"spill_def", i, j, -1, t,
                           "spill " + std::to_string(s) + " below unserved " + std::to_string(floor_value)});
          }
        }
      }
    long long fleet = 0;
    for (int i = 0; i < V; ++i) {
      for (int k = 0; k <= K; ++k) fleet += x(VarKey::Idle(i, k, 0));
      for (int a = 0; a < K; ++a)
        for (int b = a + 1; b <= K; ++b) fleet += x(VarKey::Charge(i, a, b, 0));
    }
    if (fleet != inputs.fleet_size) {
      out.push_back({"fleet_fix", -1, -1, -1, 0,
                     "fleet " + std::to_string(fleet) + " != " + std::to_string(inputs.fleet_size)});
    }
  }

  // Aircraft count at t: idle, airborne (departed at or before t, landing
  // after t) and mid-charge (started at or before t, finishing after t).
  std::vector<long long> count(static_cast<std::size_t>(T + 1), 0);
  for (int t = 0; t <= T; ++t) {
    long long c = 0;
    for (int i = 0; i < V; ++i) {
      for (int k = 0; k <= K; ++k) c += x(VarKey::Idle(i, k, t));
      for (int j = 0; j < V; ++j) {
        if (j == i) continue;
        for (int tp = 0; tp <= t; ++tp) {
          if (tp + config.tau(i, j, tp) <= t) continue;
          for (int k = 0; k <= K; ++k) c += x(VarKey::Flight(i, j, k, tp));
        }
      }
      for (int a = 0; a < K; ++a)
        for (int b = a + 1; b <= K; ++b) {
          const int d = ChargingDuration(a, b, gamma);
          for (int s = std::max(0, t - d + 1); s <= t; ++s) c += x(VarKey::Charge(i, a, b, s));
        }
    }
    count[static_cast<std::size_t>(t)] = c;
  }
  for (int t = 1; t <= T; ++t) {
    if (count[static_cast<std::size_t>(t)] != count[0]) {
      out.push_back({"conservation", -1, -1, -1, t,
                     std::to_string(count[static_cast<std::size_t>(t)]) + " aircraft, " +
                         std::to_string(count[0]) + " at t=0"});
    }
  }
  return out;
}

}  // namespace uam::milp
