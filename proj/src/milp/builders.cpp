#include "uamfleet/milp/builders.hpp"

#include <string>

#include "uamfleet/errors.hpp"

namespace uam::milp {

namespace {

std::string Idx(std::initializer_list<int> values) {
  std::string out;
  for (int v : values) {
    out += '_';
    out += std::to_string(v);
  }
  return out;
}

int DemandAt(const DemandTimeSeries& demand, int i, int j, int t, bool passengers) {
  const int s = SeriesStep(t);
  if (s < 0 || s >= demand.num_steps()) return 0;
  return passengers ? demand.passengers(i, j, s) : demand.flights(i, j, s);
}

bool HasArc(ChargeArcs arcs, int x, int y) { return arcs == ChargeArcs::kAllPairs || y == x + 1; }

// Variables and the constraints shared by both programs: state dynamics,
// energy floor and cyclic boundary.
void AddNetworkCore(const NetworkConfig& config, ChargeArcs arcs, MilpModel& model) {
  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int T = config.horizon();
  const auto& gamma = config.charging_curve();
  const double inf = std::numeric_limits<double>::infinity();

  for (int i = 0; i < V; ++i)
    for (int k = 0; k <= K; ++k)
      for (int t = 0; t <= T; ++t) model.AddVariable(VarKey::Idle(i, k, t));
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int k = 0; k <= K; ++k)
        for (int t = 0; t <= T; ++t) model.AddVariable(VarKey::Flight(i, j, k, t), 0.0, t == 0 ? 0.0 : inf);
    }
  for (int i = 0; i < V; ++i)
    for (int x = 0; x < K; ++x)
      for (int y = x + 1; y <= K; ++y) {
        if (!HasArc(arcs, x, y)) continue;
        for (int t = 0; t <= T; ++t) model.AddVariable(VarKey::Charge(i, x, y, t));
      }

  const ArrivalIndexSet arrivals(config);

  for (int i = 0; i < V; ++i) {
    for (int k = 0; k <= K; ++k) {
      for (int t = 1; t <= T; ++t) {
        Constraint c;
        c.name = "dyn" + Idx({i, k, t});
        c.tag = ConstraintTag::kDynamics;
        c.sense = Sense::kEqual;
        c.rhs = 0.0;
        c.terms.push_back({model.Index(VarKey::Idle(i, k, t)), 1.0});
        c.terms.push_back({model.Index(VarKey::Idle(i, k, t - 1)), -1.0});
        for (int j = 0; j < V; ++j) {
          if (j == i) continue;
          // arrivals landing at level k
          for (int tp : arrivals.Departures(j, i, t)) {
            const int level = k + config.kappa(j, i, tp);
            if (level <= K) c.terms.push_back({model.Index(VarKey::Flight(j, i, level, tp)), -1.0});
          }
          // departures
          c.terms.push_back({model.Index(VarKey::Flight(i, j, k, t)), 1.0});
        }
        // charges completing at level k
        for (int x = 0; x < k; ++x) {
          const int start = t - ChargingDuration(x, k, gamma);
          if (start >= 0 && HasArc(arcs, x, k)) c.terms.push_back({model.Index(VarKey::Charge(i, x, k, start)), -1.0});
        }
        // charges starting from level k
        for (int y = k + 1; y <= K; ++y) {
          if (HasArc(arcs, k, y)) c.terms.push_back({model.Index(VarKey::Charge(i, k, y, t)), 1.0});
        }
        model.AddConstraint(std::move(c));
      }
    }
  }

  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int t = 0; t <= T; ++t) {
        const int floor_level = config.kappa(i, j, t);
        for (int k = 0; k < floor_level && k <= K; ++k) {
          Constraint c;
          c.name = "energy" + Idx({i, j, k, t});
          c.tag = ConstraintTag::kEnergy;
          c.sense = Sense::kEqual;
          c.terms.push_back({model.Index(VarKey::Flight(i, j, k, t)), 1.0});
          model.AddConstraint(std::move(c));
        }
      }
    }

  auto cyclic = [&](const VarKey& at0, const VarKey& atT) {
    Constraint c;
    c.name = "cyc_" + at0.Name();
    c.tag = ConstraintTag::kCyclic;
    c.sense = Sense::kEqual;
    c.terms.push_back({model.Index(at0), 1.0});
    c.terms.push_back({model.Index(atT), -1.0});
    model.AddConstraint(std::move(c));
  };
  for (int i = 0; i < V; ++i)
    for (int k = 0; k <= K; ++k) cyclic(VarKey::Idle(i, k, 0), VarKey::Idle(i, k, T));
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int k = 0; k <= K; ++k) cyclic(VarKey::Flight(i, j, k, 0), VarKey::Flight(i, j, k, T));
    }
  for (int i = 0; i < V; ++i)
    for (int x = 0; x < K; ++x)
      for (int y = x + 1; y <= K; ++y) {
        if (HasArc(arcs, x, y)) cyclic(VarKey::Charge(i, x, y, 0), VarKey::Charge(i, x, y, T));
      }
}

std::vector<Term> FleetTerms(const NetworkConfig& config, ChargeArcs arcs, const MilpModel& model) {
  std::vector<Term> terms;
  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  for (int i = 0; i < V; ++i)
    for (int k = 0; k <= K; ++k) terms.push_back({model.Index(VarKey::Idle(i, k, 0)), 1.0});
  for (int i = 0; i < V; ++i)
    for (int x = 0; x < K; ++x)
      for (int y = x + 1; y <= K; ++y) {
        if (HasArc(arcs, x, y)) terms.push_back({model.Index(VarKey::Charge(i, x, y, 0)), 1.0});
      }
  return terms;
}

void AddFlightPenalty(const NetworkConfig& config, MilpModel& model, double flight_weight) {
  if (flight_weight == 0.0) return;
  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int T = config.horizon();
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int k = 0; k <= K; ++k)
        for (int t = 0; t <= T; ++t) {
          model.AddObjectiveTerm(model.Index(VarKey::Flight(i, j, k, t)), flight_weight);
        }
    }
}

IntegerObjective Structure(const NetworkConfig& config, double flight_weight, int fixed_fleet) {
  // Every flight occupies at least tau_min steps inside 1..T.
  return {flight_weight, static_cast<double>(config.horizon()) / config.tau.Min(), fixed_fleet};
}

NetworkConfig Validated(const NetworkConfig& config) {
  NetworkConfig copy = config;
  copy.Validate();
  return copy;
}

}  // namespace

ChargeArcs ParseChargeArcs(const std::string& text) {
  if (text == "all") return ChargeArcs::kAllPairs;
  if (text == "unit") return ChargeArcs::kUnitSteps;
  throw ConfigError("charge arcs must be 'all' or 'unit', got '" + text + "'");
}

void ValidateDemand(const NetworkConfig& config, const DemandTimeSeries& demand) {
  const int V = config.num_vertiports();
  if (demand.num_vertiports() != V) {
    throw ValidationError("demand series has " + std::to_string(demand.num_vertiports()) +
                          " vertiports, network has " + std::to_string(V));
  }
  const int T = config.horizon();
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < V; ++j) {
      for (int s = 0; s < demand.num_steps(); ++s) {
        const int f = demand.flights(i, j, s);
        const int p = demand.passengers(i, j, s);
        if (f == 0 && p == 0) continue;
        if (i == j) {
          throw ValidationError("self-loop demand at vertiport " + std::to_string(i) + ", step " +
                                std::to_string(s));
        }
        const int t = ModelTime(s);
        if (t + config.tau(i, j, t) > T) {
          throw ValidationError("demand at step " + std::to_string(s) + " lands beyond the horizon");
        }
        if (p > static_cast<long long>(config.seat_capacity) * f) {
          throw ValidationError("passengers exceed seat capacity of demanded flights at step " +
                                std::to_string(s));
        }
      }
    }
  }
}

MilpModel BuildFleetSizing(const NetworkConfig& raw_config, const DemandTimeSeries& demand,
                           double flight_weight, ChargeArcs arcs) {
  const NetworkConfig config = Validated(raw_config);
  ValidateDemand(config, demand);
  MilpModel model(ModelKind::kFleetSizing);
  AddNetworkCore(config, arcs, model);

  for (const auto& term : FleetTerms(config, arcs, model)) model.AddObjectiveTerm(term.var, term.coef);
  AddFlightPenalty(config, model, flight_weight);
  model.set_integer_objective(Structure(config, flight_weight, -1));

  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int T = config.horizon();
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int t = 1; t <= T; ++t) {
        Constraint c;
        c.name = "demand" + Idx({i, j, t});
        c.tag = ConstraintTag::kDemand;
        c.sense = Sense::kGreaterEqual;
        c.rhs = DemandAt(demand, i, j, t, false);
        for (int k = 1; k <= K; ++k) c.terms.push_back({model.Index(VarKey::Flight(i, j, k, t)), 1.0});
        model.AddConstraint(std::move(c));
      }
    }
  model.Validate();
  return model;
}

MilpModel BuildSpill(const NetworkConfig& raw_config, const DemandTimeSeries& demand, int fleet_size,
                     double flight_weight, ChargeArcs arcs) {
  if (fleet_size < 0) throw ValidationError("fleet size must be nonnegative");
  const NetworkConfig config = Validated(raw_config);
  ValidateDemand(config, demand);
  MilpModel model(ModelKind::kSpill);
  AddNetworkCore(config, arcs, model);

  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int T = config.horizon();
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int t = 1; t <= T; ++t) {
        // Lower bound 0 carries s >= 0.
        const int s = model.AddVariable(VarKey::Spill(i, j, t), 0.0);
        model.AddObjectiveTerm(s, 1.0);
      }
    }
  AddFlightPenalty(config, model, flight_weight);
  model.set_integer_objective(Structure(config, flight_weight, fleet_size));

  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int t = 1; t <= T; ++t) {
        Constraint c;
        c.name = "spill" + Idx({i, j, t});
        c.tag = ConstraintTag::kSpillDef;
        c.sense = Sense::kGreaterEqual;
        c.rhs = DemandAt(demand, i, j, t, true);
        c.terms.push_back({model.Index(VarKey::Spill(i, j, t)), 1.0});
        for (int k = 0; k <= K; ++k) {
          c.terms.push_back({model.Index(VarKey::Flight(i, j, k, t)),
                             static_cast<double>(config.seat_capacity)});
        }
        model.AddConstraint(std::move(c));
      }
    }

  Constraint fleet;
  fleet.name = "fleet";
  fleet.tag = ConstraintTag::kFleetFix;
  fleet.sense = Sense::kEqual;
  fleet.rhs = fleet_size;
  fleet.terms = FleetTerms(config, arcs, model);
  model.AddConstraint(std::move(fleet));
  model.Validate();
  return model;
}

long long FleetSize(const MilpModel& model, const Solution& solution) {
  long long total = 0;
  const auto& vars = model.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& key = vars[v].key;
    if (key.t != 0) continue;
    if (key.kind == VarKind::kIdle || key.kind == VarKind::kCharge) total += solution.values[v];
  }
  return total;
}

long long TotalFlights(const MilpModel& model, const Solution& solution) {
  long long total = 0;
  const auto& vars = model.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (vars[v].key.kind == VarKind::kFlight) total += solution.values[v];
  }
  return total;
}

long long TotalSpill(const MilpModel& model, const Solution& solution) {
  long long total = 0;
  const auto& vars = model.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (vars[v].key.kind == VarKind::kSpill) total += solution.values[v];
  }
  return total;
}

DemandTimeSeries SpillByStep(const NetworkConfig& config, const MilpModel& model,
                             const Solution& solution, int num_steps) {
  DemandTimeSeries out(config.num_vertiports(), num_steps, config.step_minutes);
  const auto& vars = model.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& key = vars[v].key;
    if (key.kind != VarKind::kSpill || solution.values[v] == 0) continue;
    const int s = SeriesStep(key.t);
    if (s < 0 || s >= num_steps) continue;
    out.Set(key.i, key.j, s, 0, out.passengers(key.i, key.j, s) + static_cast<int>(solution.values[v]));
  }
  return out;
}

std::string SerializeSpill(const DemandTimeSeries& spill, const std::vector<std::string>& names) {
  std::string out = "from,to,step,spill\n";
  for (int i = 0; i < spill.num_vertiports(); ++i)
    for (int j = 0; j < spill.num_vertiports(); ++j)
      for (int s = 0; s < spill.num_steps(); ++s) {
        const int p = spill.passengers(i, j, s);
        if (p == 0) continue;
        out += names.at(static_cast<std::size_t>(i)) + ',' + names.at(static_cast<std::size_t>(j)) +
               ',' + std::to_string(s) + ',' + std::to_string(p) + '\n';
      }
  return out;
}

}  // namespace uam::milp
