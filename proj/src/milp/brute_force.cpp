#include "uamfleet/milp/brute_force.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <limits>
#include <unordered_map>

#include "uamfleet/errors.hpp"
#include "uamfleet/milp/builders.hpp"

namespace uam::milp {

namespace {

// One aircraft: ready time r (0 when idle), vertiport, SoC level. A busy
// aircraft becomes idle at (loc, level) at step r.
struct Craft {
  int r = 0;
  int loc = 0;
  int level = 0;
  auto operator<=>(const Craft&) const = default;
};

using Pool = std::vector<Craft>;

constexpr int kRBits = 13;

std::uint64_t Encode(Pool pool) {
  std::sort(pool.begin(), pool.end());
  std::uint64_t key = 0;
  for (const auto& c : pool) {
    const auto item = (static_cast<std::uint64_t>(c.r) << 5) |
                      (static_cast<std::uint64_t>(c.loc) << 4) | static_cast<std::uint64_t>(c.level);
    key = (key << (kRBits + 5)) | item;
  }
  return key;
}

Pool Decode(std::uint64_t key, int size) {
  Pool pool(static_cast<std::size_t>(size));
  for (int n = size - 1; n >= 0; --n) {
    const std::uint64_t item = key & ((std::uint64_t{1} << (kRBits + 5)) - 1);
    key >>= (kRBits + 5);
    pool[static_cast<std::size_t>(n)] = {static_cast<int>(item >> 5), static_cast<int>((item >> 4) & 1),
                                         static_cast<int>(item & 15)};
  }
  return pool;
}

// A decision taken at step t by one available aircraft.
struct Action {
  enum Kind : std::uint8_t { kStay, kFly, kCharge } kind = kStay;
  int loc = 0;
  int level = 0;
  int target = 0;  // destination vertiport or charge level
};

// Cost of a partial schedule, compared lexicographically.
struct Cost {
  long long spill = 0;
  long long flights = 0;
  auto operator<=>(const Cost&) const = default;
};

struct Entry {
  Cost cost;
  std::uint64_t parent = 0;
  std::vector<Action> actions;
};

class Search {
 public:
  Search(const NetworkConfig& config, const DemandTimeSeries& demand, bool cover_demand)
      : config_(config), demand_(demand), cover_(cover_demand), T_(config.horizon()),
        K_(config.soc_levels) {
    // Demanded flights still to come after each step; a lower bound on the
    // flights a covering schedule has left to fly.
    remaining_.assign(static_cast<std::size_t>(T_ + 2), 0);
    for (int t = T_; t >= 0; --t) {
      long long f = 0;
      const int s = SeriesStep(t + 1);
      for (int i = 0; i < config.num_vertiports(); ++i)
        for (int j = 0; j < config.num_vertiports(); ++j) {
          if (i != j && s >= 0 && s < demand.num_steps()) f += demand.flights(i, j, s);
        }
      remaining_[static_cast<std::size_t>(t)] = remaining_[static_cast<std::size_t>(t + 1)] + f;
    }
  }

  // Best cost of a cyclic schedule starting (and ending) with `pool`;
  // nullopt if there is none. Keeps every layer when `keep_layers`.
  // Partial schedules that cannot beat `bound` are dropped.
  std::optional<Cost> Run(const Pool& pool, bool keep_layers, std::optional<Cost> bound = std::nullopt) {
    layers_.clear();
    bound_ = bound;
    const int size = static_cast<int>(pool.size());
    std::unordered_map<std::uint64_t, Entry> current;
    current.emplace(Encode(pool), Entry{});
    if (keep_layers) layers_.push_back(current);
    for (int t = 1; t <= T_; ++t) {
      std::unordered_map<std::uint64_t, Entry> next;
      for (const auto& [key, entry] : current) Expand(t, key, size, entry.cost, keep_layers, next);
      current = std::move(next);
      if (keep_layers) layers_.push_back(current);
      if (current.empty()) return std::nullopt;
    }
    auto it = current.find(EndKey(pool));
    if (it == current.end()) return std::nullopt;
    return it->second.cost;
  }

  // The state after step T has idle aircraft (r = 0) and charges started at
  // T (r > T); shifting those back by T gives the matching start pool.
  std::uint64_t EndKey(const Pool& pool) const {
    Pool shifted = pool;
    for (auto& c : shifted) {
      if (c.r > 0) c.r += T_;
    }
    return Encode(shifted);
  }

  const std::vector<std::unordered_map<std::uint64_t, Entry>>& layers() const { return layers_; }

 private:
  // Choices of an aircraft that is available at step t.
  std::vector<std::pair<Action, Craft>> Options(int t, const Craft& c) const {
    std::vector<std::pair<Action, Craft>> options;
    options.push_back({{Action::kStay, c.loc, c.level, 0}, {0, c.loc, c.level}});
    if (t < T_) {
      for (int j = 0; j < config_.num_vertiports(); ++j) {
        if (j == c.loc) continue;
        const int kappa = config_.kappa(c.loc, j, t);
        const int tau = config_.tau(c.loc, j, t);
        if (c.level < kappa || t + tau > T_) continue;
        options.push_back({{Action::kFly, c.loc, c.level, j}, {t + tau, j, c.level - kappa}});
      }
    }
    for (int y = c.level + 1; y <= K_; ++y) {
      const int done = t + ChargingDuration(c.level, y, config_.charging_curve());
      if (t < T_ && done > T_) continue;
      options.push_back({{Action::kCharge, c.loc, c.level, y}, {done, c.loc, y}});
    }
    return options;
  }

  void Expand(int t, std::uint64_t key, int size, const Cost& base, bool keep,
              std::unordered_map<std::uint64_t, Entry>& next) {
    Pool pool = Decode(key, size);
    Pool busy;
    std::vector<Craft> ready;
    for (const auto& c : pool) {
      if (c.r <= t) {
        ready.push_back({0, c.loc, c.level});
      } else {
        busy.push_back(c);
      }
    }
    std::vector<std::vector<std::pair<Action, Craft>>> options(ready.size());
    for (std::size_t n = 0; n < ready.size(); ++n) options[n] = Options(t, ready[n]);
    std::vector<std::size_t> choice(ready.size(), 0);
    std::vector<Action> actions(ready.size());
    Pool out = busy;
    out.resize(busy.size() + ready.size());
    const int V = config_.num_vertiports();
    std::vector<int> flown(static_cast<std::size_t>(V * V), 0);
    // Odometer over all action combinations.
    while (true) {
      std::fill(flown.begin(), flown.end(), 0);
      long long flights = 0;
      for (std::size_t n = 0; n < ready.size(); ++n) {
        const auto& [action, craft] = options[n][choice[n]];
        actions[n] = action;
        out[busy.size() + n] = craft;
        if (action.kind == Action::kFly) {
          ++flown[static_cast<std::size_t>(action.loc * V + action.target)];
          ++flights;
        }
      }
      bool ok = true;
      long long spill = 0;
      const int s = SeriesStep(t);
      for (int i = 0; i < V && ok; ++i) {
        for (int j = 0; j < V; ++j) {
          if (i == j) continue;
          const int f = (s < demand_.num_steps()) ? demand_.flights(i, j, s) : 0;
          const int p = (s < demand_.num_steps()) ? demand_.passengers(i, j, s) : 0;
          const int n = flown[static_cast<std::size_t>(i * V + j)];
          if (cover_ && n < f) {
            ok = false;
            break;
          }
          spill += std::max(0LL, static_cast<long long>(p) - static_cast<long long>(config_.seat_capacity) * n);
        }
      }
      const Cost cost{base.spill + (cover_ ? 0 : spill), base.flights + flights};
      if (ok && bound_) {
        const Cost least{cost.spill, cost.flights + (cover_ ? remaining_[static_cast<std::size_t>(t)] : 0)};
        ok = least < *bound_;
      }
      if (ok) {
        const std::uint64_t out_key = Encode(out);
        auto it = next.find(out_key);
        if (it == next.end() || cost < it->second.cost) {
          Entry e{cost, key, {}};
          if (keep) e.actions = actions;
          next[out_key] = std::move(e);
        }
      }
      std::size_t n = 0;
      while (n < ready.size()) {
        if (++choice[n] < options[n].size()) break;
        choice[n] = 0;
        ++n;
      }
      if (n == ready.size()) break;
    }
  }

  const NetworkConfig& config_;
  const DemandTimeSeries& demand_;
  bool cover_;
  int T_;
  int K_;
  std::vector<std::unordered_map<std::uint64_t, Entry>> layers_;
  std::optional<Cost> bound_;
  std::vector<long long> remaining_;
};

// Every aircraft state allowed at t=0: idle anywhere at any level, or
// starting a charge that finishes within the horizon.
std::vector<Craft> StartStates(const NetworkConfig& config) {
  std::vector<Craft> states;
  const int T = config.horizon();
  // Full idle aircraft first: good schedules tend to be found early, which
  // tightens the bound for the remaining pools.
  for (int k = config.soc_levels; k >= 0; --k)
    for (int i = 0; i < config.num_vertiports(); ++i) states.push_back({0, i, k});
  for (int i = 0; i < config.num_vertiports(); ++i) {
    for (int x = 0; x < config.soc_levels; ++x)
      for (int y = x + 1; y <= config.soc_levels; ++y) {
        const int d = ChargingDuration(x, y, config.charging_curve());
        if (d <= T) states.push_back({d, i, y});
      }
  }
  return states;
}

void ForEachPool(const std::vector<Craft>& states, int size, const auto& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(size), 0);
  if (size == 0) {
    visit(Pool{});
    return;
  }
  // Nondecreasing index tuples enumerate multisets once each.
  while (true) {
    Pool pool;
    for (auto v : idx) pool.push_back(states[v]);
    visit(pool);
    int n = size - 1;
    while (n >= 0 && idx[static_cast<std::size_t>(n)] + 1 == states.size()) --n;
    if (n < 0) break;
    const auto base = idx[static_cast<std::size_t>(n)] + 1;
    for (int m = n; m < size; ++m) idx[static_cast<std::size_t>(m)] = base;
  }
}

int ChargeOrigin(const NetworkConfig& config, int to_level, int duration) {
  for (int x = 0; x < to_level; ++x) {
    if (ChargingDuration(x, to_level, config.charging_curve()) == duration) return x;
  }
  throw Error("no charge reaches level " + std::to_string(to_level) + " in " +
              std::to_string(duration) + " steps");
}

void Add(const MilpModel& model, std::vector<long long>& values, const VarKey& key, long long v) {
  values[static_cast<std::size_t>(model.Index(key))] += v;
}

}  // namespace

Solution BruteForceSolve(const NetworkConfig& raw_config, const DemandTimeSeries& demand,
                         const MilpModel& model, int fleet_size, double flight_weight) {
  const auto started = std::chrono::steady_clock::now();
  NetworkConfig config = raw_config;
  config.Validate();
  const bool sizing = model.kind() == ModelKind::kFleetSizing;
  if (!sizing && model.kind() != ModelKind::kSpill) throw SizeError("brute force needs a fleet-sizing or spill model");
  if (config.num_vertiports() != 2 || config.horizon() > kBruteForceMaxHorizon ||
      config.soc_levels > kBruteForceMaxLevels) {
    throw SizeError("brute force is limited to 2 vertiports, T <= " +
                    std::to_string(kBruteForceMaxHorizon) + ", K <= " +
                    std::to_string(kBruteForceMaxLevels));
  }
  if (!sizing && (fleet_size < 0 || fleet_size > kBruteForceMaxFleet)) {
    throw SizeError("brute force handles at most " + std::to_string(kBruteForceMaxFleet) + " aircraft");
  }
  ValidateDemand(config, demand);
  if (config.soc_levels >= 2 && !model.Find(VarKey::Charge(0, 0, 2, 0))) {
    throw SizeError("brute force writes its answer with all-pairs charge arcs");
  }

  Search search(config, demand, sizing);
  const auto states = StartStates(config);
  std::optional<Cost> best;
  Pool best_pool;
  int fleet = sizing ? 0 : fleet_size;
  const int last = sizing ? kBruteForceMaxFleet : fleet_size;
  for (; fleet <= last; ++fleet) {
    ForEachPool(states, fleet, [&](const Pool& pool) {
      auto cost = search.Run(pool, false, best);
      if (cost && (!best || *cost < *best)) {
        best = cost;
        best_pool = pool;
      }
    });
    if (best) break;
  }
  if (!best) throw SizeError("fleet-sizing instance needs more than " + std::to_string(kBruteForceMaxFleet) + " aircraft");

  search.Run(best_pool, true);
  const auto& layers = search.layers();
  const int T = config.horizon();
  const int size = static_cast<int>(best_pool.size());
  std::vector<long long> values(model.variables().size(), 0);

  // Walk back from the end state, recording the state after each step.
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(T + 1));
  keys[static_cast<std::size_t>(T)] = search.EndKey(best_pool);
  for (int t = T; t >= 1; --t) {
    const Entry& e = layers[static_cast<std::size_t>(t)].at(keys[static_cast<std::size_t>(t)]);
    keys[static_cast<std::size_t>(t - 1)] = e.parent;
    for (const auto& a : e.actions) {
      if (a.kind == Action::kFly) Add(model, values, VarKey::Flight(a.loc, a.target, a.level, t), 1);
      if (a.kind == Action::kCharge) Add(model, values, VarKey::Charge(a.loc, a.level, a.target, t), 1);
    }
  }
  for (int t = 0; t <= T; ++t) {
    for (const auto& c : Decode(keys[static_cast<std::size_t>(t)], size)) {
      if (c.r == 0) Add(model, values, VarKey::Idle(c.loc, c.level, t), 1);
    }
  }
  for (const auto& c : best_pool) {
    if (c.r > 0) Add(model, values, VarKey::Charge(c.loc, ChargeOrigin(config, c.level, c.r), c.level, 0), 1);
  }
  if (!sizing) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (i == j) continue;
        for (int t = 1; t <= T; ++t) {
          const int s = SeriesStep(t);
          const long long p = s < demand.num_steps() ? demand.passengers(i, j, s) : 0;
          long long flown = 0;
          for (int k = 0; k <= config.soc_levels; ++k) flown += values[static_cast<std::size_t>(model.Index(VarKey::Flight(i, j, k, t)))];
          Add(model, values, VarKey::Spill(i, j, t), std::max(0LL, p - config.seat_capacity * flown));
        }
      }
  }

  Solution solution;
  solution.status = SolveStatus::kOptimal;
  solution.values = std::move(values);
  solution.objective_value = EvaluateObjective(model, solution.values);
  const double expected = (sizing ? fleet : best->spill) + flight_weight * static_cast<double>(best->flights);
  if (std::abs(solution.objective_value - expected) > 1e-9 * std::max(1.0, expected)) {
    throw Error("brute force reconstruction does not reproduce its own objective");
  }
  solution.dual_bound = solution.objective_value;
  solution.gap = 0.0;
  solution.integer_part_proven = true;
  solution.message = "enumerated";
  solution.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return solution;
}

}  // namespace uam::milp
