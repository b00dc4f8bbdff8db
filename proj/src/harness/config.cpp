#include "uamfleet/harness/config.hpp"

#include <json.hpp>

#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"
#include "uamfleet/random.hpp"

namespace uam::harness {

using nlohmann::json;

std::string Scenario::Label() const {
  return "add" + csv::FormatShortest(add) + "_ar" + csv::FormatShortest(ar_coeff);
}

namespace {

void RejectUnknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void Get(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

SkewNormalParams ParseSkew(const json& obj, SkewNormalParams base, const std::string& where) {
  RejectUnknown(obj, {"location", "scale", "shape"}, where);
  Get(obj, "location", base.location, where);
  Get(obj, "scale", base.scale, where);
  Get(obj, "shape", base.shape, where);
  return base;
}

// Either a constant or {"default": v, "overrides": [[from, to, t, value], ...]}.
TimeVaryingParam ParseVarying(const json& value, const std::string& where) {
  if (value.is_number_integer()) return TimeVaryingParam(value.get<int>());
  RejectUnknown(value, {"default", "overrides"}, where);
  int base = 1;
  Get(value, "default", base, where);
  TimeVaryingParam p(base);
  if (value.contains("overrides")) {
    for (const auto& row : value.at("overrides")) {
      if (!row.is_array() || row.size() != 4) throw ConfigError(where + ".overrides rows are [from, to, t, value]");
      p.Override(row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<int>());
    }
  }
  return p;
}

NetworkConfig NetworkFromJson(const json& obj) {
  const std::string where = "network";
  RejectUnknown(obj,
                {"vertiports", "steps_per_day", "step_minutes", "soc_levels", "reserve_fraction",
                 "soc_increment", "gamma", "tau", "kappa", "seat_capacity"},
                where);
  NetworkConfig c;
  Get(obj, "vertiports", c.vertiports, where);
  Get(obj, "steps_per_day", c.steps_per_day, where);
  Get(obj, "step_minutes", c.step_minutes, where);
  Get(obj, "soc_levels", c.soc_levels, where);
  Get(obj, "reserve_fraction", c.reserve_fraction, where);
  Get(obj, "soc_increment", c.soc_increment, where);
  Get(obj, "gamma", c.gamma, where);
  Get(obj, "seat_capacity", c.seat_capacity, where);
  if (obj.contains("tau")) c.tau = ParseVarying(obj.at("tau"), where + ".tau");
  if (obj.contains("kappa")) c.kappa = ParseVarying(obj.at("kappa"), where + ".kappa");
  return c;
}

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

void ExperimentConfig::Validate() {
  if (scenarios.empty()) throw ConfigError("at least one scenario is required");
  for (const auto& s : scenarios) {
    DemandParams p = demand;
    p.add = s.add;
    p.ar_coeff = s.ar_coeff;
    try {
      p.Validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("scenario ") + s.Label() + ": " + e.what());
    }
    for (int f : s.fleet_sizes) {
      if (f < 0) throw ConfigError("fleet sizes must be nonnegative");
    }
  }
  network.Validate();
  if (network.num_vertiports() != 2) throw ConfigError("the demand model defines exactly two vertiports");
  if (network.steps_per_day * network.step_minutes != kMinutesPerDay) {
    throw ConfigError("steps_per_day * step_minutes must cover 1440 minutes");
  }
  if (sweep.below < 0) throw ConfigError("sweep.below must be nonnegative");
  for (int f : sweep.fleet_sizes) {
    if (f < 0) throw ConfigError("sweep lower bound must be nonnegative");
  }
  if (solver.name != "highs" && solver.name != "highs-lp") {
    throw ConfigError("unknown solver '" + solver.name + "' (expected highs or highs-lp)");
  }
  if (solver.limits.time_limit_seconds <= 0.0) throw ConfigError("time limit must be positive");
  if (solver.limits.relative_gap < 0.0) throw ConfigError("gap must be nonnegative");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (days < 0) throw ConfigError("days must be nonnegative");
  if (max_wait_minutes < 0.0) throw ConfigError("max_wait_minutes must be nonnegative");
}

void ExperimentConfig::SetBaseSeed(std::uint64_t seed) {
  base_seed = seed;
  if (!synthetic_seed_explicit) synthetic.seed = DeriveSeed(seed, "schedule");
}

DispatchRule ExperimentConfig::dispatch_rule() const {
  DispatchRule rule;
  rule.seat_capacity = network.seat_capacity;
  rule.step_minutes = network.step_minutes;
  rule.max_wait_minutes = max_wait_minutes;
  return rule;
}

ExperimentConfig ParseExperimentConfig(std::string_view text) {
  const json root = Parse(text);
  RejectUnknown(root,
                {"schedule", "days", "scenarios", "demand", "dispatch", "network", "sweep",
                 "simulate_bounds", "solver", "base_seed", "jobs", "output_dir", "write_artifacts"},
                "config");
  ExperimentConfig c;
  Get(root, "base_seed", c.base_seed, "config");
  Get(root, "days", c.days, "config");
  Get(root, "jobs", c.jobs, "config");
  Get(root, "output_dir", c.output_dir, "config");
  Get(root, "simulate_bounds", c.simulate_bounds, "config");
  Get(root, "write_artifacts", c.write_artifacts, "config");
  c.synthetic.seed = DeriveSeed(c.base_seed, "schedule");

  if (root.contains("schedule")) {
    const json& s = root.at("schedule");
    RejectUnknown(s, {"csv", "synthetic"}, "schedule");
    if (s.contains("csv") == s.contains("synthetic")) {
      throw ConfigError("schedule needs exactly one of 'csv' or 'synthetic'");
    }
    if (s.contains("csv")) {
      c.schedule_csv = s.at("csv").get<std::string>();
    } else {
      const json& p = s.at("synthetic");
      const std::string where = "schedule.synthetic";
      RejectUnknown(p,
                    {"days", "start_day", "daily_flights_mean", "peak_hours", "seat_mix",
                     "arrival_share", "arrival_shape", "departure_shape", "seed"},
                    where);
      Get(p, "days", c.synthetic.days, where);
      Get(p, "daily_flights_mean", c.synthetic.daily_flights_mean, where);
      Get(p, "peak_hours", c.synthetic.peak_hours, where);
      Get(p, "arrival_share", c.synthetic.arrival_share, where);
      Get(p, "arrival_shape", c.synthetic.arrival_shape, where);
      Get(p, "departure_shape", c.synthetic.departure_shape, where);
      if (p.contains("seed")) {
        Get(p, "seed", c.synthetic.seed, where);
        c.synthetic_seed_explicit = true;
      }
      if (p.contains("start_day")) {
        if (!ParseIsoDate(p.at("start_day").get<std::string>(), c.synthetic.start_day)) {
          throw ConfigError(where + ".start_day must be YYYY-MM-DD");
        }
      }
      if (p.contains("seat_mix")) {
        c.synthetic.seat_mix.clear();
        for (const auto& row : p.at("seat_mix")) {
          if (!row.is_array() || row.size() != 2) throw ConfigError(where + ".seat_mix rows are [seats, weight]");
          c.synthetic.seat_mix.push_back({row[0].get<int>(), row[1].get<double>()});
        }
      }
    }
  }

  if (root.contains("scenarios")) {
    for (const auto& s : root.at("scenarios")) {
      RejectUnknown(s, {"add", "ar_coeff", "fleet_sizes"}, "scenario");
      Scenario sc;
      Get(s, "add", sc.add, "scenario");
      Get(s, "ar_coeff", sc.ar_coeff, "scenario");
      Get(s, "fleet_sizes", sc.fleet_sizes, "scenario");
      c.scenarios.push_back(sc);
    }
  }
  if (root.contains("demand")) {
    const json& d = root.at("demand");
    RejectUnknown(d, {"lead", "lag", "transfer_minutes"}, "demand");
    if (d.contains("lead")) c.demand.lead = ParseSkew(d.at("lead"), c.demand.lead, "demand.lead");
    if (d.contains("lag")) c.demand.lag = ParseSkew(d.at("lag"), c.demand.lag, "demand.lag");
    Get(d, "transfer_minutes", c.demand.transfer_minutes, "demand");
  }
  if (root.contains("dispatch")) {
    RejectUnknown(root.at("dispatch"), {"max_wait_minutes"}, "dispatch");
    Get(root.at("dispatch"), "max_wait_minutes", c.max_wait_minutes, "dispatch");
  }
  if (root.contains("network")) c.network = NetworkFromJson(root.at("network"));
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    RejectUnknown(s, {"mode", "below", "fleet_sizes"}, "sweep");
    std::string mode = "absolute";
    Get(s, "mode", mode, "sweep");
    if (mode == "absolute") {
      c.sweep.mode = SweepMode::kAbsolute;
    } else if (mode == "relative") {
      c.sweep.mode = SweepMode::kRelative;
    } else if (mode == "none") {
      c.sweep.mode = SweepMode::kNone;
    } else {
      throw ConfigError("sweep.mode must be 'absolute', 'relative' or 'none'");
    }
    Get(s, "below", c.sweep.below, "sweep");
    Get(s, "fleet_sizes", c.sweep.fleet_sizes, "sweep");
  }
  if (root.contains("solver")) {
    const json& s = root.at("solver");
    RejectUnknown(s, {"name", "time_limit", "gap", "threads", "flight_weight", "verbose", "charge_arcs",
                      "interior_point", "warm_start"},
                  "solver");
    Get(s, "name", c.solver.name, "solver");
    Get(s, "time_limit", c.solver.limits.time_limit_seconds, "solver");
    Get(s, "gap", c.solver.limits.relative_gap, "solver");
    Get(s, "threads", c.solver.limits.threads, "solver");
    Get(s, "verbose", c.solver.limits.verbose, "solver");
    Get(s, "flight_weight", c.solver.flight_weight, "solver");
    Get(s, "interior_point", c.solver.limits.interior_point, "solver");
    Get(s, "warm_start", c.solver.warm_start, "solver");
    if (s.contains("charge_arcs")) {
      std::string arcs;
      Get(s, "charge_arcs", arcs, "solver");
      c.solver.charge_arcs = milp::ParseChargeArcs(arcs);
    }
  }
  return c;
}

NetworkConfig ParseNetworkConfig(std::string_view json_text) {
  NetworkConfig c = NetworkFromJson(Parse(json_text));
  c.Validate();
  return c;
}

}  // namespace uam::harness
