#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "uamfleet/csv.hpp"
#include "uamfleet/demand.hpp"
#include "uamfleet/dispatch.hpp"
#include "uamfleet/errors.hpp"
#include "uamfleet/harness/config.hpp"
#include "uamfleet/harness/pipeline.hpp"
#include "uamfleet/harness/plots.hpp"
#include "uamfleet/harness/report.hpp"
#include "uamfleet/heuristics.hpp"
#include "uamfleet/milp/builders.hpp"
#include "uamfleet/milp/lp_writer.hpp"
#include "uamfleet/milp/validate.hpp"
#include "uamfleet/milp/warm_start.hpp"
#include "uamfleet/schedule.hpp"

namespace {

using namespace uam;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitPartial = 4;

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    csv::WriteFile(path, text);
  }
}

struct SolverFlags {
  std::string solver = "highs";
  double time_limit = 600.0;
  double gap = 0.005;
  double flight_weight = milp::kDefaultFlightWeight;
  bool verbose = false;
  bool interior_point = false;
  std::string charge_arcs = "all";

  void Add(CLI::App* app) {
    app->add_flag("--verbose", verbose, "show solver log");
    app->add_flag("--ipm", interior_point, "solve node relaxations with interior point");
    app->add_option("--charge-arcs", charge_arcs, "all (every x->y) or unit (x->x+1 only)")
        ->capture_default_str();
    app->add_option("--solver", solver, "highs or highs-lp")->capture_default_str();
    app->add_option("--time-limit", time_limit, "seconds per solve")->capture_default_str();
    app->add_option("--gap", gap, "relative MIP gap")->capture_default_str();
    app->add_option("--flight-weight", flight_weight, "objective weight per flight")->capture_default_str();
  }
  milp::SolverLimits Limits() const {
    milp::SolverLimits l;
    l.time_limit_seconds = time_limit;
    l.relative_gap = gap;
    l.stop_when_integer_part_proven = true;
    l.verbose = verbose;
    l.interior_point = interior_point;
    return l;
  }
  milp::ChargeArcs Arcs() const { return milp::ParseChargeArcs(charge_arcs); }
};

struct SeriesInput {
  std::string series_path;
  std::string network_path;

  void Add(CLI::App* app) {
    app->add_option("--series", series_path, "dispatch series CSV")->required();
    app->add_option("--network", network_path, "network JSON (defaults to full scale)");
  }
  NetworkConfig Network() const {
    if (network_path.empty()) return DefaultNetworkConfig();
    return harness::ParseNetworkConfig(csv::ReadFile(network_path));
  }
  DemandTimeSeries Series(const NetworkConfig& net) const {
    return ParseSeries(csv::ReadFile(series_path), net.vertiports, net.steps_per_day, net.step_minutes);
  }
};

void Report(const milp::Solution& sol) {
  std::cerr << "status=" << milp::StatusName(sol.status) << " objective=" << sol.objective_value
            << " gap=" << sol.gap << " seconds=" << sol.seconds << '\n';
}

int Run(int argc, char** argv) {
  CLI::App app{"Fleet sizing and spill analysis for a two-vertiport air taxi network"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  int jobs = 1;

  // gen-schedule
  auto* gen_schedule = app.add_subcommand("gen-schedule", "write a synthetic airline schedule CSV");
  SyntheticScheduleParams sched;
  std::string sched_start = "2019-01-01", sched_out;
  gen_schedule->add_option("--days", sched.days)->capture_default_str();
  gen_schedule->add_option("--start", sched_start)->capture_default_str();
  gen_schedule->add_option("--daily-flights", sched.daily_flights_mean)->capture_default_str();
  gen_schedule->add_option("--arrival-share", sched.arrival_share)->capture_default_str();
  gen_schedule->add_option("--seed", seed)->capture_default_str();
  gen_schedule->add_option("-o,--out", sched_out, "output path, stdout when omitted");

  // gen-demand
  auto* gen_demand = app.add_subcommand("gen-demand", "generate passenger arrival profiles");
  std::string demand_schedule, demand_out;
  DemandParams demand;
  int demand_days = 0;
  gen_demand->add_option("--schedule", demand_schedule, "schedule CSV")->required();
  gen_demand->add_option("--add", demand.add, "expected daily directional demand")->required();
  gen_demand->add_option("--ar", demand.ar_coeff, "autoregressive coefficient")->capture_default_str();
  gen_demand->add_option("--days", demand_days, "first N days only");
  gen_demand->add_option("--seed", seed)->capture_default_str();
  gen_demand->add_option("--jobs", jobs)->capture_default_str();
  gen_demand->add_option("-o,--out", demand_out);

  // dispatch
  auto* dispatch = app.add_subcommand("dispatch", "turn one day of passenger arrivals into flight demand");
  std::string dispatch_profiles, dispatch_day, dispatch_network, dispatch_out;
  double max_wait = 5.0;
  dispatch->add_option("--profiles", dispatch_profiles, "profile CSV")->required();
  dispatch->add_option("--day", dispatch_day, "YYYY-MM-DD (required if the file holds several days)");
  dispatch->add_option("--network", dispatch_network, "network JSON for step length and seats");
  dispatch->add_option("--max-wait", max_wait, "minutes")->capture_default_str();
  dispatch->add_option("-o,--out", dispatch_out);

  // size-fleet
  auto* size_fleet = app.add_subcommand("size-fleet", "solve the minimum fleet program");
  SeriesInput size_in;
  SolverFlags size_solver;
  std::string size_lp;
  size_in.Add(size_fleet);
  size_solver.Add(size_fleet);
  size_fleet->add_option("--lp", size_lp, "also write the model in LP format");

  // spill
  auto* spill = app.add_subcommand("spill", "solve the minimum spill program at a fleet size");
  SeriesInput spill_in;
  SolverFlags spill_solver;
  int spill_fleet = 0;
  std::string spill_out, spill_lp;
  spill_in.Add(spill);
  spill_solver.Add(spill);
  spill->add_option("--fleet", spill_fleet, "fleet size F")->required();
  spill->add_option("-o,--out", spill_out, "spill per step CSV");
  spill->add_option("--lp", spill_lp, "also write the model in LP format");
  bool spill_warm = false;
  spill->add_flag("--warm-start", spill_warm, "solve fleet sizing first and cut its schedule down to F");

  // simulate-bounds
  auto* bounds = app.add_subcommand("simulate-bounds", "run the lower and upper bound operating policies");
  SeriesInput bounds_in;
  int bounds_fleet = 0;
  std::string lower_out, upper_out;
  bounds_in.Add(bounds);
  bounds->add_option("--fleet", bounds_fleet, "fleet size F")->required();
  bounds->add_option("--lower-out", lower_out, "lower bound spill per step CSV");
  bounds->add_option("--upper-out", upper_out, "upper bound spill per step CSV");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run the full pipeline from a JSON config");
  std::string exp_config, exp_out, exp_solver;
  std::optional<std::uint64_t> exp_seed;
  std::optional<int> exp_jobs;
  std::optional<double> exp_time, exp_gap;
  experiment->add_option("--config", exp_config, "experiment JSON")->required();
  experiment->add_option("--seed", exp_seed, "override base_seed");
  experiment->add_option("--jobs", exp_jobs, "override jobs");
  experiment->add_option("--solver", exp_solver, "override solver name");
  experiment->add_option("--time-limit", exp_time, "override solver time limit");
  experiment->add_option("--gap", exp_gap, "override relative gap");
  experiment->add_option("--out-dir", exp_out, "override output_dir");

  // plot
  auto* plot = app.add_subcommand("plot", "render SVG plots from report.csv and spill.csv");
  std::string plot_in, plot_out;
  plot->add_option("--report-dir", plot_in, "directory holding report.csv and spill.csv")->required();
  plot->add_option("-o,--out-dir", plot_out, "defaults to the report directory");

  CLI11_PARSE(app, argc, argv);

  if (*gen_schedule) {
    if (!ParseIsoDate(sched_start, sched.start_day)) throw ConfigError("--start must be YYYY-MM-DD");
    sched.seed = seed;
    Emit(sched_out, SerializeSchedule(GenerateSyntheticSchedule(sched)));
  } else if (*gen_demand) {
    const AirlineSchedule schedule = ParseSchedule(csv::ReadFile(demand_schedule));
    auto profiles = GenerateProfiles(schedule, demand, seed, jobs);
    if (demand_days > 0 && static_cast<std::size_t>(demand_days) < profiles.size()) {
      profiles.resize(static_cast<std::size_t>(demand_days));
    }
    Emit(demand_out, SerializeProfiles(profiles));
  } else if (*dispatch) {
    NetworkConfig net = dispatch_network.empty() ? DefaultNetworkConfig()
                                                 : harness::ParseNetworkConfig(csv::ReadFile(dispatch_network));
    const auto profiles = ParseProfiles(csv::ReadFile(dispatch_profiles));
    const ArrivalProfile* chosen = nullptr;
    for (const auto& p : profiles) {
      if (dispatch_day.empty() ? profiles.size() == 1 : FormatIsoDate(p.day) == dispatch_day) chosen = &p;
    }
    if (chosen == nullptr) {
      throw ConfigError(dispatch_day.empty() ? "profile file holds several days; pass --day"
                                             : "day " + dispatch_day + " not in profile file");
    }
    DispatchRule rule{net.seat_capacity, max_wait, net.step_minutes};
    Emit(dispatch_out, SerializeSeries(Dispatch(*chosen, rule), net.vertiports));
  } else if (*size_fleet) {
    const NetworkConfig net = size_in.Network();
    const auto series = size_in.Series(net);
    const auto model = milp::BuildFleetSizing(net, series, size_solver.flight_weight, size_solver.Arcs());
    if (!size_lp.empty()) csv::WriteFile(size_lp, milp::WriteLp(model));
    const auto sol = harness::MakeSolver(size_solver.solver)->Solve(model, size_solver.Limits());
    Report(sol);
    if (!sol.HasValues()) return kExitSolver;
    const auto violations = milp::ValidateSolution(net, {milp::ModelKind::kFleetSizing, &series, 0}, model, sol);
    for (const auto& v : violations) std::cerr << "violation: " << v.ToString() << '\n';
    std::cout << "fleet_size," << milp::FleetSize(model, sol) << "\nflights," << milp::TotalFlights(model, sol)
              << "\nstatus," << milp::StatusName(sol.status) << "\ninteger_part_proven,"
              << (sol.integer_part_proven ? 1 : 0) << '\n';
    if (!violations.empty()) return kExitSolver;
  } else if (*spill) {
    const NetworkConfig net = spill_in.Network();
    const auto series = spill_in.Series(net);
    const auto model = milp::BuildSpill(net, series, spill_fleet, spill_solver.flight_weight, spill_solver.Arcs());
    if (!spill_lp.empty()) csv::WriteFile(spill_lp, milp::WriteLp(model));
    auto solver = harness::MakeSolver(spill_solver.solver);
    std::optional<std::vector<long long>> start;
    if (spill_warm) {
      const auto sizing = milp::BuildFleetSizing(net, series, spill_solver.flight_weight, spill_solver.Arcs());
      const auto first = solver->Solve(sizing, spill_solver.Limits());
      if (first.HasValues()) start = milp::SpillStartFrom(net, series, sizing, first.values, model, spill_fleet);
      std::cerr << "warm start: " << (start ? "built" : "unavailable") << " (" << first.seconds << " s)\n";
    }
    const auto sol = solver->Solve(model, spill_solver.Limits(), start ? &*start : nullptr);
    Report(sol);
    if (!sol.HasValues()) return kExitSolver;
    const auto violations = milp::ValidateSolution(net, {milp::ModelKind::kSpill, &series, spill_fleet}, model, sol);
    for (const auto& v : violations) std::cerr << "violation: " << v.ToString() << '\n';
    if (!spill_out.empty()) {
      csv::WriteFile(spill_out, milp::SerializeSpill(milp::SpillByStep(net, model, sol, series.num_steps()), net.vertiports));
    }
    std::cout << "spill," << milp::TotalSpill(model, sol) << "\nflights," << milp::TotalFlights(model, sol)
              << "\nstatus," << milp::StatusName(sol.status) << "\ninteger_part_proven,"
              << (sol.integer_part_proven ? 1 : 0) << '\n';
    if (!violations.empty()) return kExitSolver;
  } else if (*bounds) {
    const NetworkConfig net = bounds_in.Network();
    const auto series = bounds_in.Series(net);
    const auto lower = SimulateLowerBound(net, series, bounds_fleet);
    const auto upper = SimulateUpperBound(net, series, bounds_fleet);
    if (!lower_out.empty()) csv::WriteFile(lower_out, milp::SerializeSpill(lower.spill_by_step, net.vertiports));
    if (!upper_out.empty()) csv::WriteFile(upper_out, milp::SerializeSpill(upper.spill_by_step, net.vertiports));
    std::cout << "lower_spill," << lower.daily_spill << "\nupper_spill," << upper.daily_spill
              << "\nupper_repositioning_flights," << upper.repositioning_flights << '\n';
  } else if (*experiment) {
    auto config = harness::ParseExperimentConfig(csv::ReadFile(exp_config));
    if (exp_seed) config.SetBaseSeed(*exp_seed);
    if (exp_jobs) config.jobs = *exp_jobs;
    if (!exp_solver.empty()) config.solver.name = exp_solver;
    if (exp_time) config.solver.limits.time_limit_seconds = *exp_time;
    if (exp_gap) config.solver.limits.relative_gap = *exp_gap;
    if (!exp_out.empty()) config.output_dir = exp_out;
    config.Validate();
    const auto report = harness::RunPipeline(config, std::cerr);
    for (const auto& path : harness::WriteReport(report, config.output_dir)) std::cerr << "wrote " << path << '\n';
    for (const auto& path : harness::EmitPlots(report, config.output_dir, std::cerr)) std::cerr << "wrote " << path << '\n';
    if (report.failures() > 0) {
      std::cerr << report.failures() << " profile(s) failed; see the error column of report.csv\n";
      return kExitPartial;
    }
  } else if (*plot) {
    namespace fs = std::filesystem;
    const auto report = harness::ParseReport(csv::ReadFile((fs::path(plot_in) / "report.csv").string()),
                                             csv::ReadFile((fs::path(plot_in) / "spill.csv").string()));
    for (const auto& path : harness::EmitPlots(report, plot_out.empty() ? plot_in : plot_out, std::cerr)) {
      std::cerr << "wrote " << path << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const uam::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const uam::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const uam::ValidationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const uam::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
