#include "uamfleet/harness/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>

#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"
#include "uamfleet/harness/report.hpp"
#include "uamfleet/heuristics.hpp"
#include "uamfleet/milp/builders.hpp"
#include "uamfleet/milp/highs_adapter.hpp"
#include "uamfleet/milp/validate.hpp"
#include "uamfleet/milp/warm_start.hpp"

namespace uam::harness {

namespace fs = std::filesystem;

bool ProfileRow::failed() const { return !error.empty(); }

int AggregateReport::failures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const ProfileRow& r) { return r.failed(); }));
}

std::unique_ptr<milp::SolverAdapter> MakeSolver(const std::string& name) {
  if (name == "highs") return std::make_unique<milp::HighsAdapter>();
  if (name == "highs-lp") return std::make_unique<milp::HighsAdapter>(milp::HighsAdapter::Input::kLpFile);
  throw SolverError("solver '" + name + "' is not available; use 'highs' or 'highs-lp'");
}

AirlineSchedule LoadSchedule(const ExperimentConfig& config) {
  if (config.schedule_csv) return ParseSchedule(csv::ReadFile(*config.schedule_csv));
  return GenerateSyntheticSchedule(config.synthetic);
}

std::vector<int> SweepFor(const SweepSpec& sweep, const Scenario& scenario, long long own_fleet,
                          const std::vector<long long>& scenario_fleets) {
  std::vector<int> sizes;
  if (sweep.mode == SweepMode::kNone) return sizes;
  if (sweep.mode == SweepMode::kRelative) {
    if (own_fleet < 0) return sizes;
    for (long long f = std::max(0LL, own_fleet - sweep.below); f <= own_fleet; ++f) {
      sizes.push_back(static_cast<int>(f));
    }
    return sizes;
  }
  if (!scenario.fleet_sizes.empty()) {
    sizes = scenario.fleet_sizes;
  } else if (!sweep.fleet_sizes.empty()) {
    sizes = sweep.fleet_sizes;
  } else {
    std::vector<double> known;
    for (long long f : scenario_fleets) {
      if (f >= 0) known.push_back(static_cast<double>(f));
    }
    if (known.empty()) return sizes;
    const auto median = static_cast<long long>(std::floor(Quantile(known, 0.5)));
    const auto top = static_cast<long long>(*std::max_element(known.begin(), known.end()));
    for (long long f = std::max(0LL, median - sweep.below); f <= top; ++f) sizes.push_back(static_cast<int>(f));
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

namespace {

struct Task {
  std::size_t row = 0;
  std::size_t day_index = 0;
  DemandTimeSeries series;
  NetworkConfig network;
  std::vector<long long> sizing_values;  // kept only for warm starts
};

// Runs fn(task_index) over a bounded pool; each worker owns its solver.
void ParallelFor(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n = next++; n < count; n = next++) fn(n);
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
}

fs::path ArtifactDir(const ExperimentConfig& config, const Scenario& scenario, const std::string& day) {
  return fs::path(config.output_dir) / "artifacts" / scenario.Label() / day;
}

}  // namespace

AggregateReport RunPipeline(const ExperimentConfig& raw_config, std::ostream& log) {
  ExperimentConfig config = raw_config;
  config.Validate();
  MakeSolver(config.solver.name);  // fail early when unavailable

  const AirlineSchedule schedule = LoadSchedule(config);
  const std::size_t num_days = config.days > 0
                                   ? std::min<std::size_t>(static_cast<std::size_t>(config.days), schedule.num_days())
                                   : schedule.num_days();
  AggregateReport report;
  report.scenarios = config.scenarios;
  std::vector<Task> tasks;
  std::vector<std::vector<double>> rates;
  for (std::size_t s = 0; s < config.scenarios.size(); ++s) {
    rates.push_back(FlightRates(schedule, config.scenarios[s].add));
    for (std::size_t d = 0; d < num_days; ++d) {
      ProfileRow row;
      row.scenario = s;
      row.day = FormatIsoDate(schedule.days()[d]);
      Task task;
      task.row = report.rows.size();
      task.day_index = d;
      task.network = config.network;
      tasks.push_back(std::move(task));
      report.rows.push_back(std::move(row));
    }
  }
  if (config.write_artifacts) fs::create_directories(config.output_dir);

  std::mutex log_mutex;
  auto note = [&](const std::string& line) {
    std::lock_guard lock(log_mutex);
    log << line << '\n';
  };
  const milp::SolverLimits limits = config.solver.limits;

  // Fleet sizing per profile.
  ParallelFor(tasks.size(), config.jobs, [&](std::size_t n) {
    Task& task = tasks[n];
    ProfileRow& row = report.rows[task.row];
    const Scenario& scenario = config.scenarios[row.scenario];
    try {
      DemandParams params = config.demand;
      params.add = scenario.add;
      params.ar_coeff = scenario.ar_coeff;
      Rng rng(DaySeed(config.base_seed, schedule.days()[task.day_index]));
      const ArrivalProfile profile = GenerateDay(schedule, rates[row.scenario], task.day_index, params, rng);
      task.series = Dispatch(profile, config.dispatch_rule());
      row.realized_passengers = static_cast<long long>(profile.arrivals.size());
      row.demanded_flights = task.series.TotalFlights();
      if (config.write_artifacts) {
        const fs::path dir = ArtifactDir(config, scenario, row.day);
        fs::create_directories(dir);
        csv::WriteFile((dir / "profile.csv").string(), SerializeProfiles({profile}));
        csv::WriteFile((dir / "series.csv").string(), SerializeSeries(task.series, config.network.vertiports));
      }
      auto solver = MakeSolver(config.solver.name);
      const milp::MilpModel model =
          milp::BuildFleetSizing(task.network, task.series, config.solver.flight_weight, config.solver.charge_arcs);
      milp::SolverLimits sizing_limits = limits;
      sizing_limits.stop_when_integer_part_proven = true;
      const milp::Solution sol = solver->Solve(model, sizing_limits);
      row.fleet_status = milp::StatusName(sol.status);
      row.fleet_gap = sol.gap;
      if (!sol.HasValues()) {
        row.error = "fleet sizing: " + row.fleet_status + " " + sol.message;
        return;
      }
      row.fleet_size = milp::FleetSize(model, sol);
      if (config.solver.warm_start) task.sizing_values = sol.values;
      if (sol.integer_part_proven) row.fleet_gap = 0.0;
      if (sol.status == milp::SolveStatus::kFeasible && sol.integer_part_proven) row.fleet_status = "Optimal";
      const auto violations = milp::ValidateSolution(task.network, {milp::ModelKind::kFleetSizing, &task.series, 0}, model, sol);
      row.violations = static_cast<int>(violations.size());
      if (!violations.empty()) row.error = "fleet sizing solution invalid: " + violations.front().ToString();
      note(scenario.Label() + " " + row.day + ": F*=" + std::to_string(row.fleet_size) + " (" + row.fleet_status + ")");
    } catch (const std::exception& e) {
      row.error = e.what();
      note(scenario.Label() + " " + row.day + ": " + row.error);
    }
  });

  std::vector<std::vector<long long>> fleets(config.scenarios.size());
  for (const auto& row : report.rows) fleets[row.scenario].push_back(row.fleet_size);

  // Spill sweep and bounds.
  ParallelFor(tasks.size(), config.jobs, [&](std::size_t n) {
    Task& task = tasks[n];
    ProfileRow& row = report.rows[task.row];
    if (row.failed()) return;
    const Scenario& scenario = config.scenarios[row.scenario];
    try {
      auto solver = MakeSolver(config.solver.name);
      // Largest fleet first so each solve can start from the previous schedule.
      auto sweep = SweepFor(config.sweep, scenario, row.fleet_size, fleets[row.scenario]);
      std::sort(sweep.begin(), sweep.end(), std::greater<>());
      // Rebuilding is cheaper than holding every profile's model in memory.
      milp::MilpModel previous_model;
      std::vector<long long> previous_values = std::move(task.sizing_values);
      if (!sweep.empty() && !previous_values.empty()) {
        previous_model = milp::BuildFleetSizing(task.network, task.series, config.solver.flight_weight,
                                                config.solver.charge_arcs);
      }
      for (int f : sweep) {
        SpillCell cell;
        milp::MilpModel model =
            milp::BuildSpill(task.network, task.series, f, config.solver.flight_weight, config.solver.charge_arcs);
        milp::SolverLimits spill_limits = limits;
        spill_limits.stop_when_integer_part_proven = true;
        std::optional<std::vector<long long>> start;
        if (config.solver.warm_start && !previous_values.empty()) {
          start = milp::SpillStartFrom(task.network, task.series, previous_model, previous_values, model, f);
        }
        const milp::Solution sol = solver->Solve(model, spill_limits, start ? &*start : nullptr);
        if (sol.HasValues()) {
          previous_values = sol.values;
          previous_model = std::move(model);
        }
        const milp::MilpModel& solved = sol.HasValues() ? previous_model : model;
        cell.status = milp::StatusName(sol.status);
        cell.gap = sol.integer_part_proven ? 0.0 : sol.gap;
        if (sol.status == milp::SolveStatus::kFeasible && sol.integer_part_proven) cell.status = "Optimal";
        if (sol.HasValues()) {
          cell.spill = milp::TotalSpill(solved, sol);
          const auto violations =
              milp::ValidateSolution(task.network, {milp::ModelKind::kSpill, &task.series, f}, solved, sol);
          cell.violations = static_cast<int>(violations.size());
          if (!violations.empty() && row.error.empty()) {
            row.error = "spill solution invalid at F=" + std::to_string(f) + ": " + violations.front().ToString();
          }
          if (config.write_artifacts) {
            const auto by_step = milp::SpillByStep(task.network, solved, sol, task.series.num_steps());
            csv::WriteFile((ArtifactDir(config, scenario, row.day) / ("spill_F" + std::to_string(f) + ".csv")).string(),
                           milp::SerializeSpill(by_step, config.network.vertiports));
          }
        } else if (row.error.empty()) {
          row.error = "spill at F=" + std::to_string(f) + ": " + cell.status + " " + sol.message;
        }
        if (config.simulate_bounds) {
          cell.lower = SimulateLowerBound(task.network, task.series, f).daily_spill;
          cell.upper = SimulateUpperBound(task.network, task.series, f).daily_spill;
        }
        row.spill[f] = cell;
      }
      note(scenario.Label() + " " + row.day + ": spill sweep done");
    } catch (const std::exception& e) {
      row.error = e.what();
      note(scenario.Label() + " " + row.day + ": " + row.error);
    }
  });
  return report;
}

}  // namespace uam::harness
