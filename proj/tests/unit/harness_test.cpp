#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "uamfleet/errors.hpp"
#include "uamfleet/harness/config.hpp"
#include "uamfleet/harness/pipeline.hpp"
#include "uamfleet/harness/plots.hpp"
#include "uamfleet/harness/report.hpp"

namespace uam::harness {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Config, ParsesFullFile) {
  const auto c = ParseExperimentConfig(R"({
    "schedule": {"synthetic": {"days": 3, "daily_flights_mean": 40, "seed": 9}},
    "days": 2,
    "scenarios": [{"add": 500, "ar_coeff": 0.7}, {"add": 1500, "fleet_sizes": [3, 4]}],
    "dispatch": {"max_wait_minutes": 7},
    "network": {"steps_per_day": 96, "step_minutes": 15, "soc_levels": 8, "soc_increment": 0.1,
                "tau": 1, "kappa": {"default": 2, "overrides": [[0, 1, 5, 3]]}},
    "sweep": {"mode": "none"},
    "solver": {"time_limit": 30, "gap": 0, "charge_arcs": "unit", "warm_start": false},
    "base_seed": 42,
    "write_artifacts": false
  })");
  EXPECT_EQ(c.synthetic.days, 3);
  EXPECT_EQ(c.synthetic.seed, 9u);
  EXPECT_EQ(c.days, 2);
  ASSERT_EQ(c.scenarios.size(), 2u);
  EXPECT_EQ(c.scenarios[0].Label(), "add500_ar0.7");
  EXPECT_EQ(c.scenarios[1].fleet_sizes, (std::vector<int>{3, 4}));
  EXPECT_DOUBLE_EQ(c.max_wait_minutes, 7.0);
  EXPECT_EQ(c.network.steps_per_day, 96);
  EXPECT_EQ(c.network.kappa(0, 1, 5), 3);
  EXPECT_EQ(c.network.kappa(1, 0, 5), 2);
  EXPECT_EQ(c.sweep.mode, SweepMode::kNone);
  EXPECT_EQ(c.solver.charge_arcs, milp::ChargeArcs::kUnitSteps);
  EXPECT_FALSE(c.solver.warm_start);
  EXPECT_EQ(c.base_seed, 42u);
  EXPECT_FALSE(c.write_artifacts);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(ParseExperimentConfig(R"({"scenarioz": []})"), ConfigError);
  auto cplex = ParseExperimentConfig(R"({"scenarios": [{"add": 1}], "solver": {"name": "cplex"}})");
  EXPECT_THROW(cplex.Validate(), ConfigError);
  EXPECT_THROW(ParseExperimentConfig(R"({"scenarios": []})").Validate(), ConfigError);
  EXPECT_THROW(ParseExperimentConfig(R"({"sweep": {"mode": "sideways"}})"), ConfigError);
  EXPECT_THROW(ParseExperimentConfig(R"({"network": {"soc_levels": 4, "extra": 1}})"), ConfigError);
  EXPECT_THROW(ParseExperimentConfig("{not json"), Error);
  EXPECT_THROW(ParseNetworkConfig(R"({"gamma": [1, 2]})"), ConfigError);
}

TEST(Quantile, Interpolates) {
  EXPECT_DOUBLE_EQ(Quantile({3, 1, 2}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(Quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Quantile({1, 2, 3, 4}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(Quantile({5}, 0.9), 5.0);
  EXPECT_DOUBLE_EQ(Quantile({4, 1}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(Quantile({4, 1}, 1.0), 4.0);
  EXPECT_THROW(Quantile({}, 0.5), DomainError);
}

TEST(Sweep, Modes) {
  SweepSpec s;
  Scenario sc;
  s.mode = SweepMode::kRelative;
  s.below = 2;
  EXPECT_EQ(SweepFor(s, sc, 5, {}), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(SweepFor(s, sc, 1, {}), (std::vector<int>{0, 1}));
  EXPECT_TRUE(SweepFor(s, sc, -1, {}).empty());

  s.mode = SweepMode::kAbsolute;
  EXPECT_EQ(SweepFor(s, sc, 5, {4, 6, 5, -1}), (std::vector<int>{3, 4, 5, 6}));
  s.fleet_sizes = {9, 7, 7};
  EXPECT_EQ(SweepFor(s, sc, 5, {}), (std::vector<int>{7, 9}));
  sc.fleet_sizes = {2};
  EXPECT_EQ(SweepFor(s, sc, 5, {}), (std::vector<int>{2}));

  s.mode = SweepMode::kNone;
  EXPECT_TRUE(SweepFor(s, sc, 5, {5}).empty());
}

ExperimentConfig Tiny(double add, std::uint64_t seed) {
  ExperimentConfig c;
  c.synthetic.days = 2;
  c.synthetic.daily_flights_mean = 60;
  c.days = 2;
  c.scenarios = {Scenario{add, 0.7, {}}};
  c.network.steps_per_day = 48;
  c.network.step_minutes = 30;
  c.network.soc_levels = 4;
  c.network.soc_increment = 0.2;
  c.network.tau = TimeVaryingParam(1);
  c.network.kappa = TimeVaryingParam(1);
  c.sweep.mode = SweepMode::kRelative;
  c.sweep.below = 1;
  c.solver.charge_arcs = milp::ChargeArcs::kUnitSteps;
  c.solver.limits.time_limit_seconds = 60;
  c.write_artifacts = false;
  c.SetBaseSeed(seed);
  c.Validate();
  return c;
}

TEST(Pipeline, NoDemandNeedsNoFleet) {
  std::ostringstream log;
  const auto report = RunPipeline(Tiny(0.0, 5), log);
  ASSERT_EQ(report.rows.size(), 2u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.fleet_size, 0) << row.error;
    EXPECT_EQ(row.realized_passengers, 0);
    ASSERT_EQ(row.spill.count(0), 1u);
    EXPECT_EQ(row.spill.at(0).spill, 0);
  }
  EXPECT_EQ(report.failures(), 0);
}

TEST(Pipeline, SameSeedSameReportAndRoundTrip) {
  std::ostringstream log;
  const auto a = RunPipeline(Tiny(150.0, 11), log);
  const auto b = RunPipeline(Tiny(150.0, 11), log);
  EXPECT_EQ(a.failures(), 0);
  const std::string report = SerializeReport(a);
  const std::string spill = SerializeSpillTable(a);
  EXPECT_EQ(report, SerializeReport(b));
  EXPECT_EQ(spill, SerializeSpillTable(b));
  for (const auto& row : a.rows) {
    EXPECT_GT(row.realized_passengers, 0);
    EXPECT_EQ(row.spill.at(static_cast<int>(row.fleet_size)).spill, 0);
    EXPECT_EQ(row.violations, 0);
    for (const auto& [f, cell] : row.spill) {
      EXPECT_LE(cell.lower, cell.upper);
      EXPECT_EQ(cell.violations, 0);
    }
  }
  const auto parsed = ParseReport(report, spill);
  EXPECT_EQ(SerializeReport(parsed), report);
  EXPECT_EQ(SerializeSpillTable(parsed), spill);
}

TEST(Report, SummaryOfHandBuiltRows) {
  AggregateReport r;
  r.scenarios = {Scenario{500, 0.7, {}}};
  for (int d = 0; d < 4; ++d) {
    ProfileRow row;
    row.day = "2019-01-0" + std::to_string(d + 1);
    row.realized_passengers = 100 * (d + 1);
    row.fleet_size = 10 + d;
    row.fleet_status = "Optimal";
    SpillCell cell;
    cell.spill = 2 * d;
    cell.status = "Optimal";
    row.spill[10] = cell;
    r.rows.push_back(row);
  }
  const auto s = Summarize(r);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].profiles, 4);
  EXPECT_DOUBLE_EQ(*s[0].passengers_median, 250.0);
  EXPECT_DOUBLE_EQ(*s[0].fleet_min, 10.0);
  EXPECT_DOUBLE_EQ(*s[0].fleet_max, 13.0);
  const auto sp = SummarizeSpill(r);
  ASSERT_EQ(sp.size(), 1u);
  EXPECT_EQ(sp[0].fleet_size, 10);
  EXPECT_DOUBLE_EQ(sp[0].mean_spill, 3.0);
  EXPECT_NEAR(sp[0].variance_spill, 20.0 / 3.0, 1e-12);
  EXPECT_FALSE(sp[0].mean_lower.has_value());
}

TEST(Plots, GoldenBoxPlot) {
  const std::string svg =
      BoxPlotSvg("Fleet size", "aircraft", {{"add500", {10, 12, 13, 15, 18}}, {"add1500", {30, 33, 35}}, {"empty", {}}});
  EXPECT_EQ(svg, ReadFile(std::string(UAMFLEET_TEST_DATA) + "/box_plot.svg"));
}

TEST(Plots, SinglePointLine) {
  const std::string svg = LinePlotSvg("Spill", "fleet", "passengers", {{"mean", {{5.0, 12.0}}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

}  // namespace
}  // namespace uam::harness
