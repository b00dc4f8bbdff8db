#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "uamfleet/errors.hpp"
#include "uamfleet/milp/brute_force.hpp"
#include "uamfleet/milp/builders.hpp"
#include "uamfleet/milp/highs_adapter.hpp"
#include "uamfleet/milp/lp_writer.hpp"
#include "uamfleet/milp/validate.hpp"
#include "uamfleet/milp/warm_start.hpp"
#include "uamfleet/random.hpp"

namespace uam::milp {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SolverLimits Exact() {
  SolverLimits l;
  l.relative_gap = 0.0;
  l.time_limit_seconds = 60.0;
  return l;
}

// Two vertiports, K=2 with one step per level, flights cost both levels.
NetworkConfig Micro(int steps_per_day = 7) {
  NetworkConfig c;
  c.steps_per_day = steps_per_day;
  c.step_minutes = 10;
  c.soc_levels = 2;
  c.soc_increment = 0.4;
  c.gamma = {1, 1};
  c.tau = TimeVaryingParam(2);
  c.kappa = TimeVaryingParam(2);
  c.Validate();
  return c;
}

DemandTimeSeries Series(const NetworkConfig& c) { return DemandTimeSeries(2, c.steps_per_day, c.step_minutes); }

Solution SolveExact(const MilpModel& m) {
  HighsAdapter highs;
  auto s = highs.Solve(m, Exact());
  EXPECT_EQ(s.status, SolveStatus::kOptimal) << s.message;
  return s;
}

void ExpectValid(const NetworkConfig& c, const DemandTimeSeries& d, ModelKind kind, int fleet,
                 const MilpModel& m, const Solution& s) {
  const auto v = ValidateSolution(c, {kind, &d, fleet}, m, s);
  EXPECT_TRUE(v.empty()) << v.front().ToString();
}

TEST(Builders, ZeroDemandNeedsNoFleet) {
  const auto c = Micro();
  const auto d = Series(c);
  const auto m = BuildFleetSizing(c, d);
  const auto s = SolveExact(m);
  EXPECT_EQ(FleetSize(m, s), 0);
  EXPECT_NEAR(s.objective_value, 0.0, 1e-9);
}

TEST(Builders, OneAndTwoFlights) {
  const auto c = Micro();
  auto d = Series(c);
  d.AddFlight(0, 1, 2, 3);
  auto m = BuildFleetSizing(c, d);
  auto s = SolveExact(m);
  EXPECT_EQ(FleetSize(m, s), 1);
  ExpectValid(c, d, ModelKind::kFleetSizing, 0, m, s);

  d.AddFlight(0, 1, 2, 4);
  m = BuildFleetSizing(c, d);
  s = SolveExact(m);
  EXPECT_EQ(FleetSize(m, s), 2);
  // Both have to fly back to close the cycle.
  EXPECT_EQ(TotalFlights(m, s), 4);
}

TEST(Builders, SpillAtZeroAndAtMinimumFleet) {
  const auto c = Micro();
  auto d = Series(c);
  d.AddFlight(0, 1, 1, 3);
  d.AddFlight(1, 0, 1, 2);
  d.AddFlight(0, 1, 4, 4);
  auto spill0 = BuildSpill(c, d, 0);
  auto s0 = SolveExact(spill0);
  EXPECT_EQ(TotalSpill(spill0, s0), 9);
  EXPECT_EQ(TotalFlights(spill0, s0), 0);

  const auto sizing = BuildFleetSizing(c, d);
  const auto fs = SolveExact(sizing);
  const int fstar = static_cast<int>(FleetSize(sizing, fs));
  const auto spill = BuildSpill(c, d, fstar);
  const auto ss = SolveExact(spill);
  EXPECT_EQ(TotalSpill(spill, ss), 0);
  ExpectValid(c, d, ModelKind::kSpill, fstar, spill, ss);
}

TEST(Builders, RejectsUnfitDemand) {
  const auto c = Micro();
  DemandTimeSeries late(2, 20, 10);
  late.AddFlight(0, 1, 15, 1);
  EXPECT_THROW(BuildFleetSizing(c, late), ValidationError);
  EXPECT_THROW(BuildFleetSizing(c, DemandTimeSeries(3, 7, 10)), ValidationError);
  auto self = Series(c);
  self.AddFlight(0, 0, 1, 1);
  EXPECT_THROW(BuildFleetSizing(c, self), ValidationError);
  EXPECT_THROW(ParseChargeArcs("some"), ConfigError);
  EXPECT_EQ(ParseChargeArcs("unit"), ChargeArcs::kUnitSteps);
}

// Out at step 2, back at step 6 with a two-step flight and a two-step
// recharge: one aircraft does both. Back at step 3 it cannot.
TEST(BruteForce, RoundTripNeedsOneOrTwoAircraft) {
  const auto c = Micro();
  EXPECT_EQ(c.horizon(), 10);
  for (const auto& [back, expected] : {std::pair{6, 1}, std::pair{3, 2}}) {
    auto d = Series(c);
    d.AddFlight(0, 1, 2, 1);
    d.AddFlight(1, 0, back, 1);
    const auto m = BuildFleetSizing(c, d);
    const auto brute = BruteForceSolve(c, d, m, 0, kDefaultFlightWeight);
    ASSERT_EQ(brute.status, SolveStatus::kOptimal);
    EXPECT_EQ(FleetSize(m, brute), expected) << "back at " << back;
    ExpectValid(c, d, ModelKind::kFleetSizing, 0, m, brute);
    EXPECT_EQ(FleetSize(m, SolveExact(m)), expected);
  }
}

TEST(BruteForce, RejectsLargeInstances) {
  const auto c = DefaultNetworkConfig();
  DemandTimeSeries d(2, c.steps_per_day, c.step_minutes);
  const auto m = BuildSpill(c, d, 1);
  EXPECT_THROW(BruteForceSolve(c, d, m, 1, kDefaultFlightWeight), SizeError);
  const auto micro = Micro();
  const auto unit = BuildSpill(micro, Series(micro), 1, kDefaultFlightWeight, ChargeArcs::kUnitSteps);
  EXPECT_THROW(BruteForceSolve(micro, Series(micro), unit, 1, kDefaultFlightWeight), SizeError);
}

TEST(LpWriter, GoldenOneVariable) {
  MilpModel m;
  const int x = m.AddVariable(VarKey::Idle(0, 0, 0));
  m.AddObjectiveTerm(x, 1.0);
  m.AddConstraint({"c1", ConstraintTag::kDemand, {{x, 1.0}}, Sense::kGreaterEqual, 1.0});
  EXPECT_EQ(WriteLp(m), ReadFile(std::string(UAMFLEET_TEST_DATA) + "/one_variable.lp"));
  EXPECT_EQ(WriteLp(m), WriteLp(m));
}

TEST(LpWriter, EmptyModel) {
  const std::string text = WriteLp(MilpModel{});
  EXPECT_EQ(text.rfind("Minimize", 0), 0u);
  EXPECT_EQ(text.substr(text.size() - 4), "End\n");
}

TEST(LpWriter, BuiltModelIsDeterministic) {
  const auto c = Micro();
  auto d = Series(c);
  d.AddFlight(1, 0, 3, 2);
  EXPECT_EQ(WriteLp(BuildSpill(c, d, 2)), WriteLp(BuildSpill(c, d, 2)));
}

TEST(Highs, TrivialModelBothRoutes) {
  MilpModel m;
  const int x = m.AddVariable(VarKey::Idle(0, 0, 0));
  m.AddObjectiveTerm(x, 1.0);
  m.AddConstraint({"c1", ConstraintTag::kDemand, {{x, 1.0}}, Sense::kGreaterEqual, 3.0});
  for (auto input : {HighsAdapter::Input::kInMemory, HighsAdapter::Input::kLpFile}) {
    HighsAdapter highs(input);
    const auto s = highs.Solve(m, Exact());
    ASSERT_EQ(s.status, SolveStatus::kOptimal) << highs.name();
    EXPECT_EQ(s.values.at(0), 3);
    EXPECT_NEAR(s.objective_value, 3.0, 1e-9);
  }
}

TEST(Highs, InfeasibleStatus) {
  MilpModel m;
  const int x = m.AddVariable(VarKey::Idle(0, 0, 0), 0.0, 2.0);
  m.AddObjectiveTerm(x, 1.0);
  m.AddConstraint({"c1", ConstraintTag::kDemand, {{x, 1.0}}, Sense::kGreaterEqual, 3.0});
  HighsAdapter highs;
  EXPECT_EQ(highs.Solve(m, Exact()).status, SolveStatus::kInfeasible);
}

TEST(Validator, FlagsRemovedFlight) {
  const auto c = Micro();
  auto d = Series(c);
  d.AddFlight(0, 1, 2, 3);
  d.AddFlight(1, 0, 6, 1);
  const auto m = BuildFleetSizing(c, d);
  auto s = SolveExact(m);
  ExpectValid(c, d, ModelKind::kFleetSizing, 0, m, s);
  bool changed = false;
  for (std::size_t v = 0; v < m.variables().size() && !changed; ++v) {
    if (m.variables()[v].key.kind == VarKind::kFlight && s.values[v] > 0) {
      --s.values[v];
      changed = true;
    }
  }
  ASSERT_TRUE(changed);
  const auto violations = ValidateSolution(c, {ModelKind::kFleetSizing, &d, 0}, m, s);
  EXPECT_FALSE(violations.empty());
}

DemandTimeSeries RandomDemand(const NetworkConfig& c, std::uint64_t seed, int percent) {
  Rng rng(seed);
  std::uniform_int_distribution<int> roll(0, 99);
  std::uniform_int_distribution<int> pax(1, c.seat_capacity);
  auto d = Series(c);
  for (int s = 0; s + 2 < c.steps_per_day; ++s)
    for (int i = 0; i < 2; ++i)
      if (roll(rng) < percent) d.AddFlight(i, 1 - i, s, pax(rng));
  return d;
}

NetworkConfig Medium() {
  NetworkConfig c = Micro(30);
  c.soc_levels = 4;
  c.soc_increment = 0.2;
  c.gamma = {1, 1, 1, 2};
  c.tau = TimeVaryingParam(1);
  c.kappa = TimeVaryingParam(2);
  c.Validate();
  return c;
}

TEST(ChargeArcs, UnitStepsGiveSameOptimum) {
  const auto c = Medium();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto d = RandomDemand(c, seed, 40);
    const auto all = BuildFleetSizing(c, d, kDefaultFlightWeight, ChargeArcs::kAllPairs);
    const auto unit = BuildFleetSizing(c, d, kDefaultFlightWeight, ChargeArcs::kUnitSteps);
    EXPECT_LT(unit.variables().size(), all.variables().size());
    const auto sa = SolveExact(all);
    const auto su = SolveExact(unit);
    EXPECT_EQ(FleetSize(all, sa), FleetSize(unit, su));
    EXPECT_EQ(TotalFlights(all, sa), TotalFlights(unit, su));
    ExpectValid(c, d, ModelKind::kFleetSizing, 0, unit, su);
  }
}

TEST(WarmStart, StartIsFeasibleAndAccepted) {
  const auto c = Medium();
  const auto d = RandomDemand(c, 7, 50);
  for (auto arcs : {ChargeArcs::kAllPairs, ChargeArcs::kUnitSteps}) {
    const auto sizing = BuildFleetSizing(c, d, kDefaultFlightWeight, arcs);
    const auto fs = SolveExact(sizing);
    const int fstar = static_cast<int>(FleetSize(sizing, fs));
    ASSERT_GE(fstar, 2);
    for (int f : {fstar, fstar - 1, 1}) {
      const auto spill = BuildSpill(c, d, f, kDefaultFlightWeight, arcs);
      const auto start = SpillStartFrom(c, d, sizing, fs.values, spill, f);
      ASSERT_TRUE(start.has_value());
      Solution as_solution;
      as_solution.status = SolveStatus::kFeasible;
      as_solution.values = *start;
      ExpectValid(c, d, ModelKind::kSpill, f, spill, as_solution);
      if (f == fstar) EXPECT_EQ(TotalSpill(spill, as_solution), 0);

      HighsAdapter highs;
      const auto warm = highs.Solve(spill, Exact(), &*start);
      const auto cold = SolveExact(spill);
      ASSERT_EQ(warm.status, SolveStatus::kOptimal);
      EXPECT_EQ(TotalSpill(spill, warm), TotalSpill(spill, cold));
      EXPECT_LE(TotalSpill(spill, warm), TotalSpill(spill, as_solution));
    }
  }
}

TEST(IntegerPart, GenericNeedsDualAtCount) {
  MilpModel m;
  EXPECT_TRUE(IntegerPartProven(m, 3.2, 3.0));
  EXPECT_FALSE(IntegerPartProven(m, 3.2, 2.9));
}

TEST(IntegerPart, SizingUsesFlightPenaltySlack) {
  MilpModel m;
  m.set_integer_objective({1e-5, 10.0, -1});
  // count 3: any 2-aircraft solution scores at most 2 + 1e-5 * 10 * 2.
  EXPECT_TRUE(IntegerPartProven(m, 3.0004, 2.0003));
  EXPECT_FALSE(IntegerPartProven(m, 3.0004, 2.0001));
  m.set_integer_objective({0.5, 10.0, 4});
  EXPECT_TRUE(IntegerPartProven(m, 7.5, 7.0));
  EXPECT_FALSE(IntegerPartProven(m, 7.5, 6.99));
}

TEST(Solve, DeterministicAcrossRuns) {
  const auto c = Medium();
  const auto d = RandomDemand(c, 11, 50);
  const auto m = BuildSpill(c, d, 2);
  const auto a = SolveExact(m);
  const auto b = SolveExact(m);
  EXPECT_EQ(a.values, b.values);
}

TEST(Solve, TinyTimeLimitReportsHonestly) {
  const auto c = DefaultNetworkConfig();
  DemandTimeSeries d(2, c.steps_per_day, c.step_minutes);
  Rng rng(3);
  std::uniform_int_distribution<int> roll(0, 99);
  for (int s = 0; s < 280; ++s)
    for (int i = 0; i < 2; ++i)
      if (roll(rng) < 30) d.AddFlight(i, 1 - i, s, 4);
  const auto m = BuildSpill(c, d, 3);
  SolverLimits l = Exact();
  l.time_limit_seconds = 0.01;
  HighsAdapter highs;
  const auto s = highs.Solve(m, l);
  EXPECT_NE(s.status, SolveStatus::kOptimal);
  EXPECT_NE(s.status, SolveStatus::kError) << s.message;
  if (s.HasValues()) ExpectValid(c, d, ModelKind::kSpill, 3, m, s);
}

}  // namespace
}  // namespace uam::milp
