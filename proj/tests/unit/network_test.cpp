#include <gtest/gtest.h>

#include <numeric>

#include "uamfleet/errors.hpp"
#include "uamfleet/network.hpp"

namespace uam {
namespace {

TEST(ChargingDuration, SumsCurveSteps) {
  const std::vector<int> gamma{1, 1, 2, 3};
  EXPECT_EQ(ChargingDuration(1, 3, gamma), 3);
  EXPECT_EQ(ChargingDuration(0, 4, gamma), 7);
  EXPECT_EQ(ChargingDuration(3, 4, gamma), 3);
  for (int x = 0; x < 4; ++x)
    for (int m = x + 1; m < 4; ++m)
      for (int y = m + 1; y <= 4; ++y)
        EXPECT_EQ(ChargingDuration(x, y, gamma), ChargingDuration(x, m, gamma) + ChargingDuration(m, y, gamma));
}

TEST(ChargingDuration, RejectsBadLevels) {
  const std::vector<int> gamma{1, 1, 2, 3};
  EXPECT_THROW(ChargingDuration(2, 2, gamma), DomainError);
  EXPECT_THROW(ChargingDuration(3, 1, gamma), DomainError);
  EXPECT_THROW(ChargingDuration(-1, 2, gamma), DomainError);
  EXPECT_THROW(ChargingDuration(0, 5, gamma), DomainError);
}

TEST(DefaultChargingCurve, Shapes) {
  EXPECT_EQ(DefaultChargingCurve(4), (std::vector<int>{1, 1, 1, 2}));
  EXPECT_EQ(DefaultChargingCurve(1), (std::vector<int>{1}));
  const auto g = DefaultChargingCurve(32);
  ASSERT_EQ(g.size(), 32u);
  EXPECT_EQ(std::vector<int>(g.end() - 4, g.end()), (std::vector<int>{3, 3, 4, 4}));
  EXPECT_EQ(std::accumulate(g.begin(), g.end(), 0), 44);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_THROW(DefaultChargingCurve(0), DomainError);
}

TEST(ArrivalSets, ConstantFlightTime) {
  NetworkConfig c;
  c.steps_per_day = 10;
  c.soc_levels = 4;
  c.kappa = TimeVaryingParam(1);
  c.tau = TimeVaryingParam(2);
  c.Validate();
  EXPECT_EQ(c.horizon(), 13);
  const auto a = ArrivalSets(c);
  EXPECT_EQ(a.Departures(0, 1, 5), (std::vector<int>{3}));
  EXPECT_TRUE(a.Departures(0, 1, 1).empty());
  EXPECT_TRUE(a.Departures(0, 1, 2).empty());
  EXPECT_TRUE(a.Departures(0, 0, 5).empty());
  EXPECT_TRUE(a.Departures(0, 1, 99).empty());
}

TEST(ArrivalSets, TimeVaryingFlightTime) {
  NetworkConfig c;
  c.steps_per_day = 6;
  c.soc_levels = 4;
  c.kappa = TimeVaryingParam(1);
  c.tau = TimeVaryingParam(1);
  c.tau.Override(0, 1, 1, 2);
  c.Validate();
  EXPECT_EQ(c.horizon(), 9);
  const auto a = ArrivalSets(c);
  EXPECT_EQ(a.Departures(0, 1, 3), (std::vector<int>{1, 2}));
  EXPECT_TRUE(a.Departures(0, 1, 2).empty());
  EXPECT_EQ(a.Departures(1, 0, 2), (std::vector<int>{1}));
}

TEST(NetworkConfig, DefaultsAndReducedScale) {
  const auto full = DefaultNetworkConfig();
  EXPECT_EQ(full.horizon(), 288 + 2 + 1);
  EXPECT_EQ(full.charging_curve().size(), 32u);
  EXPECT_DOUBLE_EQ(full.SocFraction(32), 1.0);
  EXPECT_EQ(full.ChargeStep(1), 1);
  EXPECT_THROW(full.ChargeStep(33), DomainError);

  const auto reduced = ReducedScaleNetworkConfig();
  EXPECT_EQ(reduced.steps_per_day * reduced.step_minutes, 1440);
  EXPECT_EQ(reduced.horizon(), 98);
  EXPECT_NEAR(reduced.SocFraction(8), 1.0, 1e-12);
}

TEST(NetworkConfig, ValidationErrors) {
  auto bad = [](auto mutate) {
    NetworkConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](NetworkConfig& c) { c.vertiports = {"A"}; }).Validate(), ConfigError);
  EXPECT_THROW(bad([](NetworkConfig& c) { c.gamma = {1, 2}; }).Validate(), ConfigError);
  EXPECT_THROW(bad([](NetworkConfig& c) { c.tau = TimeVaryingParam(0); }).Validate(), ConfigError);
  EXPECT_THROW(bad([](NetworkConfig& c) { c.kappa = TimeVaryingParam(33); }).Validate(), ConfigError);
  EXPECT_THROW(bad([](NetworkConfig& c) { c.tau.Override(0, 0, 3, 2); }).Validate(), ConfigError);
  EXPECT_THROW(bad([](NetworkConfig& c) { c.seat_capacity = 0; }).Validate(), ConfigError);
}

}  // namespace
}  // namespace uam
