#include <gtest/gtest.h>

#include "uamfleet/dispatch.hpp"
#include "uamfleet/errors.hpp"

namespace uam {
namespace {

const DispatchRule kRule{4, 5.0, 5};
const std::vector<std::string> kNames{"APT", "CBD"};

ArrivalProfile Profile(std::initializer_list<std::pair<Vertiport, double>> arrivals) {
  ArrivalProfile p;
  for (const auto& [origin, minute] : arrivals) p.arrivals.push_back({minute, origin});
  return p;
}

long long TotalPassengers(const DemandTimeSeries& s) { return s.TotalPassengers(); }

TEST(Dispatch, EmptyProfile) {
  const auto s = Dispatch(ArrivalProfile{}, kRule);
  EXPECT_EQ(s.num_steps(), 288);
  EXPECT_EQ(s.TotalFlights(), 0);
  EXPECT_EQ(s.TotalPassengers(), 0);
}

TEST(Dispatch, FullQueueLeavesAtOnce) {
  const auto s = Dispatch(Profile({{Vertiport::kCbd, 0}, {Vertiport::kCbd, 1}, {Vertiport::kCbd, 2}, {Vertiport::kCbd, 3}}), kRule);
  EXPECT_EQ(s.flights(1, 0, 0), 1);
  EXPECT_EQ(s.passengers(1, 0, 0), 4);
  EXPECT_EQ(s.TotalFlights(), 1);
}

TEST(Dispatch, LoneWaiterLeavesAfterMaxWait) {
  const auto s = Dispatch(Profile({{Vertiport::kApt, 0}}), kRule);
  EXPECT_EQ(s.flights(0, 1, 1), 1);
  EXPECT_EQ(s.passengers(0, 1, 1), 1);
  EXPECT_EQ(s.TotalFlights(), 1);
}

TEST(Dispatch, WaitTriggerTakesEveryoneQueued) {
  // Three arrivals within the wait window leave together at minute 7.
  const auto s = Dispatch(Profile({{Vertiport::kApt, 2.5}, {Vertiport::kApt, 4}, {Vertiport::kApt, 6}}), kRule);
  EXPECT_EQ(s.flights(0, 1, 1), 1);
  EXPECT_EQ(s.passengers(0, 1, 1), 3);
}

TEST(Dispatch, SimultaneousCrowdSplitsIntoFlights) {
  ArrivalProfile p;
  for (int n = 0; n < 10; ++n) p.arrivals.push_back({100.0, Vertiport::kCbd});
  const auto s = Dispatch(p, kRule);
  EXPECT_EQ(s.TotalFlights(), 3);
  EXPECT_EQ(s.flights(1, 0, 20), 2);
  EXPECT_EQ(s.passengers(1, 0, 20), 8);
  EXPECT_EQ(s.flights(1, 0, 21), 1);
  EXPECT_EQ(s.passengers(1, 0, 21), 2);
}

TEST(Dispatch, LateQueueFlushedInLastStep) {
  const auto s = Dispatch(Profile({{Vertiport::kApt, 1438.0}, {Vertiport::kApt, 1439.0}}), kRule);
  EXPECT_EQ(s.flights(0, 1, 287), 1);
  EXPECT_EQ(s.passengers(0, 1, 287), 2);
}

TEST(Dispatch, ConservesPassengersAndBoundsOccupancy) {
  SyntheticScheduleParams sp;
  sp.days = 1;
  const auto schedule = GenerateSyntheticSchedule(sp);
  DemandParams p;
  p.add = 900;
  p.ar_coeff = 0.7;
  Rng rng(1);
  const auto profile = GenerateDay(schedule, FlightRates(schedule, p.add), 0, p, rng);
  const auto s = Dispatch(profile, kRule);
  EXPECT_EQ(TotalPassengers(s), static_cast<long long>(profile.arrivals.size()));
  for (int i = 0; i < 2; ++i)
    for (int t = 0; t < s.num_steps(); ++t) {
      const int f = s.flights(i, 1 - i, t);
      const int pax = s.passengers(i, 1 - i, t);
      EXPECT_LE(pax, 4 * f);
      EXPECT_GE(pax, f);
      EXPECT_EQ(s.flights(i, i, t), 0);
    }
  EXPECT_EQ(SerializeSeries(Dispatch(profile, kRule), kNames), SerializeSeries(s, kNames));
}

// Every passenger leaves within max_wait plus one step of arriving.
TEST(Dispatch, WaitBound) {
  ArrivalProfile p;
  for (int n = 0; n < 200; ++n) p.arrivals.push_back({n * 6.7, Vertiport::kCbd});
  const auto s = Dispatch(p, kRule);
  // Replay: the k-th passenger (in time order) is on the k-th seat filled.
  std::vector<int> seat_steps;
  for (int t = 0; t < s.num_steps(); ++t)
    for (int k = 0; k < s.passengers(1, 0, t); ++k) seat_steps.push_back(t);
  ASSERT_EQ(seat_steps.size(), p.arrivals.size());
  for (std::size_t n = 0; n < p.arrivals.size(); ++n) {
    const double leave_by = p.arrivals[n].minute + 5.0 + 5.0;
    EXPECT_LE(seat_steps[n] * 5, leave_by) << n;
  }
}

TEST(FlightOccupancies, FillGreedily) {
  EXPECT_EQ(FlightOccupancies(3, 9, 4), (std::vector<int>{4, 4, 1}));
  EXPECT_EQ(FlightOccupancies(2, 2, 4), (std::vector<int>{1, 1}));
  EXPECT_EQ(FlightOccupancies(1, 4, 4), (std::vector<int>{4}));
  EXPECT_TRUE(FlightOccupancies(0, 0, 4).empty());
}

TEST(Series, CsvRoundTrip) {
  DemandTimeSeries s(2, 288, 5);
  s.AddFlight(0, 1, 3, 4);
  s.AddFlight(0, 1, 3, 2);
  s.AddFlight(1, 0, 287, 1);
  const std::string text = SerializeSeries(s, kNames);
  EXPECT_EQ(text, "from,to,step,flights,passengers\nAPT,CBD,3,2,6\nCBD,APT,287,1,1\n");
  EXPECT_EQ(ParseSeries(text, kNames, 288, 5), s);
  EXPECT_THROW(ParseSeries("from,to,step,flights,passengers\nAPT,XXX,3,1,1\n", kNames, 288, 5), ParseError);
}

TEST(Dispatch, RejectsBadRule) {
  EXPECT_THROW(Dispatch(ArrivalProfile{}, DispatchRule{0, 5.0, 5}), ConfigError);
  EXPECT_THROW(Dispatch(ArrivalProfile{}, DispatchRule{4, 5.0, 7}), ConfigError);
}

}  // namespace
}  // namespace uam
