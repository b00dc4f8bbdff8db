#include <gtest/gtest.h>

#include <array>

#include "uamfleet/errors.hpp"
#include "uamfleet/random.hpp"
#include "uamfleet/schedule.hpp"

namespace uam {
namespace {

Date Day(int y, unsigned m, unsigned d) { return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}; }

FlightRecord Flight(Direction v, int minute, int seats, Date day = Day(2019, 1, 1)) {
  return FlightRecord{day, v, minute, seats};
}

TEST(ParseSchedule, SingleRow) {
  const auto s = ParseSchedule("date,direction,minute,seats\n2019-01-01,ARR,480,150\n");
  ASSERT_EQ(s.records().size(), 1u);
  EXPECT_EQ(s.records()[0], Flight(Direction::kArrival, 480, 150));
  EXPECT_EQ(s.num_days(), 1u);
}

TEST(ParseSchedule, HeaderOnlyIsEmpty) {
  const auto s = ParseSchedule("date,direction,minute,seats\n");
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.num_days(), 0u);
}

TEST(ParseSchedule, SameCellGroupsTogether) {
  const auto s = ParseSchedule(
      "date,direction,minute,seats\n2019-01-01,DEP,610,150\n2019-01-01,DEP,655,90\n2019-01-01,ARR,620,100\n");
  EXPECT_EQ(s.Cell(0, 10, Direction::kDeparture).size(), 2u);
  EXPECT_EQ(s.Cell(0, 10, Direction::kArrival).size(), 1u);
  EXPECT_TRUE(s.Cell(0, 11, Direction::kDeparture).empty());
}

TEST(ParseSchedule, ErrorsNameTheLine) {
  try {
    ParseSchedule("date,direction,minute,seats\n2019-01-01,ARR,480,150\n2019-01-01,XXX,480,150\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(ParseSchedule("wrong,header\n"), ParseError);
  EXPECT_THROW(ParseSchedule("date,direction,minute,seats\n2019-01-01,ARR,1440,150\n"), ParseError);
  EXPECT_THROW(ParseSchedule("date,direction,minute,seats\n2019-02-30,ARR,10,150\n"), ParseError);
}

TEST(ParseSchedule, NonpositiveSeatsIsValidationError) {
  EXPECT_THROW(ParseSchedule("date,direction,minute,seats\n2019-01-01,ARR,480,0\n"), ValidationError);
}

TEST(ParseSchedule, RoundTrip) {
  SyntheticScheduleParams p;
  p.days = 3;
  p.daily_flights_mean = 40;
  p.seat_mix = {{90, 0.25}, {150, 0.5}, {300, 0.25}};
  const auto s = GenerateSyntheticSchedule(p);
  const std::string text = SerializeSchedule(s);
  EXPECT_EQ(SerializeSchedule(ParseSchedule(text)), text);
  EXPECT_EQ(ParseSchedule(text).records().size(), s.records().size());
}

TEST(Schedule, CellsPartitionRecords) {
  SyntheticScheduleParams p;
  p.days = 4;
  p.daily_flights_mean = 100;
  const auto s = GenerateSyntheticSchedule(p);
  std::size_t total = 0;
  for (std::size_t d = 0; d < s.num_days(); ++d)
    for (int h = 0; h < kHoursPerDay; ++h)
      for (auto v : {Direction::kArrival, Direction::kDeparture}) total += s.Cell(d, h, v).size();
  EXPECT_EQ(total, s.records().size());
}

TEST(SyntheticSchedule, ZeroMeanHasNoFlights) {
  SyntheticScheduleParams p;
  p.days = 1;
  p.daily_flights_mean = 0;
  EXPECT_TRUE(GenerateSyntheticSchedule(p).empty());
}

TEST(SyntheticSchedule, DeterministicPerSeed) {
  SyntheticScheduleParams p;
  p.days = 5;
  p.seed = 42;
  EXPECT_EQ(SerializeSchedule(GenerateSyntheticSchedule(p)), SerializeSchedule(GenerateSyntheticSchedule(p)));
  auto q = p;
  q.seed = 43;
  EXPECT_NE(SerializeSchedule(GenerateSyntheticSchedule(p)), SerializeSchedule(GenerateSyntheticSchedule(q)));
}

TEST(SyntheticSchedule, EmptySeatMixIsConfigError) {
  SyntheticScheduleParams p;
  p.seat_mix.clear();
  EXPECT_THROW(GenerateSyntheticSchedule(p), ConfigError);
}

// Expected seats per direction: days * mean * seats * share.
TEST(SyntheticSchedule, CapacityMatchesExpectation) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticScheduleParams p;
    p.days = 365;
    p.daily_flights_mean = 600;
    p.seat_mix = {{150, 1.0}};
    p.seed = seed;
    const auto s = GenerateSyntheticSchedule(p);
    const double expected = 365.0 * 600.0 * 150.0 * 0.5;
    for (auto v : {Direction::kArrival, Direction::kDeparture}) {
      EXPECT_NEAR(static_cast<double>(TotalCapacity(s, v)) / expected, 1.0, 0.02) << "seed " << seed;
    }
  }
}

TEST(TotalCapacity, Sums) {
  EXPECT_EQ(TotalCapacity(AirlineSchedule({Flight(Direction::kArrival, 0, 150)}), Direction::kArrival), 150);
  EXPECT_EQ(TotalCapacity(AirlineSchedule(), Direction::kArrival), 0);
  const AirlineSchedule s({Flight(Direction::kDeparture, 0, 100), Flight(Direction::kDeparture, 70, 150),
                           Flight(Direction::kDeparture, 900, 200), Flight(Direction::kArrival, 10, 999)});
  EXPECT_EQ(TotalCapacity(s, Direction::kDeparture), 450);
}

TEST(CapacityEcdf, SingleFlightAlwaysDrawn) {
  const AirlineSchedule s({Flight(Direction::kArrival, 480, 150)});
  const auto ecdf = HourlyCapacityEcdf(s, 0, 8, Direction::kArrival);
  for (double u : {1e-9, 0.3, 0.999, 1.0}) EXPECT_EQ(ecdf.Lookup(u), 0u);
}

TEST(CapacityEcdf, SplitsBySeatMass) {
  const AirlineSchedule s({Flight(Direction::kArrival, 480, 100), Flight(Direction::kArrival, 490, 300)});
  const auto ecdf = HourlyCapacityEcdf(s, 0, 8, Direction::kArrival);
  EXPECT_EQ(ecdf.Lookup(0.25), 0u);
  EXPECT_EQ(ecdf.Lookup(0.26), 1u);
  EXPECT_NEAR(ecdf.Mass(0), 0.25, 1e-12);
  EXPECT_NEAR(ecdf.Mass(1), 0.75, 1e-12);
  EXPECT_NEAR(ecdf.cumulative().back(), 1.0, 1e-12);
}

TEST(CapacityEcdf, EmptyCellThrows) {
  const AirlineSchedule s({Flight(Direction::kArrival, 480, 100)});
  EXPECT_THROW(HourlyCapacityEcdf(s, 0, 9, Direction::kArrival), DomainError);
}

TEST(CapacityEcdf, EqualSeatsDrawnUniformly) {
  const AirlineSchedule s({Flight(Direction::kArrival, 480, 150), Flight(Direction::kArrival, 485, 150),
                           Flight(Direction::kArrival, 490, 150)});
  const auto ecdf = HourlyCapacityEcdf(s, 0, 8, Direction::kArrival);
  Rng rng(7);
  std::array<int, 3> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[ecdf.Lookup(UniformOpenClosed(rng))];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 3.0, 0.01);
}

// Chi-square goodness of fit against seat-proportional masses; 9.21 is the
// 0.99 quantile with two degrees of freedom.
TEST(CapacityEcdf, ChiSquareAgainstSeatMasses) {
  const AirlineSchedule s({Flight(Direction::kDeparture, 480, 100), Flight(Direction::kDeparture, 485, 200),
                           Flight(Direction::kDeparture, 490, 300)});
  const auto ecdf = HourlyCapacityEcdf(s, 0, 8, Direction::kDeparture);
  Rng rng(11);
  std::array<int, 3> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[ecdf.Lookup(UniformOpenClosed(rng))];
  double chi2 = 0.0;
  const std::array<double, 3> mass = {1.0 / 6, 2.0 / 6, 3.0 / 6};
  for (std::size_t k = 0; k < 3; ++k) {
    const double e = n * mass[k];
    chi2 += (counts[k] - e) * (counts[k] - e) / e;
  }
  EXPECT_LT(chi2, 9.21);
}

TEST(IsoDate, ParsesAndFormats) {
  Date d;
  ASSERT_TRUE(ParseIsoDate("2019-12-31", d));
  EXPECT_EQ(FormatIsoDate(d), "2019-12-31");
  EXPECT_FALSE(ParseIsoDate("2019-13-01", d));
  EXPECT_FALSE(ParseIsoDate("19-1-1", d));
}

}  // namespace
}  // namespace uam
