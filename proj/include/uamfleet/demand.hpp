#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uamfleet/random.hpp"
#include "uamfleet/schedule.hpp"

namespace uam {

// Two-vertiport network: the airport and the central business district.
enum class Vertiport : std::uint8_t { kApt = 0, kCbd = 1 };

std::string_view VertiportName(Vertiport v);

// Location/scale/shape parameterisation of the skew-normal.
struct SkewNormalParams {
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;
};

inline constexpr SkewNormalParams kDefaultLeadTime{93.0, 40.0, 3.0};
// Includes the curb-to-vertiport transfer.
inline constexpr SkewNormalParams kDefaultLagTime{31.0, 2.12, 3.0};

struct DemandParams {
  double add = 0.0;       // expected passengers per day per direction
  double ar_coeff = 0.0;  // hour-to-hour autoregressive coefficient in [0,1]
  SkewNormalParams lead = kDefaultLeadTime;
  SkewNormalParams lag = kDefaultLagTime;
  double transfer_minutes = 0.0;

  void Validate() const;
};

struct PassengerArrival {
  double minute = 0.0;  // vertiport arrival, in [0, 1440)
  Vertiport origin = Vertiport::kApt;
  bool operator==(const PassengerArrival&) const = default;
};

using HourlyGrid = std::array<std::array<double, kDirections>, kHoursPerDay>;
using HourlyCounts = std::array<std::array<long long, kDirections>, kHoursPerDay>;

struct ArrivalProfile {
  Date day;
  std::vector<PassengerArrival> arrivals;
  HourlyCounts hourly_counts{};  // x_{d,h,v}
  HourlyGrid hourly_rates{};     // Lambda_{d,h,v}
  HourlyGrid expected_rates{};   // Lambda^0_{d,h,v}

  long long TotalPassengers(Direction v) const;
};

// lambda_i for every record, aligned with schedule.records().
std::vector<double> FlightRates(const AirlineSchedule& schedule, double add);

// Sum of lambda_i over f_{d,h,v}; 0 for empty cells.
double ExpectedHourlyRate(const AirlineSchedule& schedule, const std::vector<double>& rates,
                          std::size_t day_index, int hour, Direction v);

// Hour-to-hour regression of the Poisson rate towards the previous hour's
// surprise. `previous_expected` is empty for the first hour of a day.
double AutoregressiveRate(std::optional<double> previous_expected, long long previous_count,
                          double current_expected, double ar_coeff);

long long SamplePoisson(double rate, Rng& rng);
double SampleSkewNormal(const SkewNormalParams& params, Rng& rng);

// One operating day. `rates` must come from FlightRates over the whole
// schedule so that day-to-day capacity differences carry through.
ArrivalProfile GenerateDay(const AirlineSchedule& schedule, const std::vector<double>& rates,
                           std::size_t day_index, const DemandParams& params, Rng& rng);

// One profile per schedule day, each seeded from (base_seed, day).
std::vector<ArrivalProfile> GenerateProfiles(const AirlineSchedule& schedule,
                                             const DemandParams& params, std::uint64_t base_seed,
                                             int jobs = 1);

std::uint64_t DaySeed(std::uint64_t base_seed, const Date& day);

// CSV `day,origin,minute` (minute with 4 decimals), rows sorted by day,
// minute, origin.
std::string SerializeProfiles(const std::vector<ArrivalProfile>& profiles);
// Rebuilds arrivals only; hourly diagnostics are not part of the CSV.
std::vector<ArrivalProfile> ParseProfiles(std::string_view csv_text);

}  // namespace uam
