#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uam {

using Date = std::chrono::year_month_day;

// "YYYY-MM-DD". Returns false on anything that is not a valid calendar date.
bool ParseIsoDate(std::string_view text, Date& out);
std::string FormatIsoDate(const Date& date);

inline constexpr int kHoursPerDay = 24;
inline constexpr int kMinutesPerDay = 1440;

// Airline flight direction at the airport. Arrivals create APT->CBD UAM
// demand, departures create CBD->APT demand.
enum class Direction : std::uint8_t { kArrival = 0, kDeparture = 1 };
inline constexpr int kDirections = 2;

inline int Index(Direction v) { return static_cast<int>(v); }

struct FlightRecord {
  Date day;
  Direction direction = Direction::kArrival;
  int event_minute = 0;  // gate-in for arrivals, scheduled out for departures
  int seats = 1;

  int hour() const { return event_minute / 60; }
  bool operator==(const FlightRecord&) const = default;
};

// Flights of one (day, hour, direction) cell with cumulative seat weights.
// Lookup(u) inverts the seat-capacity ECDF for u in (0, 1].
class CapacityEcdf {
 public:
  // `flights` must be nonempty and refer to records with positive seats.
  CapacityEcdf(std::vector<std::size_t> flights, std::span<const FlightRecord> records);

  std::size_t Lookup(double u) const;

  const std::vector<std::size_t>& flights() const { return flights_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double Mass(std::size_t position) const;

 private:
  std::vector<std::size_t> flights_;
  std::vector<double> cumulative_;
};

// Immutable set of flight records indexed by (day, hour, direction).
class AirlineSchedule {
 public:
  AirlineSchedule() = default;
  // Validates every record and builds the cell index.
  explicit AirlineSchedule(std::vector<FlightRecord> records);

  const std::vector<FlightRecord>& records() const { return records_; }
  const std::vector<Date>& days() const { return days_; }
  std::size_t num_days() const { return days_.size(); }
  bool empty() const { return records_.empty(); }

  // Position of `day` in days(), or -1.
  int DayIndex(const Date& day) const;

  // Record indices of f_{d,h,v}; d is a position in days().
  const std::vector<std::size_t>& Cell(std::size_t day_index, int hour, Direction v) const;

 private:
  std::vector<FlightRecord> records_;
  std::vector<Date> days_;
  std::vector<std::vector<std::size_t>> cells_;
};

// CSV with header `date,direction,minute,seats`; direction is ARR or DEP.
AirlineSchedule ParseSchedule(std::string_view csv_text);
std::string SerializeSchedule(const AirlineSchedule& schedule);

struct SeatClass {
  int seats = 0;
  double weight = 0.0;
};

struct SyntheticScheduleParams {
  int days = 365;
  Date start_day{std::chrono::year{2019}, std::chrono::January, std::chrono::day{1}};
  double daily_flights_mean = 600.0;
  std::vector<int> peak_hours{8, 18};
  std::vector<SeatClass> seat_mix{{150, 1.0}};
  double arrival_share = 0.5;
  // Optional 24-entry hourly weights per direction. Empty means the default
  // bimodal shape built from peak_hours.
  std::vector<double> arrival_shape;
  std::vector<double> departure_shape;
  std::uint64_t seed = 1;
};

// Default hourly flight shape: quiet nights, a daytime plateau and Gaussian
// bumps at each peak hour.
std::vector<double> BimodalHourlyShape(std::span<const int> peak_hours);

AirlineSchedule GenerateSyntheticSchedule(const SyntheticScheduleParams& params);

// beta_v: exact seat sum of direction v over all days.
long long TotalCapacity(const AirlineSchedule& schedule, Direction v);

// Throws DomainError when the cell is empty.
CapacityEcdf HourlyCapacityEcdf(const AirlineSchedule& schedule, std::size_t day_index,
                                int hour, Direction v);

}  // namespace uam
