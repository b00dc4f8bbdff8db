#include "uamfleet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"
#include "uamfleet/random.hpp"

namespace uam {

namespace {

constexpr std::string_view kScheduleHeader = "date,direction,minute,seats";

void ValidateRecord(const FlightRecord& r) {
  if (!r.day.ok()) throw ValidationError("invalid calendar date");
  if (r.event_minute < 0 || r.event_minute >= kMinutesPerDay) {
    throw ValidationError("event minute " + std::to_string(r.event_minute) +
                          " outside [0,1440)");
  }
  if (r.seats < 1) {
    throw ValidationError("seat capacity must be positive, got " + std::to_string(r.seats));
  }
}

std::size_t CellSlot(std::size_t day_index, int hour, Direction v) {
  return (day_index * kHoursPerDay + static_cast<std::size_t>(hour)) * kDirections +
         static_cast<std::size_t>(Index(v));
}

const std::vector<std::size_t>& EmptyCell() {
  static const std::vector<std::size_t> empty;
  return empty;
}

}  // namespace

bool ParseIsoDate(std::string_view text, Date& out) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  long long y = 0, m = 0, d = 0;
  if (!csv::ParseInt(text.substr(0, 4), y) || !csv::ParseInt(text.substr(5, 2), m) ||
      !csv::ParseInt(text.substr(8, 2), d)) {
    return false;
  }
  Date date{std::chrono::year{static_cast<int>(y)}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return false;
  out = date;
  return true;
}

std::string FormatIsoDate(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

CapacityEcdf::CapacityEcdf(std::vector<std::size_t> flights, std::span<const FlightRecord> records)
    : flights_(std::move(flights)) {
  if (flights_.empty()) throw DomainError("capacity ECDF of an empty cell");
  std::stable_sort(flights_.begin(), flights_.end(), [&](std::size_t a, std::size_t b) {
    if (records[a].event_minute != records[b].event_minute) {
      return records[a].event_minute < records[b].event_minute;
    }
    return a < b;
  });
  double total = 0.0;
  for (std::size_t i : flights_) total += records[i].seats;
  cumulative_.reserve(flights_.size());
  double running = 0.0;
  for (std::size_t i : flights_) {
    running += records[i].seats;
    cumulative_.push_back(running / total);
  }
  cumulative_.back() = 1.0;
}

std::size_t CapacityEcdf::Lookup(double u) const {
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) it = std::prev(cumulative_.end());
  return flights_[static_cast<std::size_t>(it - cumulative_.begin())];
}

double CapacityEcdf::Mass(std::size_t position) const {
  return position == 0 ? cumulative_[0] : cumulative_[position] - cumulative_[position - 1];
}

AirlineSchedule::AirlineSchedule(std::vector<FlightRecord> records) : records_(std::move(records)) {
  for (const auto& r : records_) ValidateRecord(r);
  for (const auto& r : records_) days_.push_back(r.day);
  std::sort(days_.begin(), days_.end());
  days_.erase(std::unique(days_.begin(), days_.end()), days_.end());
  cells_.assign(days_.size() * kHoursPerDay * kDirections, {});
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    auto d = static_cast<std::size_t>(DayIndex(r.day));
    cells_[CellSlot(d, r.hour(), r.direction)].push_back(i);
  }
}

int AirlineSchedule::DayIndex(const Date& day) const {
  auto it = std::lower_bound(days_.begin(), days_.end(), day);
  if (it == days_.end() || *it != day) return -1;
  return static_cast<int>(it - days_.begin());
}

const std::vector<std::size_t>& AirlineSchedule::Cell(std::size_t day_index, int hour,
                                                      Direction v) const {
  if (day_index >= days_.size() || hour < 0 || hour >= kHoursPerDay) return EmptyCell();
  return cells_[CellSlot(day_index, hour, v)];
}

AirlineSchedule ParseSchedule(std::string_view csv_text) {
  auto lines = csv::SplitLines(csv_text);
  if (lines.empty() || lines[0] != kScheduleHeader) {
    throw ParseError(1, "expected header '" + std::string(kScheduleHeader) + "'");
  }
  std::vector<FlightRecord> records;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (lines[n].empty()) continue;
    auto fields = csv::SplitFields(lines[n]);
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields");
    FlightRecord r;
    if (!ParseIsoDate(fields[0], r.day)) throw ParseError(line_no, "bad date");
    if (fields[1] == "ARR") {
      r.direction = Direction::kArrival;
    } else if (fields[1] == "DEP") {
      r.direction = Direction::kDeparture;
    } else {
      throw ParseError(line_no, "direction must be ARR or DEP");
    }
    long long minute = 0, seats = 0;
    if (!csv::ParseInt(fields[2], minute)) throw ParseError(line_no, "bad minute");
    if (!csv::ParseInt(fields[3], seats)) throw ParseError(line_no, "bad seats");
    if (minute < 0 || minute >= kMinutesPerDay) {
      throw ParseError(line_no, "minute outside [0,1440)");
    }
    if (seats <= 0) {
      throw ValidationError("line " + std::to_string(line_no) + ": seat capacity must be positive");
    }
    r.event_minute = static_cast<int>(minute);
    r.seats = static_cast<int>(seats);
    records.push_back(r);
  }
  return AirlineSchedule(std::move(records));
}

std::string SerializeSchedule(const AirlineSchedule& schedule) {
  std::string out(kScheduleHeader);
  out += '\n';
  for (const auto& r : schedule.records()) {
    out += FormatIsoDate(r.day);
    out += r.direction == Direction::kArrival ? ",ARR," : ",DEP,";
    out += std::to_string(r.event_minute);
    out += ',';
    out += std::to_string(r.seats);
    out += '\n';
  }
  return out;
}

std::vector<double> BimodalHourlyShape(std::span<const int> peak_hours) {
  std::vector<double> shape(kHoursPerDay, 0.0);
  for (int h = 0; h < kHoursPerDay; ++h) {
    const bool night = h < 6 || h == 23;
    double w = night ? 0.05 : 0.4;
    for (int p : peak_hours) {
      const double dh = h - p;
      w += std::exp(-dh * dh / (2.0 * 1.5 * 1.5));
    }
    shape[static_cast<std::size_t>(h)] = w;
  }
  return shape;
}

AirlineSchedule GenerateSyntheticSchedule(const SyntheticScheduleParams& params) {
  if (params.seat_mix.empty()) throw ConfigError("seat_mix must not be empty");
  if (params.days < 0) throw ConfigError("days must be nonnegative");
  if (params.daily_flights_mean < 0.0) throw ConfigError("daily_flights_mean must be nonnegative");
  if (params.arrival_share < 0.0 || params.arrival_share > 1.0) {
    throw ConfigError("arrival_share must lie in [0,1]");
  }
  double weight_sum = 0.0;
  for (const auto& sc : params.seat_mix) {
    if (sc.seats < 1) throw ConfigError("seat class with nonpositive seats");
    if (sc.weight < 0.0) throw ConfigError("negative seat-class weight");
    weight_sum += sc.weight;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) throw ConfigError("seat_mix weights must sum to 1");

  auto shape_for = [&](const std::vector<double>& given) {
    if (given.empty()) return BimodalHourlyShape(params.peak_hours);
    if (given.size() != kHoursPerDay) throw ConfigError("hourly shape needs 24 weights");
    double sum = 0.0;
    for (double w : given) {
      if (w < 0.0) throw ConfigError("hourly shape weights must be nonnegative");
      sum += w;
    }
    if (sum <= 0.0) throw ConfigError("hourly shape weights sum to zero");
    return given;
  };
  const auto arr_shape = shape_for(params.arrival_shape);
  const auto dep_shape = shape_for(params.departure_shape);

  std::vector<double> mix_weights;
  for (const auto& sc : params.seat_mix) mix_weights.push_back(sc.weight);

  Rng rng(DeriveSeed(params.seed, "schedule"));
  std::discrete_distribution<int> arr_hour(arr_shape.begin(), arr_shape.end());
  std::discrete_distribution<int> dep_hour(dep_shape.begin(), dep_shape.end());
  std::discrete_distribution<std::size_t> seat_class(mix_weights.begin(), mix_weights.end());
  std::bernoulli_distribution is_arrival(params.arrival_share);
  std::uniform_int_distribution<int> minute_in_hour(0, 59);

  std::vector<FlightRecord> records;
  const std::chrono::sys_days first{params.start_day};
  for (int d = 0; d < params.days; ++d) {
    const Date day{first + std::chrono::days{d}};
    long long count = 0;
    if (params.daily_flights_mean > 0.0) {
      std::poisson_distribution<long long> daily(params.daily_flights_mean);
      count = daily(rng);
    }
    std::vector<FlightRecord> today;
    today.reserve(static_cast<std::size_t>(count));
    for (long long f = 0; f < count; ++f) {
      FlightRecord r;
      r.day = day;
      r.direction = is_arrival(rng) ? Direction::kArrival : Direction::kDeparture;
      const int hour = r.direction == Direction::kArrival ? arr_hour(rng) : dep_hour(rng);
      r.event_minute = hour * 60 + minute_in_hour(rng);
      r.seats = params.seat_mix[seat_class(rng)].seats;
      today.push_back(r);
    }
    std::stable_sort(today.begin(), today.end(), [](const FlightRecord& a, const FlightRecord& b) {
      return a.event_minute < b.event_minute;
    });
    records.insert(records.end(), today.begin(), today.end());
  }
  return AirlineSchedule(std::move(records));
}

long long TotalCapacity(const AirlineSchedule& schedule, Direction v) {
  long long total = 0;
  for (const auto& r : schedule.records()) {
    if (r.direction == v) total += r.seats;
  }
  return total;
}

CapacityEcdf HourlyCapacityEcdf(const AirlineSchedule& schedule, std::size_t day_index, int hour,
                                Direction v) {
  const auto& cell = schedule.Cell(day_index, hour, v);
  if (cell.empty()) {
    throw DomainError("no flights in cell (day " + std::to_string(day_index) + ", hour " +
                      std::to_string(hour) + ", direction " + std::to_string(Index(v)) + ")");
  }
  return CapacityEcdf(cell, schedule.records());
}

}  // namespace uam
