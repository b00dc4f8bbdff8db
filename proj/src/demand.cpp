#include "uamfleet/demand.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"

namespace uam {

std::string_view VertiportName(Vertiport v) { return v == Vertiport::kApt ? "APT" : "CBD"; }

void DemandParams::Validate() const {
  if (!(add >= 0.0)) throw ConfigError("add must be nonnegative");
  if (!(ar_coeff >= 0.0 && ar_coeff <= 1.0)) throw ConfigError("ar_coeff must lie in [0,1]");
  if (!(lead.scale > 0.0) || !(lag.scale > 0.0)) throw ConfigError("skew-normal scale must be positive");
  if (!(transfer_minutes >= 0.0)) throw ConfigError("transfer_minutes must be nonnegative");
}

long long ArrivalProfile::TotalPassengers(Direction v) const {
  long long total = 0;
  for (const auto& row : hourly_counts) total += row[static_cast<std::size_t>(Index(v))];
  return total;
}

std::vector<double> FlightRates(const AirlineSchedule& schedule, double add) {
  const long long beta[kDirections] = {TotalCapacity(schedule, Direction::kArrival),
                                       TotalCapacity(schedule, Direction::kDeparture)};
  if (add > 0.0 && beta[0] + beta[1] == 0) {
    throw DomainError("cannot allocate demand: schedule has zero seat capacity");
  }
  const double days = static_cast<double>(schedule.num_days());
  std::vector<double> rates;
  rates.reserve(schedule.records().size());
  for (const auto& r : schedule.records()) {
    const auto b = static_cast<double>(beta[Index(r.direction)]);
    rates.push_back(static_cast<double>(r.seats) / b * add * days);
  }
  return rates;
}

double ExpectedHourlyRate(const AirlineSchedule& schedule, const std::vector<double>& rates,
                          std::size_t day_index, int hour, Direction v) {
  double sum = 0.0;
  for (std::size_t i : schedule.Cell(day_index, hour, v)) sum += rates[i];
  return sum;
}

double AutoregressiveRate(std::optional<double> previous_expected, long long previous_count,
                          double current_expected, double ar_coeff) {
  if (!previous_expected || *previous_expected <= 0.0) return current_expected;
  const double surprise = static_cast<double>(previous_count) - *previous_expected;
  const double rate = current_expected + surprise * current_expected / *previous_expected * ar_coeff;
  return std::max(0.0, rate);
}

long long SamplePoisson(double rate, Rng& rng) {
  if (!(rate > 0.0)) return 0;
  std::poisson_distribution<long long> dist(rate);
  return dist(rng);
}

double SampleSkewNormal(const SkewNormalParams& params, Rng& rng) {
  std::normal_distribution<double> standard(0.0, 1.0);
  const double delta = params.shape / std::sqrt(1.0 + params.shape * params.shape);
  const double z0 = standard(rng);
  const double z1 = standard(rng);
  return params.location +
         params.scale * (delta * std::abs(z0) + std::sqrt(1.0 - delta * delta) * z1);
}

ArrivalProfile GenerateDay(const AirlineSchedule& schedule, const std::vector<double>& rates,
                           std::size_t day_index, const DemandParams& params, Rng& rng) {
  params.Validate();
  ArrivalProfile profile;
  profile.day = schedule.days().at(day_index);
  const auto& records = schedule.records();

  std::optional<double> prev_expected[kDirections];
  long long prev_count[kDirections] = {0, 0};

  for (int h = 0; h < kHoursPerDay; ++h) {
    for (int vi = 0; vi < kDirections; ++vi) {
      const auto v = static_cast<Direction>(vi);
      const auto hs = static_cast<std::size_t>(h);
      const auto vs = static_cast<std::size_t>(vi);
      const double expected = ExpectedHourlyRate(schedule, rates, day_index, h, v);
      const double rate =
          AutoregressiveRate(prev_expected[vi], prev_count[vi], expected, params.ar_coeff);
      const long long count = SamplePoisson(rate, rng);
      profile.expected_rates[hs][vs] = expected;
      profile.hourly_rates[hs][vs] = rate;
      profile.hourly_counts[hs][vs] = count;
      prev_expected[vi] = expected;
      prev_count[vi] = count;
      if (count == 0) continue;

      const CapacityEcdf ecdf = HourlyCapacityEcdf(schedule, day_index, h, v);
      for (long long p = 0; p < count; ++p) {
        const FlightRecord& flight = records[ecdf.Lookup(UniformOpenClosed(rng))];
        PassengerArrival a;
        if (v == Direction::kArrival) {
          a.origin = Vertiport::kApt;
          a.minute = flight.event_minute + SampleSkewNormal(params.lag, rng) + params.transfer_minutes;
        } else {
          a.origin = Vertiport::kCbd;
          a.minute = flight.event_minute - SampleSkewNormal(params.lead, rng);
        }
        a.minute = std::clamp(a.minute, 0.0, static_cast<double>(kMinutesPerDay - 1));
        profile.arrivals.push_back(a);
      }
    }
  }
  return profile;
}

std::uint64_t DaySeed(std::uint64_t base_seed, const Date& day) {
  const auto ordinal = std::chrono::sys_days{day}.time_since_epoch().count();
  return DeriveSeed(base_seed, "demand", ordinal);
}

std::vector<ArrivalProfile> GenerateProfiles(const AirlineSchedule& schedule,
                                             const DemandParams& params, std::uint64_t base_seed,
                                             int jobs) {
  params.Validate();
  const auto rates = FlightRates(schedule, params.add);
  std::vector<ArrivalProfile> profiles(schedule.num_days());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t d = begin; d < profiles.size(); d += stride) {
      Rng rng(DaySeed(base_seed, schedule.days()[d]));
      profiles[d] = GenerateDay(schedule, rates, d, params, rng);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  return profiles;
}

std::string SerializeProfiles(const std::vector<ArrivalProfile>& profiles) {
  std::string out = "day,origin,minute\n";
  for (const auto& profile : profiles) {
    auto arrivals = profile.arrivals;
    std::stable_sort(arrivals.begin(), arrivals.end(),
                     [](const PassengerArrival& a, const PassengerArrival& b) {
                       if (a.minute != b.minute) return a.minute < b.minute;
                       return a.origin < b.origin;
                     });
    const std::string day = FormatIsoDate(profile.day);
    for (const auto& a : arrivals) {
      out += day;
      out += ',';
      out += VertiportName(a.origin);
      out += ',';
      out += csv::FormatFixed(a.minute, 4);
      out += '\n';
    }
  }
  return out;
}

std::vector<ArrivalProfile> ParseProfiles(std::string_view csv_text) {
  auto lines = csv::SplitLines(csv_text);
  if (lines.empty() || lines[0] != "day,origin,minute") {
    throw ParseError(1, "expected header 'day,origin,minute'");
  }
  std::map<Date, ArrivalProfile> by_day;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (lines[n].empty()) continue;
    auto fields = csv::SplitFields(lines[n]);
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
    Date day;
    if (!ParseIsoDate(fields[0], day)) throw ParseError(line_no, "bad date");
    PassengerArrival a;
    if (fields[1] == "APT") {
      a.origin = Vertiport::kApt;
    } else if (fields[1] == "CBD") {
      a.origin = Vertiport::kCbd;
    } else {
      throw ParseError(line_no, "origin must be APT or CBD");
    }
    if (!csv::ParseDouble(fields[2], a.minute) || a.minute < 0.0 || a.minute >= kMinutesPerDay) {
      throw ParseError(line_no, "minute must be a number in [0,1440)");
    }
    auto& profile = by_day[day];
    profile.day = day;
    profile.arrivals.push_back(a);
  }
  std::vector<ArrivalProfile> out;
  for (auto& [day, profile] : by_day) out.push_back(std::move(profile));
  return out;
}

}  // namespace uam
