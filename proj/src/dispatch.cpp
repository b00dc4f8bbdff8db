#include "uamfleet/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"

namespace uam {

DemandTimeSeries::DemandTimeSeries(int num_vertiports, int num_steps, int step_minutes)
    : num_vertiports_(num_vertiports), num_steps_(num_steps), step_minutes_(step_minutes) {
  if (num_vertiports < 1 || num_steps < 0 || step_minutes < 1) {
    throw ValidationError("invalid demand series dimensions");
  }
  const auto n = static_cast<std::size_t>(num_vertiports) * static_cast<std::size_t>(num_vertiports) *
                 static_cast<std::size_t>(num_steps);
  flights_.assign(n, 0);
  passengers_.assign(n, 0);
}

std::size_t DemandTimeSeries::Slot(int from, int to, int step) const {
  if (from < 0 || from >= num_vertiports_ || to < 0 || to >= num_vertiports_ || step < 0 ||
      step >= num_steps_) {
    throw ValidationError("demand index out of range (" + std::to_string(from) + "," +
                          std::to_string(to) + "," + std::to_string(step) + ")");
  }
  return (static_cast<std::size_t>(from) * static_cast<std::size_t>(num_vertiports_) +
          static_cast<std::size_t>(to)) *
             static_cast<std::size_t>(num_steps_) +
         static_cast<std::size_t>(step);
}

void DemandTimeSeries::AddFlight(int from, int to, int step, int occupancy) {
  const auto s = Slot(from, to, step);
  flights_[s] += 1;
  passengers_[s] += occupancy;
}

void DemandTimeSeries::Set(int from, int to, int step, int flights, int passengers) {
  if (flights < 0 || passengers < 0) throw ValidationError("negative demand");
  const auto s = Slot(from, to, step);
  flights_[s] = flights;
  passengers_[s] = passengers;
}

long long DemandTimeSeries::TotalFlights() const {
  long long total = 0;
  for (int f : flights_) total += f;
  return total;
}

long long DemandTimeSeries::TotalPassengers() const {
  long long total = 0;
  for (int p : passengers_) total += p;
  return total;
}

namespace {

class OriginQueue {
 public:
  OriginQueue(DemandTimeSeries& out, int from, int to, const DispatchRule& rule, int last_step)
      : out_(out), from_(from), to_(to), rule_(rule), last_step_(last_step) {}

  void Arrive(double minute) {
    FireWaitTriggersBefore(minute);
    queue_.push_back(minute);
    if (static_cast<int>(queue_.size()) >= rule_.seat_capacity) Emit(minute, rule_.seat_capacity);
  }

  void EndOfDay() {
    FireWaitTriggersBefore(static_cast<double>(kMinutesPerDay));
    while (!queue_.empty()) {
      const int take = std::min<int>(static_cast<int>(queue_.size()), rule_.seat_capacity);
      EmitAtStep(last_step_, take);
    }
  }

 private:
  // First whole minute at which the head has waited at least max_wait.
  double HeadDeadline() const { return std::ceil(queue_.front() + rule_.max_wait_minutes); }

  void FireWaitTriggersBefore(double minute) {
    while (!queue_.empty()) {
      const double deadline = HeadDeadline();
      if (!(deadline < minute)) break;
      const int take = std::min<int>(static_cast<int>(queue_.size()), rule_.seat_capacity);
      Emit(deadline, take);
    }
  }

  void Emit(double minute, int take) {
    const int step = std::min(static_cast<int>(std::floor(minute / rule_.step_minutes)), last_step_);
    EmitAtStep(step, take);
  }

  void EmitAtStep(int step, int take) {
    out_.AddFlight(from_, to_, step, take);
    for (int i = 0; i < take; ++i) queue_.pop_front();
  }

  DemandTimeSeries& out_;
  int from_;
  int to_;
  const DispatchRule& rule_;
  int last_step_;
  std::deque<double> queue_;
};

}  // namespace

DemandTimeSeries Dispatch(const ArrivalProfile& profile, const DispatchRule& rule) {
  if (rule.seat_capacity < 1) throw ConfigError("seat capacity must be positive");
  if (rule.step_minutes < 1 || kMinutesPerDay % rule.step_minutes != 0) {
    throw ConfigError("step_minutes must divide 1440");
  }
  if (!(rule.max_wait_minutes >= 0.0)) throw ConfigError("max wait must be nonnegative");
  const int steps = kMinutesPerDay / rule.step_minutes;
  DemandTimeSeries series(2, steps, rule.step_minutes);

  for (const Vertiport origin : {Vertiport::kApt, Vertiport::kCbd}) {
    std::vector<double> minutes;
    for (const auto& a : profile.arrivals) {
      if (a.origin == origin) minutes.push_back(a.minute);
    }
    std::sort(minutes.begin(), minutes.end());
    const int from = static_cast<int>(origin);
    OriginQueue queue(series, from, 1 - from, rule, steps - 1);
    for (double m : minutes) queue.Arrive(m);
    queue.EndOfDay();
  }
  return series;
}

std::vector<int> FlightOccupancies(int flights, int passengers, int seat_capacity) {
  std::vector<int> occ(static_cast<std::size_t>(std::max(flights, 0)), 0);
  if (occ.empty()) return occ;
  int remaining = passengers;
  // Every flight carries at least one passenger, then fill in order.
  for (auto& o : occ) {
    if (remaining > 0) {
      o = 1;
      --remaining;
    }
  }
  for (auto& o : occ) {
    const int add = std::min(remaining, seat_capacity - o);
    o += add;
    remaining -= add;
  }
  std::sort(occ.begin(), occ.end(), std::greater<>());
  return occ;
}

std::string SerializeSeries(const DemandTimeSeries& series,
                            const std::vector<std::string>& vertiport_names) {
  if (static_cast<int>(vertiport_names.size()) != series.num_vertiports()) {
    throw ValidationError("vertiport name count does not match series");
  }
  std::string out = "from,to,step,flights,passengers\n";
  for (int i = 0; i < series.num_vertiports(); ++i) {
    for (int j = 0; j < series.num_vertiports(); ++j) {
      for (int t = 0; t < series.num_steps(); ++t) {
        const int f = series.flights(i, j, t);
        const int p = series.passengers(i, j, t);
        if (f == 0 && p == 0) continue;
        out += vertiport_names[static_cast<std::size_t>(i)] + ',' +
               vertiport_names[static_cast<std::size_t>(j)] + ',' + std::to_string(t) + ',' +
               std::to_string(f) + ',' + std::to_string(p) + '\n';
      }
    }
  }
  return out;
}

DemandTimeSeries ParseSeries(std::string_view csv_text,
                             const std::vector<std::string>& vertiport_names, int num_steps,
                             int step_minutes) {
  auto lines = csv::SplitLines(csv_text);
  if (lines.empty() || lines[0] != "from,to,step,flights,passengers") {
    throw ParseError(1, "expected header 'from,to,step,flights,passengers'");
  }
  DemandTimeSeries series(static_cast<int>(vertiport_names.size()), num_steps, step_minutes);
  auto lookup = [&](std::string_view name, std::size_t line_no) {
    for (std::size_t i = 0; i < vertiport_names.size(); ++i) {
      if (vertiport_names[i] == name) return static_cast<int>(i);
    }
    throw ParseError(line_no, "unknown vertiport '" + std::string(name) + "'");
  };
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    if (lines[n].empty()) continue;
    auto fields = csv::SplitFields(lines[n]);
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields");
    const int from = lookup(fields[0], line_no);
    const int to = lookup(fields[1], line_no);
    long long step = 0, f = 0, p = 0;
    if (!csv::ParseInt(fields[2], step) || !csv::ParseInt(fields[3], f) ||
        !csv::ParseInt(fields[4], p)) {
      throw ParseError(line_no, "step, flights and passengers must be integers");
    }
    if (step < 0 || step >= num_steps) throw ParseError(line_no, "step out of range");
    if (f < 0 || p < 0) throw ParseError(line_no, "negative demand");
    series.Set(from, to, static_cast<int>(step), static_cast<int>(f), static_cast<int>(p));
  }
  return series;
}

}  // namespace uam
