#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uamfleet/demand.hpp"

namespace uam {

// Per-step flight demand f_ij^t and passenger demand p_ij^t for every ordered
// vertiport pair. Steps are 0-based within the operating day.
class DemandTimeSeries {
 public:
  DemandTimeSeries() = default;
  DemandTimeSeries(int num_vertiports, int num_steps, int step_minutes);

  int num_vertiports() const { return num_vertiports_; }
  int num_steps() const { return num_steps_; }
  int step_minutes() const { return step_minutes_; }

  int flights(int from, int to, int step) const { return flights_[Slot(from, to, step)]; }
  int passengers(int from, int to, int step) const { return passengers_[Slot(from, to, step)]; }

  // Adds one demanded flight carrying `occupancy` passengers.
  void AddFlight(int from, int to, int step, int occupancy);
  void Set(int from, int to, int step, int flights, int passengers);

  long long TotalFlights() const;
  long long TotalPassengers() const;
  bool operator==(const DemandTimeSeries&) const = default;

 private:
  std::size_t Slot(int from, int to, int step) const;

  int num_vertiports_ = 0;
  int num_steps_ = 0;
  int step_minutes_ = 1;
  std::vector<int> flights_;
  std::vector<int> passengers_;
};

struct DispatchRule {
  int seat_capacity = 4;        // O
  double max_wait_minutes = 5.0;
  int step_minutes = 5;
};

// Queue-based dispatch: a flight leaves when O passengers are waiting, or when
// the head of the queue has waited max_wait minutes (checked on whole
// minutes). Whatever is still queued at midnight leaves in the last step.
DemandTimeSeries Dispatch(const ArrivalProfile& profile, const DispatchRule& rule);

// Splits p passengers over f flights filling seats greedily, so the k largest
// flights carry min(p, k*O) passengers.
std::vector<int> FlightOccupancies(int flights, int passengers, int seat_capacity);

// CSV `from,to,step,flights,passengers` with vertiport names; only nonzero
// rows are written.
std::string SerializeSeries(const DemandTimeSeries& series,
                            const std::vector<std::string>& vertiport_names);
DemandTimeSeries ParseSeries(std::string_view csv_text,
                             const std::vector<std::string>& vertiport_names, int num_steps,
                             int step_minutes);

}  // namespace uam
