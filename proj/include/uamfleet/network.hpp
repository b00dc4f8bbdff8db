#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace uam {

// Integer parameter over (from, to, model time step) with a constant default
// and sparse overrides. Used for flight time and per-flight SoC cost.
class TimeVaryingParam {
 public:
  TimeVaryingParam() = default;
  explicit TimeVaryingParam(int constant) : default_(constant) {}

  int operator()(int from, int to, int t) const;
  void Override(int from, int to, int t, int value);

  int default_value() const { return default_; }
  const std::map<std::tuple<int, int, int>, int>& overrides() const { return overrides_; }
  int Max() const;
  int Min() const;

 private:
  int default_ = 1;
  std::map<std::tuple<int, int, int>, int> overrides_;
};

struct NetworkConfig {
  std::vector<std::string> vertiports{"APT", "CBD"};
  int steps_per_day = 288;
  int step_minutes = 5;
  int soc_levels = 32;  // K, levels above reserve
  double reserve_fraction = 0.20;
  double soc_increment = 0.025;
  std::vector<int> gamma;  // gamma_1..gamma_K; empty means DefaultChargingCurve(K)
  TimeVaryingParam tau{2};    // flight time in steps
  TimeVaryingParam kappa{4};  // SoC levels used per flight
  int seat_capacity = 4;      // O

  int num_vertiports() const { return static_cast<int>(vertiports.size()); }
  // T = steps per day + max flight time + 1.
  int horizon() const;
  // gamma_k for k in 1..K.
  int ChargeStep(int level) const;
  const std::vector<int>& charging_curve() const { return gamma; }

  // Throws ConfigError; also fills an empty gamma with the default curve.
  void Validate();
  double SocFraction(int level) const { return reserve_fraction + level * soc_increment; }
};

// Steps to charge from level x to level y (x < y): sum of gamma_{x+1..y}.
int ChargingDuration(int from_level, int to_level, const std::vector<int>& gamma);

// One step per level up to round(0.8 K), then a taper that grows by one step
// every two levels.
std::vector<int> DefaultChargingCurve(int levels);

// A_ij^t = { t' in 1..T : t' + tau_ij(t') = t } for every ordered pair and
// every t in 0..T.
class ArrivalIndexSet {
 public:
  explicit ArrivalIndexSet(const NetworkConfig& config);

  const std::vector<int>& Departures(int from, int to, int t) const;
  int horizon() const { return horizon_; }

 private:
  int num_vertiports_;
  int horizon_;
  std::vector<std::vector<int>> sets_;
};

inline ArrivalIndexSet ArrivalSets(const NetworkConfig& config) { return ArrivalIndexSet(config); }

// Full-scale defaults: 288 five-minute steps, 32 levels of 2.5% above a 20%
// reserve, 4 levels and 2 steps per flight.
NetworkConfig DefaultNetworkConfig();

// Coarse variant for quick studies: 96 fifteen-minute steps, 8 levels of 10%,
// one step and 2 levels per flight.
NetworkConfig ReducedScaleNetworkConfig();

}  // namespace uam
