#include "uamfleet/network.hpp"

#include <algorithm>
#include <cmath>

#include "uamfleet/errors.hpp"

namespace uam {

int TimeVaryingParam::operator()(int from, int to, int t) const {
  if (overrides_.empty()) return default_;
  auto it = overrides_.find({from, to, t});
  return it == overrides_.end() ? default_ : it->second;
}

void TimeVaryingParam::Override(int from, int to, int t, int value) {
  overrides_[{from, to, t}] = value;
}

int TimeVaryingParam::Max() const {
  int m = default_;
  for (const auto& [key, v] : overrides_) m = std::max(m, v);
  return m;
}

int TimeVaryingParam::Min() const {
  int m = default_;
  for (const auto& [key, v] : overrides_) m = std::min(m, v);
  return m;
}

int NetworkConfig::horizon() const { return steps_per_day + tau.Max() + 1; }

int NetworkConfig::ChargeStep(int level) const {
  if (level < 1 || level > static_cast<int>(gamma.size())) {
    throw DomainError("charge level " + std::to_string(level) + " outside 1..K");
  }
  return gamma[static_cast<std::size_t>(level - 1)];
}

void NetworkConfig::Validate() {
  if (vertiports.size() < 2) throw ConfigError("network needs at least two vertiports");
  if (steps_per_day < 1) throw ConfigError("steps_per_day must be positive");
  if (step_minutes < 1) throw ConfigError("step_minutes must be positive");
  if (soc_levels < 1) throw ConfigError("soc_levels must be positive");
  if (seat_capacity < 1) throw ConfigError("seat_capacity must be positive");
  if (gamma.empty()) gamma = DefaultChargingCurve(soc_levels);
  if (static_cast<int>(gamma.size()) != soc_levels) {
    throw ConfigError("gamma must list exactly K charging times");
  }
  for (int g : gamma) {
    if (g < 1) throw ConfigError("every charging time gamma_k must be at least one step");
  }
  if (tau.Min() < 1) throw ConfigError("flight time tau must be at least one step");
  if (kappa.Min() < 1 || kappa.Max() > soc_levels) {
    throw ConfigError("flight energy kappa must lie in 1..K");
  }
  const int v = num_vertiports();
  for (const auto* p : {&tau, &kappa}) {
    for (const auto& [key, value] : p->overrides()) {
      const auto [i, j, t] = key;
      if (i < 0 || i >= v || j < 0 || j >= v || i == j || t < 0) {
        throw ConfigError("time-varying override has an invalid (from,to,t) index");
      }
    }
  }
}

int ChargingDuration(int from_level, int to_level, const std::vector<int>& gamma) {
  if (from_level < 0 || to_level > static_cast<int>(gamma.size()) || from_level >= to_level) {
    throw DomainError("charging needs 0 <= from < to <= K (got " + std::to_string(from_level) +
                      " -> " + std::to_string(to_level) + ")");
  }
  int steps = 0;
  for (int m = from_level + 1; m <= to_level; ++m) steps += gamma[static_cast<std::size_t>(m - 1)];
  return steps;
}

std::vector<int> DefaultChargingCurve(int levels) {
  if (levels < 1) throw DomainError("charging curve needs at least one level");
  const int knee = static_cast<int>(std::lround(0.8 * levels));
  std::vector<int> gamma;
  gamma.reserve(static_cast<std::size_t>(levels));
  for (int k = 1; k <= levels; ++k) {
    gamma.push_back(k <= knee ? 1 : 2 + (k - knee - 1) / 2);
  }
  return gamma;
}

ArrivalIndexSet::ArrivalIndexSet(const NetworkConfig& config)
    : num_vertiports_(config.num_vertiports()), horizon_(config.horizon()) {
  const auto v = static_cast<std::size_t>(num_vertiports_);
  const auto width = static_cast<std::size_t>(horizon_ + 1);
  sets_.assign(v * v * width, {});
  for (int i = 0; i < num_vertiports_; ++i) {
    for (int j = 0; j < num_vertiports_; ++j) {
      if (i == j) continue;
      for (int tp = 1; tp <= horizon_; ++tp) {
        const int t = tp + config.tau(i, j, tp);
        if (t > horizon_) continue;
        sets_[(static_cast<std::size_t>(i) * v + static_cast<std::size_t>(j)) * width +
              static_cast<std::size_t>(t)]
            .push_back(tp);
      }
    }
  }
}

const std::vector<int>& ArrivalIndexSet::Departures(int from, int to, int t) const {
  static const std::vector<int> empty;
  if (from < 0 || to < 0 || from >= num_vertiports_ || to >= num_vertiports_ || t < 0 ||
      t > horizon_) {
    return empty;
  }
  const auto v = static_cast<std::size_t>(num_vertiports_);
  const auto width = static_cast<std::size_t>(horizon_ + 1);
  return sets_[(static_cast<std::size_t>(from) * v + static_cast<std::size_t>(to)) * width +
               static_cast<std::size_t>(t)];
}

NetworkConfig DefaultNetworkConfig() {
  NetworkConfig config;
  config.Validate();
  return config;
}

NetworkConfig ReducedScaleNetworkConfig() {
  NetworkConfig config;
  config.steps_per_day = 96;
  config.step_minutes = 15;
  config.soc_levels = 8;
  config.soc_increment = 0.1;
  config.tau = TimeVaryingParam(1);
  config.kappa = TimeVaryingParam(2);
  config.Validate();
  return config;
}

}  // namespace uam
