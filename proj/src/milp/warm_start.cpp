#include "uamfleet/milp/warm_start.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "uamfleet/milp/builders.hpp"

namespace uam::milp {

namespace {

// One aircraft through the day.
struct Token {
  int start_state = -1;  // encoded state at t=0
  int end_state = -1;    // encoded state at t=T
  std::vector<int> idle_at;  // per t: i*(K+1)+k when idle, -1 otherwise
  std::vector<VarKey> moves;
  int flights = 0;
};

// States: idle (i,k) -> i*(K+1)+k; starting a charge x->y at i -> offset +
// (i*(K+1)+x)*(K+1)+y.
class StateCode {
 public:
  StateCode(int V, int K) : V_(V), K_(K) {}
  int Idle(int i, int k) const { return i * (K_ + 1) + k; }
  int Charge(int i, int x, int y) const { return V_ * (K_ + 1) + (i * (K_ + 1) + x) * (K_ + 1) + y; }

 private:
  int V_;
  int K_;
};

}  // namespace

std::optional<std::vector<long long>> SpillStartFrom(const NetworkConfig& raw_config,
                                                     const DemandTimeSeries& demand,
                                                     const MilpModel& source,
                                                     const std::vector<long long>& source_values,
                                                     const MilpModel& target, int fleet_size) {
  NetworkConfig config = raw_config;
  config.Validate();
  const int V = config.num_vertiports();
  const int K = config.soc_levels;
  const int T = config.horizon();
  const auto& gamma = config.charging_curve();
  const StateCode code(V, K);
  auto value = [&](const VarKey& key) -> long long {
    const auto idx = source.Find(key);
    return idx ? source_values[static_cast<std::size_t>(*idx)] : 0;
  };

  std::vector<Token> tokens;
  // Aircraft waiting at (i,k), oldest first.
  std::map<std::pair<int, int>, std::deque<int>> idle;
  // Aircraft landing at t: (token, i, k).
  std::vector<std::vector<std::tuple<int, int, int>>> landing(static_cast<std::size_t>(T + 1));

  auto new_token = [&](int start_state) {
    Token tok;
    tok.start_state = start_state;
    tok.idle_at.assign(static_cast<std::size_t>(T + 1), -1);
    tokens.push_back(std::move(tok));
    return static_cast<int>(tokens.size()) - 1;
  };

  // t = 0: idle aircraft and charges in progress.
  for (int i = 0; i < V; ++i)
    for (int k = 0; k <= K; ++k)
      for (long long n = value(VarKey::Idle(i, k, 0)); n > 0; --n) idle[{i, k}].push_back(new_token(code.Idle(i, k)));
  for (int i = 0; i < V; ++i)
    for (int x = 0; x < K; ++x)
      for (int y = x + 1; y <= K; ++y) {
        const VarKey key = VarKey::Charge(i, x, y, 0);
        for (long long n = value(key); n > 0; --n) {
          const int a = new_token(code.Charge(i, x, y));
          tokens[static_cast<std::size_t>(a)].moves.push_back(key);
          const int done = ChargingDuration(x, y, gamma);
          if (done <= T) landing[static_cast<std::size_t>(done)].emplace_back(a, i, y);
        }
      }
  for (const auto& [state, queue] : idle)
    for (int a : queue) tokens[static_cast<std::size_t>(a)].idle_at[0] = code.Idle(state.first, state.second);

  for (int t = 1; t <= T; ++t) {
    for (const auto& [a, i, k] : landing[static_cast<std::size_t>(t)]) idle[{i, k}].push_back(a);
    auto take = [&](int i, int k) -> std::optional<int> {
      auto& q = idle[{i, k}];
      if (q.empty()) return std::nullopt;
      const int a = q.front();
      q.pop_front();
      return a;
    };
    for (int i = 0; i < V; ++i)
      for (int k = 0; k <= K; ++k) {
        for (int j = 0; j < V; ++j) {
          if (j == i) continue;
          const VarKey key = VarKey::Flight(i, j, k, t);
          for (long long n = value(key); n > 0; --n) {
            const auto a = take(i, k);
            if (!a) return std::nullopt;
            auto& tok = tokens[static_cast<std::size_t>(*a)];
            tok.moves.push_back(key);
            ++tok.flights;
            const int land = t + config.tau(i, j, t);
            const int level = k - config.kappa(i, j, t);
            if (level < 0) return std::nullopt;
            if (land <= T) {
              landing[static_cast<std::size_t>(land)].emplace_back(*a, j, level);
            } else {
              return std::nullopt;  // airborne at the end of the day
            }
          }
        }
        for (int y = k + 1; y <= K; ++y) {
          const VarKey key = VarKey::Charge(i, k, y, t);
          for (long long n = value(key); n > 0; --n) {
            const auto a = take(i, k);
            if (!a) return std::nullopt;
            auto& tok = tokens[static_cast<std::size_t>(*a)];
            tok.moves.push_back(key);
            if (t == T) {
              tok.end_state = code.Charge(i, k, y);
            } else {
              const int done = t + ChargingDuration(k, y, gamma);
              if (done > T) return std::nullopt;
              landing[static_cast<std::size_t>(done)].emplace_back(*a, i, y);
            }
          }
        }
      }
    for (auto& [state, queue] : idle)
      for (int a : queue) {
        tokens[static_cast<std::size_t>(a)].idle_at[static_cast<std::size_t>(t)] = code.Idle(state.first, state.second);
        if (t == T) tokens[static_cast<std::size_t>(a)].end_state = code.Idle(state.first, state.second);
      }
  }

  // Next-day successor of each aircraft.
  std::map<int, std::deque<int>> by_start;
  for (std::size_t a = 0; a < tokens.size(); ++a) by_start[tokens[a].start_state].push_back(static_cast<int>(a));
  std::vector<int> next(tokens.size(), -1);
  for (std::size_t a = 0; a < tokens.size(); ++a) {
    if (tokens[a].end_state < 0) return std::nullopt;
    auto& q = by_start[tokens[a].end_state];
    if (q.empty()) return std::nullopt;
    next[a] = q.front();
    q.pop_front();
  }

  struct Tour {
    std::vector<int> members;
    int flights = 0;
  };
  std::vector<Tour> tours;
  std::vector<bool> seen(tokens.size(), false);
  for (std::size_t a = 0; a < tokens.size(); ++a) {
    if (seen[a]) continue;
    Tour tour;
    for (int b = static_cast<int>(a); !seen[static_cast<std::size_t>(b)]; b = next[static_cast<std::size_t>(b)]) {
      seen[static_cast<std::size_t>(b)] = true;
      tour.members.push_back(b);
      tour.flights += tokens[static_cast<std::size_t>(b)].flights;
    }
    tours.push_back(std::move(tour));
  }
  std::stable_sort(tours.begin(), tours.end(), [](const Tour& l, const Tour& r) {
    return static_cast<double>(l.flights) / static_cast<double>(l.members.size()) <
           static_cast<double>(r.flights) / static_cast<double>(r.members.size());
  });

  const auto fleet = static_cast<long long>(tokens.size());
  std::vector<bool> drop(tours.size(), false);
  long long excess = fleet - fleet_size;
  // Tours that fit in the excess first, then the smallest one that overshoots.
  for (std::size_t c = 0; c < tours.size() && excess > 0; ++c) {
    const auto size = static_cast<long long>(tours[c].members.size());
    if (size <= excess) {
      drop[c] = true;
      excess -= size;
    }
  }
  if (excess > 0) {
    std::size_t pick = tours.size();
    for (std::size_t c = 0; c < tours.size(); ++c) {
      if (drop[c]) continue;
      if (pick == tours.size() || tours[c].members.size() < tours[pick].members.size()) pick = c;
    }
    if (pick == tours.size()) return std::nullopt;
    drop[pick] = true;
    excess -= static_cast<long long>(tours[pick].members.size());
  }

  std::vector<long long> values(target.variables().size(), 0);
  auto add = [&](const VarKey& key, long long v) -> bool {
    const auto idx = target.Find(key);
    if (!idx) return false;
    values[static_cast<std::size_t>(*idx)] += v;
    return true;
  };
  long long kept = 0;
  for (std::size_t c = 0; c < tours.size(); ++c) {
    if (drop[c]) continue;
    for (int a : tours[c].members) {
      const auto& tok = tokens[static_cast<std::size_t>(a)];
      ++kept;
      // Kept tours are closed, so boundary states still match.
      for (const auto& key : tok.moves) {
        if (!add(key, 1)) return std::nullopt;
      }
      for (int t = 0; t <= T; ++t) {
        const int s = tok.idle_at[static_cast<std::size_t>(t)];
        if (s >= 0 && !add(VarKey::Idle(s / (K + 1), s % (K + 1), t), 1)) return std::nullopt;
      }
    }
  }
  for (; kept < fleet_size; ++kept)
    for (int t = 0; t <= T; ++t) add(VarKey::Idle(0, K, t), 1);

  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (i == j) continue;
      for (int t = 1; t <= T; ++t) {
        const int s = SeriesStep(t);
        const long long p = s < demand.num_steps() ? demand.passengers(i, j, s) : 0;
        long long flown = 0;
        for (int k = 0; k <= K; ++k) {
          const auto idx = target.Find(VarKey::Flight(i, j, k, t));
          if (idx) flown += values[static_cast<std::size_t>(*idx)];
        }
        const long long spill = std::max(0LL, p - config.seat_capacity * flown);
        if (spill > 0 && !add(VarKey::Spill(i, j, t), spill)) return std::nullopt;
      }
    }
  return values;
}

}  // namespace uam::milp
