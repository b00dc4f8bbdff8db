#include "uamfleet/milp/model.hpp"

#include <cmath>

#include "uamfleet/errors.hpp"
#include "uamfleet/random.hpp"

namespace uam::milp {

std::string VarKey::Name() const {
  auto s = [](int v) { return std::to_string(v); };
  switch (kind) {
    case VarKind::kIdle:
      return "n_" + s(i) + "_" + s(a) + "_" + s(t);
    case VarKind::kFlight:
      return "u_" + s(i) + "_" + s(j) + "_" + s(a) + "_" + s(t);
    case VarKind::kCharge:
      return "C_" + s(i) + "_" + s(a) + "_" + s(b) + "_" + s(t);
    case VarKind::kSpill:
      return "s_" + s(i) + "_" + s(j) + "_" + s(t);
  }
  return "?";
}

std::size_t VarKeyHash::operator()(const VarKey& k) const {
  std::uint64_t h = static_cast<std::uint64_t>(k.kind);
  for (int v : {k.i, k.j, k.a, k.b, k.t}) {
    h = Mix64(h * 31 + static_cast<std::uint32_t>(v));
  }
  return static_cast<std::size_t>(h);
}

const char* TagName(ConstraintTag tag) {
  switch (tag) {
    case ConstraintTag::kDynamics: return "dynamics";
    case ConstraintTag::kDemand: return "demand";
    case ConstraintTag::kEnergy: return "energy";
    case ConstraintTag::kCyclic: return "cyclic";
    case ConstraintTag::kSpillPos: return "spill_pos";
    case ConstraintTag::kSpillDef: return "spill_def";
    case ConstraintTag::kFleetFix: return "fleet_fix";
  }
  return "?";
}

const char* StatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kFeasible: return "Feasible";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kTimedOut: return "TimedOut";
    case SolveStatus::kError: return "Error";
  }
  return "?";
}

int MilpModel::AddVariable(const VarKey& key, double lower, double upper, bool integer) {
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  if (lower < 0.0) throw ValidationError("variables must have a nonnegative lower bound");
  const int idx = static_cast<int>(variables_.size());
  variables_.push_back({key, lower, upper, integer});
  index_.emplace(key, idx);
  return idx;
}

std::optional<int> MilpModel::Find(const VarKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int MilpModel::Index(const VarKey& key) const {
  auto idx = Find(key);
  if (!idx) throw ValidationError("unknown variable " + key.Name());
  return *idx;
}

void MilpModel::AddConstraint(Constraint c) { constraints_.push_back(std::move(c)); }

void MilpModel::AddObjectiveTerm(int var, double coef) { objective_.push_back({var, coef}); }

void MilpModel::Validate() const {
  const int n = static_cast<int>(variables_.size());
  auto check = [&](const std::vector<Term>& terms, const std::string& where) {
    for (const auto& term : terms) {
      if (term.var < 0 || term.var >= n) {
        throw ValidationError(where + " references a missing variable");
      }
    }
  };
  check(objective_, "objective");
  for (const auto& c : constraints_) check(c.terms, "constraint " + c.name);
  for (const auto& v : variables_) {
    if (v.lower < 0.0) throw ValidationError(v.key.Name() + " has a negative lower bound");
    if (v.upper < v.lower) throw ValidationError(v.key.Name() + " has empty bounds");
  }
}

MilpModel MilpModel::LpRelaxation() const {
  MilpModel copy = *this;
  for (auto& v : copy.variables_) v.integer = false;
  return copy;
}

long long Solution::Value(const MilpModel& model, const VarKey& key) const {
  auto idx = model.Find(key);
  if (!idx || static_cast<std::size_t>(*idx) >= values.size()) return 0;
  return values[static_cast<std::size_t>(*idx)];
}

double EvaluateObjective(const MilpModel& model, const std::vector<long long>& values) {
  double total = model.objective_offset();
  for (const auto& term : model.objective()) {
    total += term.coef * static_cast<double>(values[static_cast<std::size_t>(term.var)]);
  }
  return total;
}

bool IntegerPartProven(const MilpModel& model, double objective, double dual_bound) {
  const double count = std::floor(objective + 1e-9);
  double slack = 1.0;
  if (const auto& info = model.integer_objective()) {
    const double fleet = info->fixed_fleet >= 0 ? info->fixed_fleet : std::max(0.0, count - 1.0);
    slack = std::min(1.0, info->flight_weight * info->max_flights_per_aircraft * fleet);
  }
  if (slack >= 1.0) return dual_bound >= count - 1e-7;
  return dual_bound > count - 1.0 + slack + 1e-9;
}

bool RoundIntegral(const std::vector<double>& raw, std::vector<long long>& out) {
  out.resize(raw.size());
  bool ok = true;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double r = std::round(raw[i]);
    if (std::abs(raw[i] - r) > 1e-6) ok = false;
    out[i] = static_cast<long long>(r);
  }
  return ok;
}

}  // namespace uam::milp
