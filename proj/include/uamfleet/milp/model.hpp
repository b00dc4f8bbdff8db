#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace uam::milp {

// Decision variable families of the time-space network.
//   kIdle     n_i^k(t)     idle aircraft at i with SoC level k
//   kFlight   u_ij^k(t)    departures i->j with SoC level k
//   kCharge   C_i^xy(t)    aircraft starting a charge x->y at i
//   kSpill    s_ij(t)      passengers spilled on i->j
enum class VarKind : std::uint8_t { kIdle = 0, kFlight = 1, kCharge = 2, kSpill = 3 };

struct VarKey {
  VarKind kind = VarKind::kIdle;
  int i = 0;
  int j = 0;  // destination (kFlight, kSpill), unused otherwise
  int a = 0;  // level k, or x for kCharge
  int b = 0;  // y for kCharge, unused otherwise
  int t = 0;

  static VarKey Idle(int i, int k, int t) { return {VarKind::kIdle, i, 0, k, 0, t}; }
  static VarKey Flight(int i, int j, int k, int t) { return {VarKind::kFlight, i, j, k, 0, t}; }
  static VarKey Charge(int i, int x, int y, int t) { return {VarKind::kCharge, i, 0, x, y, t}; }
  static VarKey Spill(int i, int j, int t) { return {VarKind::kSpill, i, j, 0, 0, t}; }

  // n_i_k_t, u_i_j_k_t, C_i_x_y_t, s_i_j_t
  std::string Name() const;
  bool operator==(const VarKey&) const = default;
  auto operator<=>(const VarKey&) const = default;
};

struct VarKeyHash {
  std::size_t operator()(const VarKey& k) const;
};

struct Variable {
  VarKey key;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool integer = true;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

enum class Sense : std::uint8_t { kLessEqual, kGreaterEqual, kEqual };

// Where a constraint comes from in the formulation.
enum class ConstraintTag : std::uint8_t {
  kDynamics,   // aircraft-state balance
  kDemand,     // flights >= demanded flights
  kEnergy,     // no departures below the flight's SoC cost
  kCyclic,     // state at t=0 equals state at t=T
  kSpillPos,   // spill >= 0 (carried as a variable bound)
  kSpillDef,   // spill >= p - O * flights
  kFleetFix,   // fleet at t=0 equals F
};

const char* TagName(ConstraintTag tag);

struct Constraint {
  std::string name;
  ConstraintTag tag = ConstraintTag::kDynamics;
  std::vector<Term> terms;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

enum class ModelKind : std::uint8_t { kFleetSizing, kSpill, kGeneric };

// Structure of objectives of the form  count + flight_weight * flights,
// where count is an integer (fleet or spill). Lets a solver stop once the
// count is settled even if the flight term is not.
struct IntegerObjective {
  double flight_weight = 0.0;
  double max_flights_per_aircraft = 0.0;
  int fixed_fleet = -1;  // fleet when fixed by a constraint; -1 means fleet == count
};

class MilpModel {
 public:
  explicit MilpModel(ModelKind kind = ModelKind::kGeneric) : kind_(kind) {}

  ModelKind kind() const { return kind_; }

  // Adds a variable; returns the existing index if the key is already present.
  int AddVariable(const VarKey& key, double lower = 0.0,
                  double upper = std::numeric_limits<double>::infinity(), bool integer = true);
  std::optional<int> Find(const VarKey& key) const;
  int Index(const VarKey& key) const;  // throws if missing

  void AddConstraint(Constraint c);
  void AddObjectiveTerm(int var, double coef);
  void set_objective_offset(double v) { objective_offset_ = v; }
  void set_integer_objective(const IntegerObjective& info) { integer_objective_ = info; }
  const std::optional<IntegerObjective>& integer_objective() const { return integer_objective_; }

  const std::vector<Variable>& variables() const { return variables_; }
  std::vector<Variable>& mutable_variables() { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }

  // Checks that every term refers to an existing variable and bounds are sane.
  void Validate() const;

  // Relaxes integrality of every variable (bound reporting only).
  MilpModel LpRelaxation() const;

 private:
  ModelKind kind_;
  std::vector<Variable> variables_;
  std::unordered_map<VarKey, int, VarKeyHash> index_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  double objective_offset_ = 0.0;
  std::optional<IntegerObjective> integer_objective_;
};

enum class SolveStatus : std::uint8_t { kOptimal, kFeasible, kInfeasible, kTimedOut, kError };

const char* StatusName(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::kError;
  double objective_value = 0.0;
  double dual_bound = -std::numeric_limits<double>::infinity();
  double gap = 0.0;  // relative primal-dual gap reported by the solver
  // The dual bound rules out any solution with a smaller integer part of the
  // objective (objectives here are integer counts plus a sub-unit penalty).
  bool integer_part_proven = false;
  std::vector<long long> values;  // aligned with MilpModel::variables()
  double seconds = 0.0;
  std::string message;

  bool HasValues() const {
    return status == SolveStatus::kOptimal || status == SolveStatus::kFeasible;
  }
  long long Value(const MilpModel& model, const VarKey& key) const;
};

struct SolverLimits {
  double time_limit_seconds = 600.0;
  double relative_gap = 0.005;
  int threads = 1;
  bool verbose = false;
  // Stop as soon as the integer part of the objective is proven optimal,
  // even if the sub-unit flight penalty still has a gap.
  bool stop_when_integer_part_proven = false;
  // Solve node relaxations with an interior point method. Often faster on
  // the highly degenerate time-expanded relaxations.
  bool interior_point = false;
};

// True when no solution can have a smaller integer part than `objective`.
// Without structure this needs dual_bound >= floor(objective). With an
// IntegerObjective it suffices that the dual bound exceeds the largest
// objective a solution with count floor(objective)-1 could reach.
bool IntegerPartProven(const MilpModel& model, double objective, double dual_bound);

class SolverAdapter {
 public:
  virtual ~SolverAdapter() = default;
  virtual std::string name() const = 0;
  virtual bool reads_lp_files() const = 0;
  // `start`, when given, is a feasible point (aligned with the variables)
  // the solver may use as its first incumbent.
  virtual Solution Solve(const MilpModel& model, const SolverLimits& limits,
                         const std::vector<long long>* start = nullptr) = 0;
};

// Evaluates the objective at integer values.
double EvaluateObjective(const MilpModel& model, const std::vector<long long>& values);

// Rounds raw solver values to integers after checking they are within 1e-6.
// Returns false if some integer variable is fractional.
bool RoundIntegral(const std::vector<double>& raw, std::vector<long long>& out);

}  // namespace uam::milp
