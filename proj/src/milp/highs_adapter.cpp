#include "uamfleet/milp/highs_adapter.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <unordered_map>

#include "Highs.h"
#include "uamfleet/csv.hpp"
#include "uamfleet/errors.hpp"
#include "uamfleet/milp/lp_writer.hpp"

namespace uam::milp {

namespace {

HighsLp ToHighsLp(const MilpModel& model) {
  HighsLp lp;
  const auto& vars = model.variables();
  lp.num_col_ = static_cast<HighsInt>(vars.size());
  lp.num_row_ = static_cast<HighsInt>(model.constraints().size());
  lp.sense_ = ObjSense::kMinimize;
  lp.offset_ = model.objective_offset();
  lp.col_cost_.assign(vars.size(), 0.0);
  for (const auto& t : model.objective()) lp.col_cost_[static_cast<std::size_t>(t.var)] += t.coef;
  bool any_integer = false;
  for (const auto& v : vars) {
    lp.col_lower_.push_back(v.lower);
    lp.col_upper_.push_back(std::isfinite(v.upper) ? v.upper : kHighsInf);
    lp.integrality_.push_back(v.integer ? HighsVarType::kInteger : HighsVarType::kContinuous);
    any_integer = any_integer || v.integer;
  }
  if (!any_integer) lp.integrality_.clear();

  // Merge repeated terms per row, then transpose into column-wise storage.
  std::vector<std::vector<std::pair<HighsInt, double>>> columns(vars.size());
  const auto& rows = model.constraints();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& c = rows[r];
    std::unordered_map<int, double> merged;
    std::vector<int> order;
    for (const auto& t : c.terms) {
      auto [it, inserted] = merged.emplace(t.var, 0.0);
      if (inserted) order.push_back(t.var);
      it->second += t.coef;
    }
    for (int var : order) {
      if (merged[var] != 0.0) columns[static_cast<std::size_t>(var)].emplace_back(static_cast<HighsInt>(r), merged[var]);
    }
    switch (c.sense) {
      case Sense::kLessEqual:
        lp.row_lower_.push_back(-kHighsInf);
        lp.row_upper_.push_back(c.rhs);
        break;
      case Sense::kGreaterEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(kHighsInf);
        break;
      case Sense::kEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(c.rhs);
        break;
    }
  }
  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kColwise;
  a.num_col_ = lp.num_col_;
  a.num_row_ = lp.num_row_;
  a.start_.assign(1, 0);
  for (const auto& col : columns) {
    for (const auto& [row, value] : col) {
      a.index_.push_back(row);
      a.value_.push_back(value);
    }
    a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
  }
  return lp;
}

bool IsMip(const MilpModel& model) {
  for (const auto& v : model.variables()) {
    if (v.integer) return true;
  }
  return false;
}

}  // namespace

HighsAdapter::HighsAdapter(Input input, std::string scratch_dir)
    : input_(input), scratch_dir_(std::move(scratch_dir)) {}

std::string HighsAdapter::name() const {
  return input_ == Input::kLpFile ? "highs-lp" : "highs";
}

Solution HighsAdapter::Solve(const MilpModel& model, const SolverLimits& limits,
                             const std::vector<long long>* start) {
  const auto started = std::chrono::steady_clock::now();
  Solution result;
  Highs highs;
  highs.setOptionValue("output_flag", limits.verbose);
  highs.setOptionValue("log_to_console", limits.verbose);
  highs.setOptionValue("time_limit", limits.time_limit_seconds);
  highs.setOptionValue("mip_rel_gap", limits.relative_gap);
  highs.setOptionValue("threads", static_cast<HighsInt>(std::max(1, limits.threads)));
  highs.setOptionValue("random_seed", static_cast<HighsInt>(0));
  if (limits.interior_point) highs.setOptionValue("mip_lp_solver", std::string("ipm"));

  const bool mip = IsMip(model);
  std::vector<int> column_to_var;
  if (input_ == Input::kInMemory) {
    if (highs.passModel(ToHighsLp(model)) == HighsStatus::kError) {
      throw SolverError("HiGHS rejected the model");
    }
  } else {
    namespace fs = std::filesystem;
    static std::atomic<unsigned> counter{0};
    const fs::path dir = scratch_dir_.empty() ? fs::temp_directory_path() : fs::path(scratch_dir_);
    const fs::path path =
        dir / ("uamfleet_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".lp");
    csv::WriteFile(path.string(), WriteLp(model));
    const HighsStatus read = highs.readModel(path.string());
    std::error_code ec;
    fs::remove(path, ec);
    if (read == HighsStatus::kError) throw SolverError("HiGHS could not read LP file " + path.string());
    std::unordered_map<std::string, int> by_name;
    for (std::size_t v = 0; v < model.variables().size(); ++v) {
      by_name.emplace(model.variables()[v].key.Name(), static_cast<int>(v));
    }
    const auto& names = highs.getLp().col_names_;
    column_to_var.assign(names.size(), -1);
    for (std::size_t c = 0; c < names.size(); ++c) {
      auto it = by_name.find(names[c]);
      if (it == by_name.end()) throw SolverError("LP file column " + names[c] + " is not in the model");
      column_to_var[c] = it->second;
    }
  }

  if (start != nullptr) {
    if (start->size() != model.variables().size()) throw SolverError("start point has the wrong size");
    HighsSolution point;
    point.value_valid = true;
    point.col_value.assign(model.variables().size(), 0.0);
    for (std::size_t c = 0; c < point.col_value.size(); ++c) {
      const auto v = column_to_var.empty() ? c : static_cast<std::size_t>(column_to_var[c]);
      point.col_value[c] = static_cast<double>((*start)[v]);
    }
    // A rejected start is not fatal; the solve just begins without it.
    highs.setSolution(point);
  }

  if (mip && limits.stop_when_integer_part_proven) {
    highs.setCallback(
        [](int, const std::string&, const HighsCallbackOutput* out, HighsCallbackInput* in,
           void* data) {
          const auto& m = *static_cast<const MilpModel*>(data);
          if (out->mip_primal_bound < kHighsInf &&
              IntegerPartProven(m, out->mip_primal_bound, out->mip_dual_bound)) {
            in->user_interrupt = true;
          }
        },
        const_cast<MilpModel*>(&model));
    highs.startCallback(kCallbackMipInterrupt);
  }

  const HighsStatus run = highs.run();
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (run == HighsStatus::kError) {
    result.status = SolveStatus::kError;
    result.message = "HiGHS run failed: " + highs.modelStatusToString(highs.getModelStatus());
    return result;
  }

  const HighsModelStatus status = highs.getModelStatus();
  const HighsInfo& info = highs.getInfo();
  const bool has_solution = info.primal_solution_status == kSolutionStatusFeasible;
  result.message = highs.modelStatusToString(status);

  if (status == HighsModelStatus::kInfeasible) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  if (!has_solution) {
    result.status = (status == HighsModelStatus::kTimeLimit) ? SolveStatus::kTimedOut
                                                             : SolveStatus::kError;
    return result;
  }

  result.objective_value = info.objective_function_value;
  result.dual_bound = mip ? info.mip_dual_bound : info.objective_function_value;
  const double abs_gap = std::max(0.0, result.objective_value - result.dual_bound);
  result.gap = mip ? abs_gap / std::max(1.0, std::abs(result.objective_value)) : 0.0;
  const bool closed = !mip || abs_gap <= 1e-9 * std::max(1.0, std::abs(result.objective_value));
  result.status = (status == HighsModelStatus::kOptimal && closed) ? SolveStatus::kOptimal
                                                                   : SolveStatus::kFeasible;
  result.integer_part_proven = IntegerPartProven(model, result.objective_value, result.dual_bound);

  const auto& col_value = highs.getSolution().col_value;
  std::vector<double> raw(model.variables().size(), 0.0);
  if (column_to_var.empty()) {
    for (std::size_t c = 0; c < raw.size() && c < col_value.size(); ++c) raw[c] = col_value[c];
  } else {
    for (std::size_t c = 0; c < column_to_var.size() && c < col_value.size(); ++c) {
      raw[static_cast<std::size_t>(column_to_var[c])] = col_value[c];
    }
  }
  if (mip) {
    if (!RoundIntegral(raw, result.values)) {
      result.status = SolveStatus::kError;
      result.message = "solver returned fractional values for integer variables";
      return result;
    }
    // Report the objective of the rounded point.
    result.objective_value = EvaluateObjective(model, result.values);
  } else {
    RoundIntegral(raw, result.values);
  }
  return result;
}

}  // namespace uam::milp
