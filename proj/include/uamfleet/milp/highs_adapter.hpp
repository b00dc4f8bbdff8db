#pragma once

#include <string>
#include <vector>

#include "uamfleet/milp/model.hpp"

namespace uam::milp {

// HiGHS branch-and-cut. Each Solve() uses a fresh solver instance.
class HighsAdapter : public SolverAdapter {
 public:
  enum class Input { kInMemory, kLpFile };

  explicit HighsAdapter(Input input = Input::kInMemory, std::string scratch_dir = "");

  std::string name() const override;
  bool reads_lp_files() const override { return input_ == Input::kLpFile; }
  Solution Solve(const MilpModel& model, const SolverLimits& limits,
                 const std::vector<long long>* start = nullptr) override;

 private:
  Input input_;
  std::string scratch_dir_;
};

}  // namespace uam::milp
