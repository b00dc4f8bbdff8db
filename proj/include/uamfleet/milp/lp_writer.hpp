#pragma once

#include <string>

#include "uamfleet/milp/model.hpp"

namespace uam::milp {

// CPLEX LP text. Variables and terms are ordered by key (kind, then
// indices); constraints keep their build order. Identical models give
// byte-identical text.
std::string WriteLp(const MilpModel& model);

}  // namespace uam::milp
