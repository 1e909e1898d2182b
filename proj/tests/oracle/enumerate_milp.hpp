#pragma once

// Exhaustive oracle for small all-integer MilpProblems: walks the full
// bound box and keeps the best feasible objective. Independent of the
// branch-and-bound path it is used to check.

#include <optional>

#include "drrpvt/milp.hpp"

namespace drrpvt::testing {

// Requires every variable to be integer-flagged; returns nullopt when the
// problem is infeasible.
std::optional<double> enumerate_milp_optimum(const MilpProblem& problem);

}  // namespace drrpvt::testing
