#pragma once

// Brute-force oracle for tiny DRRPVT instances: exhaustive depth-first
// enumeration of the integer decisions (vehicle moves with pickups and
// dropoffs, trailer tasks with quantities), with the continuous hired-bike
// flows priced at each leaf by the independent mini_lp simplex. Never touches
// build_milp or solve_milp, which is the point.

#include <optional>

#include "drrpvt/tensor.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt::testing {

// Inputs for pricing the continuous flows once every integer decision is
// fixed: per-station/epoch net repositioning plus the stock/space the fixed
// pickups and dropoffs require (C15 and C10 folded to their binding values).
struct FlowPricingInput {
  const ProblemInstance* instance = nullptr;
  Tensor2<int> net;           // [s][t] dropoffs minus pickups
  Tensor2<double> stock_need; // [s][t] required d_sharp lower bound
  Tensor2<double> space_need; // [s][t] required free docks
};

// max sum R.x subject to C1, C2 and the d_sharp corridor; nullopt when no
// flow assignment is feasible. Revenue only; decision costs are the
// caller's.
std::optional<double> price_flows(const FlowPricingInput& input);

struct BruteForceResult {
  bool feasible = false;
  double value = 0.0;
  long leaves = 0;
};

// Exact optimum of the joint model for instances with at most one vehicle
// and one trailer. Dominance prunes that preserve the optimum: parked
// vehicles are replaced by free self-loops, and gross pickup+dropoff pairs
// are enumerated with min(y+, y-) = 0.
BruteForceResult brute_force_optimum(const ProblemInstance& instance);

}  // namespace drrpvt::testing
