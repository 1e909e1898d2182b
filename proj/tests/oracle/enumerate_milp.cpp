#include "enumerate_milp.hpp"

#include <cassert>
#include <cmath>
#include <vector>

namespace drrpvt::testing {

std::optional<double> enumerate_milp_optimum(const MilpProblem& problem) {
  int n = problem.n_vars;
  std::vector<long> lo(n), hi(n), x(n);
  for (int j = 0; j < n; ++j) {
    assert(problem.integrality[j]);
    lo[j] = std::lround(problem.lower[j]);
    hi[j] = std::lround(problem.upper[j]);
    x[j] = lo[j];
  }

  std::optional<double> best;
  bool maximize = problem.sense == Sense::Maximize;
  while (true) {
    bool feasible = true;
    for (const auto& row : problem.constraints) {
      double lhs = 0.0;
      for (const auto& term : row.terms) lhs += term.coef * x[term.var];
      switch (row.relation) {
        case Relation::LessEqual:
          feasible = lhs <= row.rhs + 1e-9;
          break;
        case Relation::GreaterEqual:
          feasible = lhs >= row.rhs - 1e-9;
          break;
        case Relation::Equal:
          feasible = std::abs(lhs - row.rhs) <= 1e-9;
          break;
      }
      if (!feasible) break;
    }
    if (feasible) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += problem.objective[j] * x[j];
      if (!best || (maximize ? v > *best : v < *best)) best = v;
    }
    // Advance the odometer.
    int j = 0;
    while (j < n && ++x[j] > hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == n) break;
  }
  return best;
}

}  // namespace drrpvt::testing
