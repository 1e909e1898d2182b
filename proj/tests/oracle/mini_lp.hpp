#pragma once

// Test-only LP oracle, independent of the production solver: a textbook
// two-phase standard-form simplex with Bland's rule everywhere. Maximizes
// c.x subject to A x <= b, x >= 0. Callers encode equalities as opposing
// inequalities and upper bounds as rows. Slow on purpose; only used on tiny
// problems to cross-check drrpvt::solve_lp and to price the continuous part
// of brute-force enumerations.

#include <vector>

namespace drrpvt::testing {

struct MiniLpResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
};

MiniLpResult mini_lp_max(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& a,
                         const std::vector<double>& b);

}  // namespace drrpvt::testing
