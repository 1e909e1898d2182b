#pragma once

// Self-contained exact solver for small bounded mixed-integer linear
// programs: two-phase primal simplex on a dense tableau for the relaxation,
// plus best-bound branch-and-bound. Oracle-grade by intent: no cuts, no
// presolve, no warm starts.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace drrpvt {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct RowConstraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

struct MilpProblem {
  int n_vars = 0;
  Sense sense = Sense::Maximize;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<uint8_t> integrality;  // 1 = integer-constrained
  std::vector<RowConstraint> constraints;
  std::vector<std::string> var_names;  // optional; empty or n_vars entries

  int add_var(double lo, double hi, double obj, bool integer,
              std::string name = {});
  void add_constraint(std::vector<LinearTerm> terms, Relation relation,
                      double rhs, std::string name = {});
  // Throws Error if bounds are not finite, lo > hi, a row references an
  // unknown variable, or an integer variable has non-integral bounds.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

struct SolverOptions {
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  double gap_tol = 1e-6;  // absolute optimality gap
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  int64_t node_limit = -1;   // < 0 means unlimited
  int64_t pivot_limit = -1;  // < 0 picks a size-based default
  // Use the OpenMP elimination kernel once the tableau is large enough;
  // results are bit-identical to the serial kernel either way.
  bool parallel_pivot = true;
  // Dichotomy branching on selection rows (sum of binaries == 1); falls
  // back to most-fractional single-variable branching elsewhere.
  bool gub_branching = true;
  // After branching, dive into one child until the dive dies, then resume
  // from the best open bound.
  bool plunge = true;
  // Tie-break among equal bounds: newest node first (depth-seeking) or
  // oldest first (breadth-seeking).
  bool newest_ties = true;
};

struct LpResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  // empty when infeasible
  double value = 0.0;
  int64_t pivots = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> incumbent;  // empty when none found
  double incumbent_value = 0.0;
  double best_bound = 0.0;
  int64_t node_count = 0;
  double wall_time_seconds = 0.0;

  bool has_incumbent() const { return !incumbent.empty(); }
};

// Solves the LP relaxation (integrality ignored). Deterministic: Dantzig
// pricing with an automatic switch to Bland's rule after a degenerate stall.
LpResult solve_lp(const MilpProblem& problem, const SolverOptions& options = {});

// Best-bound branch-and-bound over solve_lp. Branches on the most fractional
// integer variable, ties broken by lowest index. Resource exhaustion (time or
// node limit) returns TimeLimit with the best incumbent and a valid bound.
SolveResult solve_milp(const MilpProblem& problem,
                       const SolverOptions& options = {});

}  // namespace drrpvt
