#pragma once

// Lagrangian dual decomposition of the joint model: C8 (the only constraint
// coupling routing with repositioning) is dualized with multipliers
// alpha[s][t][v] >= 0, splitting the Lagrangian into a repositioning slave
// (x, y, a, b) and a routing slave (z, sigma). Multipliers follow a projected
// subgradient step; a feasible primal is extracted each iteration by fixing
// the routing slave's z and re-optimizing repositioning.
//
// Sign conventions: the dual machinery works in the minimization frame of
// the Lagrangian (slave values rho1, rho2, and the gap trace); user-facing
// results are max-frame profits.

#include <vector>

#include "drrpvt/model.hpp"
#include "drrpvt/tensor.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

struct GammaSchedule {
  double gamma0 = 1.0;
  double decay_iterations = 50.0;  // gamma_k = gamma0 / (1 + k/decay)
  double at(int k) const { return gamma0 / (1.0 + k / decay_iterations); }
};

struct LddParams {
  GammaSchedule gamma;
  // Terminate when best_primal - best_dual (minimization frame) drops to
  // delta_rel * |best primal|, with an absolute floor for zero-profit cases.
  double delta_rel = 0.01;
  double delta_abs = 1e-9;
  int max_iterations = 500;
  PlanMode mode = PlanMode::Joint;
  // Per-slave-solve budget. A slave stopped at the limit still yields a
  // valid dual value (its best bound) and a feasible plan (its incumbent);
  // small instances never hit it.
  SolverOptions solver = []{
    SolverOptions s;
    s.time_limit_seconds = 10.0;
    return s;
  }();
  MilpBuildOptions build;
};

struct DualState {
  Tensor3<double> alpha;  // [s][t][v], >= 0
  double gamma = 0.0;
  double delta = 0.0;
  int iteration = 0;
  double rho1 = 0.0;          // repositioning slave value (min frame)
  double rho2 = 0.0;          // routing slave value (min frame)
  double primal_value = 0.0;  // extracted primal (min frame)
  double best_primal = 0.0;   // min frame envelope
  double best_dual = 0.0;     // min frame envelope
};

struct GapTracePoint {
  int iteration = 0;
  double dual = 0.0;    // rho1 + rho2 for this iteration (min frame)
  double primal = 0.0;  // extracted primal this iteration (min frame)
  double gap = 0.0;     // best-so-far envelope gap, non-increasing
};

struct LddResult {
  Solution solution;          // best feasible primal
  double primal_value = 0.0;  // its profit (max frame)
  double dual_bound = 0.0;    // certified upper bound on profit (max frame)
  std::vector<GapTracePoint> gap_trace;
  int iterations_used = 0;
  bool converged = false;
};

struct RepositionSlaveResult {
  double rho1 = 0.0;  // min frame
  Solution plan;      // x, y, a, b, d#, d*; z and sigma are idle
};

struct RoutingSlaveResult {
  double rho2 = 0.0;  // min frame
  Tensor4<int> z;     // [s][s'][v][t]
  Tensor3<int> sigma; // [v][s][t], 0..T
};

struct PrimalExtraction {
  double profit = 0.0;  // max frame: extraction value minus routing cost
  Solution solution;    // full feasible solution including the fixed routes
};

RepositionSlaveResult solve_reposition_slave(const ProblemInstance& instance,
                                             const Tensor3<double>& alpha,
                                             const LddParams& params = {});

RoutingSlaveResult solve_routing_slave(const ProblemInstance& instance,
                                       const Tensor3<double>& alpha,
                                       const LddParams& params = {});

// alpha'[s][t][v] = max(0, alpha + gamma*(y+ + y- - C* sum_s' z)).
Tensor3<double> update_duals(const Tensor3<double>& alpha, double gamma,
                             const Tensor3<int>& y_plus,
                             const Tensor3<int>& y_minus,
                             const Tensor4<int>& z,
                             const std::vector<int>& vehicle_capacities);

PrimalExtraction extract_primal(const ProblemInstance& instance,
                                const Tensor4<int>& z,
                                const Tensor3<int>& sigma,
                                const LddParams& params = {});

LddResult run_ldd(const ProblemInstance& instance, const LddParams& params = {});

// CSV export of the duality-gap trace: iteration,dual,primal,gap.
std::string gap_trace_csv(const std::vector<GapTracePoint>& trace);

}  // namespace drrpvt
