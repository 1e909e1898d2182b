#pragma once

// The DRRPVT optimization model: profit objective, constraint checking
// (C1-C15), trailer task values, and MILP assembly for the joint problem,
// the two restricted baselines, and the decomposition's slave/extraction
// programs.

#include <vector>

#include "drrpvt/milp.hpp"
#include "drrpvt/tensor.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

enum class PlanMode { Joint, VehiclesOnly, TrailersOnly };

struct MilpBuildOptions {
  // Adds joint per-station pickup/dropoff caps so every epoch slice of the
  // plan can be executed phase by phase against live state. Not part of the
  // C1-C15 contract; used by the rolling-horizon planner.
  bool physical_caps = false;
  // C4 budget per epoch instead of per horizon.
  bool per_epoch_budget = false;
};

// Variable block offsets of an assembled MILP. Absent blocks have offset -1.
struct VarLayout {
  bool with_demand = false, with_vehicles = false, with_routing = false,
       with_trailers = false;
  int S = 0, V = 0, W = 0, T = 0;
  int x0 = -1, yp0 = -1, ym0 = -1, z0 = -1, ap0 = -1, am0 = -1, b0 = -1,
      ds0 = -1, dv0 = -1, sg0 = -1;
  int total = 0;

  int x(int s, int s2, int t) const { return x0 + (s * S + s2) * T + t; }
  int y_plus(int s, int v, int t) const { return yp0 + (s * V + v) * T + t; }
  int y_minus(int s, int v, int t) const { return ym0 + (s * V + v) * T + t; }
  int z(int s, int s2, int v, int t) const {
    return z0 + ((s * S + s2) * V + v) * T + t;
  }
  int a_plus(int s, int w, int t) const { return ap0 + (s * W + w) * T + t; }
  int a_minus(int s, int w, int t) const { return am0 + (s * W + w) * T + t; }
  int b(int s, int s2, int w, int t) const {
    return b0 + ((s * S + s2) * W + w) * T + t;
  }
  int d_sharp(int s, int t) const { return ds0 + s * (T + 1) + t; }
  int d_star(int v, int t) const { return dv0 + v * (T + 1) + t; }
  int sigma(int v, int s, int t) const { return sg0 + (v * S + s) * (T + 1) + t; }
};

struct ModelMilp {
  MilpProblem problem;
  VarLayout layout;
  Tensor3<double> task_values;  // P-hat actually priced into the objective
};

// P-hat for one epoch given concrete station stocks:
// value(s,s') = xi * max(0, F[s][s'][t] - d_sharp_t[s]).
Tensor2<double> trailer_task_values(const ProblemInstance& instance,
                                    const std::vector<double>& d_sharp_t,
                                    int t);

// P-hat over the whole horizon as priced by planning and the objective;
// every epoch is valued against the known stocks at t = 0.
Tensor3<double> task_values_for_planning(const ProblemInstance& instance);

// Profit: sum R.x - sum P.z - sum b.P-hat. Throws Error naming the offending
// tensor on dimension mismatch.
double evaluate_objective(const ProblemInstance& instance, const Solution& sol);

struct CheckOptions {
  bool per_epoch_budget = false;
};

// Empty result iff sol satisfies C1-C15 within tol (absolute, absorbing
// float noise in the real-valued x and d_sharp).
std::vector<ConstraintViolation> check_solution(const ProblemInstance& instance,
                                                const Solution& sol,
                                                double tol = 1e-6,
                                                const CheckOptions& opts = {});

// C3 validator: compares externally supplied task values against the
// formula evaluated at the instance's initial stocks.
std::vector<ConstraintViolation> check_task_values(
    const ProblemInstance& instance, const Tensor3<double>& task_values);

// The full profit-maximization MILP. VehiclesOnly drops the trailer blocks,
// TrailersOnly drops the vehicle blocks; either restriction projects into
// the joint feasible set.
ModelMilp build_milp(const ProblemInstance& instance, PlanMode mode,
                     const MilpBuildOptions& opts = {});

// Decomposition pieces. alpha is indexed [s][t][v] and must be >= 0.
// Repositioning slave: min -R.x + alpha.(y+ + y-) + P-hat.b over C1-C5,
// C9-C15 (no z). Routing slave: min (P - C*.alpha).z over C6, C7 and the z
// domain. Extraction: max R.x - P-hat.b with y+ + y- <= C* . zbar.
ModelMilp build_reposition_slave_milp(const ProblemInstance& instance,
                                      const Tensor3<double>& alpha,
                                      PlanMode mode,
                                      const MilpBuildOptions& opts = {});
ModelMilp build_routing_slave_milp(const ProblemInstance& instance,
                                   const Tensor3<double>& alpha);
ModelMilp build_extraction_milp(const ProblemInstance& instance,
                                const Tensor3<int>& z_bar,  // [s][v][t]
                                PlanMode mode,
                                const MilpBuildOptions& opts = {});

// Assignment <-> Solution. decode rounds integer blocks and fills blocks the
// layout lacks with their do-nothing values.
Solution decode_solution(const ProblemInstance& instance,
                         const VarLayout& layout,
                         const std::vector<double>& assignment);
std::vector<double> encode_solution(const ProblemInstance& instance,
                                    const VarLayout& layout,
                                    const Solution& sol);

}  // namespace drrpvt
