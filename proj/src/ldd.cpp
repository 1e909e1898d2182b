#include "drrpvt/ldd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "drrpvt/error.hpp"

namespace drrpvt {

namespace {

Tensor3<double> zero_alpha(const ProblemInstance& in) {
  return Tensor3<double>(in.num_stations(), in.horizon, in.num_vehicles());
}

void require_alpha(const ProblemInstance& in, const Tensor3<double>& alpha) {
  if (alpha.dim0() != in.num_stations() || alpha.dim1() != in.horizon ||
      alpha.dim2() != in.num_vehicles()) {
    throw Error("dimension_mismatch", "alpha must be [stations][epochs][vehicles]",
                {{"tensor", "alpha"}});
  }
  for (double a : alpha.data()) {
    if (a < 0.0) throw Error("ldd_alpha", "alpha must be nonnegative");
  }
}

}  // namespace

RepositionSlaveResult solve_reposition_slave(const ProblemInstance& instance,
                                             const Tensor3<double>& alpha,
                                             const LddParams& params) {
  require_alpha(instance, alpha);
  ModelMilp built =
      build_reposition_slave_milp(instance, alpha, params.mode, params.build);
  SolveResult res = solve_milp(built.problem, params.solver);
  if (!res.has_incumbent()) {
    throw Error("ldd_slave",
                "repositioning slave found no feasible plan; the instance "
                "admits no repositioning at all",
                {{"status", std::to_string(int(res.status))}});
  }
  RepositionSlaveResult out;
  // The bound stays a valid Lagrangian lower bound even when a per-solve
  // time limit stops the search early; the incumbent feeds the subgradient.
  out.rho1 = res.best_bound;
  out.plan = decode_solution(instance, built.layout, res.incumbent);
  return out;
}

RoutingSlaveResult solve_routing_slave(const ProblemInstance& instance,
                                       const Tensor3<double>& alpha,
                                       const LddParams& params) {
  require_alpha(instance, alpha);
  int S = instance.num_stations(), V = instance.num_vehicles(),
      T = instance.horizon;
  RoutingSlaveResult out;
  out.z = Tensor4<int>(S, S, V, T);
  out.sigma = Tensor3<int>(V, S, T + 1);
  if (V == 0 || params.mode == PlanMode::TrailersOnly) {
    // No routing decisions: rho2 = 0 with everything parked.
    for (int v = 0; v < V; ++v) {
      int home = instance.station_index(instance.vehicles[v].initial_station);
      for (int t = 0; t <= T; ++t) out.sigma(v, home, t) = 1;
    }
    return out;
  }
  ModelMilp built = build_routing_slave_milp(instance, alpha);
  SolveResult res = solve_milp(built.problem, params.solver);
  if (!res.has_incumbent()) {
    throw Error("ldd_slave", "routing slave found no feasible routing");
  }
  out.rho2 = res.best_bound;
  const VarLayout& L = built.layout;
  for (int s = 0; s < S; ++s)
    for (int s2 = 0; s2 < S; ++s2)
      for (int v = 0; v < V; ++v)
        for (int t = 0; t < T; ++t)
          out.z(s, s2, v, t) =
              static_cast<int>(std::lround(res.incumbent[L.z(s, s2, v, t)]));
  for (int v = 0; v < V; ++v)
    for (int s = 0; s < S; ++s)
      for (int t = 0; t <= T; ++t)
        out.sigma(v, s, t) =
            static_cast<int>(std::lround(res.incumbent[L.sigma(v, s, t)]));
  return out;
}

Tensor3<double> update_duals(const Tensor3<double>& alpha, double gamma,
                             const Tensor3<int>& y_plus,
                             const Tensor3<int>& y_minus,
                             const Tensor4<int>& z,
                             const std::vector<int>& vehicle_capacities) {
  int S = alpha.dim0(), T = alpha.dim1(), V = alpha.dim2();
  Tensor3<double> next(S, T, V);
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < T; ++t) {
      for (int v = 0; v < V; ++v) {
        double routed = 0.0;
        for (int s2 = 0; s2 < S; ++s2) routed += z(s, s2, v, t);
        double subgradient = y_plus(s, v, t) + y_minus(s, v, t) -
                             vehicle_capacities[v] * routed;
        next(s, t, v) = std::max(0.0, alpha(s, t, v) + gamma * subgradient);
      }
    }
  }
  return next;
}

PrimalExtraction extract_primal(const ProblemInstance& instance,
                                const Tensor4<int>& z,
                                const Tensor3<int>& sigma,
                                const LddParams& params) {
  int S = instance.num_stations(), V = instance.num_vehicles(),
      T = instance.horizon;
  Tensor3<int> z_bar(S, V, T);
  double routing_cost = 0.0;
  for (int s = 0; s < S; ++s)
    for (int v = 0; v < V; ++v)
      for (int t = 0; t < T; ++t) {
        int routed = 0;
        for (int s2 = 0; s2 < S; ++s2) {
          routed += z(s, s2, v, t);
          routing_cost += instance.economics.P(s, s2) * z(s, s2, v, t);
        }
        z_bar(s, v, t) = routed;
      }

  ModelMilp built =
      build_extraction_milp(instance, z_bar, params.mode, params.build);
  SolveResult res = solve_milp(built.problem, params.solver);
  if (!res.has_incumbent()) {
    throw Error("ldd_extract", "primal extraction failed; the all-zero "
                               "repositioning plan should always be feasible");
  }
  PrimalExtraction out;
  out.solution = decode_solution(instance, built.layout, res.incumbent);
  // Stitch the fixed routing back into the full solution.
  out.solution.z = z;
  out.solution.sigma = sigma;
  out.profit = res.incumbent_value - routing_cost;
  return out;
}

LddResult run_ldd(const ProblemInstance& instance, const LddParams& params) {
  instance.validate();
  if (params.delta_rel < 0.0 || params.max_iterations < 1) {
    throw Error("ldd_params", "delta must be nonnegative and at least one "
                              "iteration is required");
  }
  Tensor3<double> alpha = zero_alpha(instance);
  std::vector<int> caps;
  for (const auto& v : instance.vehicles) caps.push_back(v.capacity);

  LddResult result;
  double best_dual = -1e300;        // min frame lower bound
  double best_primal_min = 1e300;   // min frame feasible value
  bool have_primal = false;

  for (int k = 0; k < params.max_iterations; ++k) {
    RepositionSlaveResult rs = solve_reposition_slave(instance, alpha, params);
    RoutingSlaveResult rt = solve_routing_slave(instance, alpha, params);
    // Dual additivity: the Lagrangian value is exactly rho1 + rho2.
    double dual = rs.rho1 + rt.rho2;
    best_dual = std::max(best_dual, dual);

    alpha = update_duals(alpha, params.gamma.at(k), rs.plan.y_plus,
                         rs.plan.y_minus, rt.z, caps);

    PrimalExtraction ex = extract_primal(instance, rt.z, rt.sigma, params);
    double primal_min = -ex.profit;
    if (!have_primal || primal_min < best_primal_min - 1e-12) {
      // Strict improvement keeps the first-found solution on ties.
      best_primal_min = primal_min;
      result.solution = std::move(ex.solution);
      have_primal = true;
    }

    double gap = best_primal_min - best_dual;
    result.gap_trace.push_back({k, dual, primal_min, gap});
    result.iterations_used = k + 1;
    double threshold =
        std::max(params.delta_abs, params.delta_rel * std::abs(best_primal_min));
    if (gap <= threshold) {
      result.converged = true;
      break;
    }
  }

  result.primal_value = -best_primal_min;
  result.dual_bound = -best_dual;
  return result;
}

std::string gap_trace_csv(const std::vector<GapTracePoint>& trace) {
  std::string out = "iteration,dual,primal,gap\n";
  char line[128];
  for (const auto& p : trace) {
    std::snprintf(line, sizeof line, "%d,%.9g,%.9g,%.9g\n", p.iteration,
                  p.dual, p.primal, p.gap);
    out += line;
  }
  return out;
}

}  // namespace drrpvt
