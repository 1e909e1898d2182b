#pragma once

// Rolling-horizon simulation: per epoch, plan with a policy, realize sampled
// demand, serve departures while bikes last, land arrivals with full-station
// redirection, and advance state. Within an epoch the phase order is:
// (1) vehicle/trailer pickups, (2) departures served pro-rata by realized OD
// counts, (3) dropoffs, (4) in-transit arrivals land (redirecting from full
// stations), then vehicles move.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drrpvt/incentives.hpp"
#include "drrpvt/ldd.hpp"
#include "drrpvt/model.hpp"
#include "drrpvt/tensor.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

struct SystemState {
  int epoch = 0;
  std::vector<int> station_bikes;
  std::vector<int> vehicle_loads;
  std::vector<int> vehicle_positions;  // station index
  struct Transit {
    int destination = 0;
    int arrival_epoch = 0;
    int count = 0;
  };
  std::vector<Transit> in_transit;

  static SystemState initial(const ProblemInstance& instance);
  long total_bikes() const;
};

// One epoch of decisions at concrete stations.
struct PlanSlice {
  Tensor2<int> y_plus, y_minus;  // [s][v]
  Tensor3<int> z;                // [s][s'][v]
  Tensor2<int> a_plus, a_minus;  // [s][w]
  Tensor3<int> b;                // [s][s'][w]

  static PlanSlice empty(int S, int V, int W);
  static PlanSlice from_solution(const Solution& sol, int t);
};

struct EpochMetrics {
  int epoch = 0;
  int requested = 0;
  int served = 0;
  int lost = 0;
  int redirected = 0;
  double revenue = 0.0;
  double routing_cost = 0.0;
  double trailer_payments = 0.0;
};

struct ScatterPoint {
  int station = 0;
  int epoch = 0;
  int actual = 0;
  int served = 0;
};

// Executes one epoch. Throws Error listing violations when the slice cannot
// be executed against the state. Pure: the input state is left untouched.
std::pair<SystemState, EpochMetrics> step(const ProblemInstance& instance,
                                          const SystemState& state,
                                          const PlanSlice& slice,
                                          const Tensor2<int>& realized);

enum class Policy { Drrpvt, Drrpv, Drrpt, Noop };
enum class Planner { Auto, ExactMilp, Ldd, ClusteredLdd };

struct PolicyConfig {
  Policy policy = Policy::Drrpvt;
  Planner planner = Planner::Auto;
  int lookahead = 2;  // planning horizon per epoch
  int k = 0;          // clusters; 0 picks ceil(S/5)
  LddParams ldd;
  SolverOptions milp;
  bool run_auction = true;
  int bidders_per_task = 3;
};

struct SimulationReport {
  std::string policy;
  uint64_t seed = 0;
  std::vector<EpochMetrics> per_epoch;
  std::vector<ScatterPoint> scatter;
  int total_requested = 0;
  int total_served = 0;
  int total_lost = 0;
  double total_revenue = 0.0;
  double total_routing_cost = 0.0;
  double total_trailer_payments = 0.0;
  double profit = 0.0;  // revenue - routing - payments
};

SimulationReport run_policy(const ProblemInstance& instance,
                            const PolicyConfig& config, uint64_t seed);

struct CompareMetrics {
  std::optional<double> g_v, g_t, l_v, l_t;
};

// G_v = (U_vt - U_v)/U_v, G_t = (U_vt - U_t)/U_t, L_v = (E_vt - E_v)/E_v,
// L_t = (E_vt - E_t)/E_t; zero denominators yield empty optionals.
CompareMetrics compare_metrics(double u_vt, double u_v, double u_t,
                               double e_vt, double e_v, double e_t);

std::string report_epoch_csv(const SimulationReport& report);
std::string report_scatter_csv(const SimulationReport& report);
std::string policy_name(Policy policy);

}  // namespace drrpvt
