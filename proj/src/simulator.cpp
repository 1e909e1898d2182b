#include "drrpvt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "drrpvt/clustering.hpp"
#include "drrpvt/demand.hpp"
#include "drrpvt/error.hpp"
#include "drrpvt/rng.hpp"

namespace drrpvt {

SystemState SystemState::initial(const ProblemInstance& in) {
  SystemState st;
  st.epoch = 0;
  for (const auto& s : in.stations) st.station_bikes.push_back(s.initial_bikes);
  for (const auto& v : in.vehicles) {
    st.vehicle_loads.push_back(v.initial_load);
    st.vehicle_positions.push_back(in.station_index(v.initial_station));
  }
  return st;
}

long SystemState::total_bikes() const {
  long total = 0;
  for (int b : station_bikes) total += b;
  for (int l : vehicle_loads) total += l;
  for (const auto& tr : in_transit) total += tr.count;
  return total;
}

PlanSlice PlanSlice::empty(int S, int V, int W) {
  PlanSlice slice;
  slice.y_plus = Tensor2<int>(S, V);
  slice.y_minus = Tensor2<int>(S, V);
  slice.z = Tensor3<int>(S, S, V);
  slice.a_plus = Tensor2<int>(S, W);
  slice.a_minus = Tensor2<int>(S, W);
  slice.b = Tensor3<int>(S, S, W);
  return slice;
}

PlanSlice PlanSlice::from_solution(const Solution& sol, int t) {
  int S = sol.x.dim0(), V = sol.y_plus.dim1(), W = sol.a_plus.dim1();
  PlanSlice slice = empty(S, V, W);
  for (int s = 0; s < S; ++s) {
    for (int v = 0; v < V; ++v) {
      slice.y_plus(s, v) = sol.y_plus(s, v, t);
      slice.y_minus(s, v) = sol.y_minus(s, v, t);
      for (int s2 = 0; s2 < S; ++s2) slice.z(s, s2, v) = sol.z(s, s2, v, t);
    }
    for (int w = 0; w < W; ++w) {
      slice.a_plus(s, w) = sol.a_plus(s, w, t);
      slice.a_minus(s, w) = sol.a_minus(s, w, t);
      for (int s2 = 0; s2 < S; ++s2) slice.b(s, s2, w) = sol.b(s, s2, w, t);
    }
  }
  return slice;
}

std::pair<SystemState, EpochMetrics> step(const ProblemInstance& in,
                                          const SystemState& state,
                                          const PlanSlice& slice,
                                          const Tensor2<int>& realized) {
  int S = in.num_stations(), V = in.num_vehicles(), W = in.num_trailers();
  int epoch = state.epoch;
  std::vector<std::string> violations;

  std::vector<int> bikes = state.station_bikes;
  std::vector<int> loads = state.vehicle_loads;
  std::vector<int> pos = state.vehicle_positions;

  // Slice validation against live state.
  std::vector<int> move_dest(V, -1);
  for (int v = 0; v < V; ++v) {
    int routed = 0;
    for (int s = 0; s < S; ++s) {
      for (int s2 = 0; s2 < S; ++s2) {
        if (!slice.z(s, s2, v)) continue;
        ++routed;
        if (s != pos[v]) {
          violations.push_back("vehicle " + std::to_string(v) +
                               " routed from a station it is not at");
        }
        move_dest[v] = s2;
      }
    }
    if (routed > 1) {
      violations.push_back("vehicle " + std::to_string(v) +
                           " has multiple moves in one epoch");
    }
    int yp_total = 0, ym_total = 0;
    for (int s = 0; s < S; ++s) {
      int yp = slice.y_plus(s, v), ym = slice.y_minus(s, v);
      if ((yp || ym) && s != pos[v]) {
        violations.push_back("vehicle " + std::to_string(v) +
                             " repositions away from its station");
      }
      yp_total += yp;
      ym_total += ym;
    }
    if (yp_total + ym_total > 0 && routed == 0) {
      violations.push_back("vehicle " + std::to_string(v) +
                           " repositions while parked");
    }
    if (yp_total + ym_total > in.vehicles[v].capacity) {
      violations.push_back("vehicle " + std::to_string(v) +
                           " exceeds its per-visit handling capacity");
    }
    if (ym_total > loads[v] + yp_total ||
        loads[v] + yp_total - ym_total > in.vehicles[v].capacity) {
      violations.push_back("vehicle " + std::to_string(v) +
                           " load leaves [0, capacity]");
    }
  }
  for (int w = 0; w < W; ++w) {
    int tasks = 0, origin = -1, dest = -1;
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2)
        if (slice.b(s, s2, w)) {
          ++tasks;
          origin = s;
          dest = s2;
        }
    if (tasks > 1) {
      violations.push_back("trailer " + std::to_string(w) +
                           " has multiple tasks in one epoch");
    }
    int ap_total = 0, am_total = 0;
    for (int s = 0; s < S; ++s) {
      int ap = slice.a_plus(s, w), am = slice.a_minus(s, w);
      if (ap > 0 && s != origin) {
        violations.push_back("trailer " + std::to_string(w) +
                             " picks up outside its task origin");
      }
      if (am > 0 && s != dest) {
        violations.push_back("trailer " + std::to_string(w) +
                             " drops off outside its task destination");
      }
      ap_total += ap;
      am_total += am;
    }
    if (ap_total != am_total) {
      violations.push_back("trailer " + std::to_string(w) +
                           " does not return what it picked up");
    }
    if (ap_total > in.trailers[w].capacity) {
      violations.push_back("trailer " + std::to_string(w) +
                           " exceeds its capacity");
    }
    if (origin >= 0 && dest >= 0 &&
        in.distances.D(origin, dest) > in.trailers[w].max_distance_km + 1e-9) {
      violations.push_back("trailer " + std::to_string(w) +
                           " task exceeds its range");
    }
  }

  // Phase 1: pickups.
  for (int s = 0; s < S; ++s) {
    int total_pick = 0;
    for (int v = 0; v < V; ++v) total_pick += slice.y_plus(s, v);
    for (int w = 0; w < W; ++w) total_pick += slice.a_plus(s, w);
    if (total_pick > bikes[s]) {
      violations.push_back("pickups at station " + in.stations[s].id +
                           " exceed its stock");
    }
  }
  if (!violations.empty()) {
    Error::Context ctx;
    for (size_t i = 0; i < violations.size(); ++i) {
      ctx.push_back({"violation_" + std::to_string(i), violations[i]});
    }
    throw Error("infeasible_slice", "plan slice infeasible against state",
                std::move(ctx));
  }
  for (int s = 0; s < S; ++s) {
    for (int v = 0; v < V; ++v) {
      bikes[s] -= slice.y_plus(s, v);
      loads[v] += slice.y_plus(s, v);
    }
    for (int w = 0; w < W; ++w) bikes[s] -= slice.a_plus(s, w);
  }

  EpochMetrics metrics;
  metrics.epoch = epoch;
  SystemState next = state;

  // Phase 2: serve departures pro-rata with largest-remainder rounding.
  std::vector<SystemState::Transit> new_transit;
  for (int s = 0; s < S; ++s) {
    long demand_out = 0;
    for (int s2 = 0; s2 < S; ++s2) demand_out += realized(s, s2);
    int served = static_cast<int>(std::min<long>(bikes[s], demand_out));
    metrics.requested += static_cast<int>(demand_out);
    metrics.served += served;
    metrics.lost += static_cast<int>(demand_out) - served;
    if (demand_out > 0 && served > 0) {
      std::vector<int> give(S, 0);
      std::vector<std::pair<long, int>> rema;  // (-remainder, dest)
      long assigned = 0;
      for (int s2 = 0; s2 < S; ++s2) {
        long num = static_cast<long>(served) * realized(s, s2);
        give[s2] = static_cast<int>(num / demand_out);
        assigned += give[s2];
        rema.push_back({-(num % demand_out), s2});
      }
      std::sort(rema.begin(), rema.end());
      for (int i = 0; i < static_cast<int>(served - assigned); ++i) {
        give[rema[i].second] += 1;
      }
      for (int s2 = 0; s2 < S; ++s2) {
        if (give[s2] == 0) continue;
        metrics.revenue += in.economics.R(s, s2, epoch) * give[s2];
        new_transit.push_back({s2, epoch + 1, give[s2]});
      }
      bikes[s] -= served;
    }
  }

  // Phase 3: dropoffs.
  for (int s = 0; s < S; ++s) {
    int total_drop = 0;
    for (int v = 0; v < V; ++v) total_drop += slice.y_minus(s, v);
    for (int w = 0; w < W; ++w) total_drop += slice.a_minus(s, w);
    if (bikes[s] + total_drop > in.stations[s].capacity) {
      throw Error("infeasible_slice",
                  "dropoffs overflow station " + in.stations[s].id);
    }
    bikes[s] += total_drop;
    for (int v = 0; v < V; ++v) loads[v] -= slice.y_minus(s, v);
  }

  // Phase 4: land arrivals due this epoch; full stations redirect to the
  // nearest station with a free dock (ties by lowest station index).
  std::vector<SystemState::Transit> carry;
  for (const auto& tr : state.in_transit) {
    if (tr.arrival_epoch != epoch) {
      carry.push_back(tr);
      continue;
    }
    for (int unit = 0; unit < tr.count; ++unit) {
      int target = tr.destination;
      if (bikes[target] >= in.stations[target].capacity) {
        int best = -1;
        double bestd = 1e300;
        for (int s = 0; s < S; ++s) {
          if (bikes[s] >= in.stations[s].capacity) continue;
          double d = in.distances.D(tr.destination, s);
          if (d < bestd - 1e-12) {
            bestd = d;
            best = s;
          }
        }
        if (best < 0) {
          // Every dock in the system is full; ride one more epoch.
          carry.push_back({tr.destination, epoch + 1, tr.count - unit});
          break;
        }
        target = best;
        ++metrics.redirected;
      }
      bikes[target] += 1;
    }
  }
  for (const auto& tr : new_transit) carry.push_back(tr);

  // Vehicles move along their planned arcs.
  for (int v = 0; v < V; ++v) {
    if (move_dest[v] >= 0) {
      metrics.routing_cost += in.economics.P(pos[v], move_dest[v]);
      pos[v] = move_dest[v];
    }
  }

  next.epoch = epoch + 1;
  next.station_bikes = std::move(bikes);
  next.vehicle_loads = std::move(loads);
  next.vehicle_positions = std::move(pos);
  next.in_transit = std::move(carry);
  return {std::move(next), metrics};
}

namespace {

// Planning instance for the remaining horizon as seen from `state`.
ProblemInstance planning_instance(const ProblemInstance& in,
                                  const SystemState& state, int lookahead) {
  int S = in.num_stations(), T = in.horizon;
  int e = state.epoch;
  int L = std::min(lookahead, T - e);
  ProblemInstance plan = in;
  plan.horizon = L;
  for (int s = 0; s < S; ++s) {
    plan.stations[s].initial_bikes = state.station_bikes[s];
  }
  for (int v = 0; v < in.num_vehicles(); ++v) {
    plan.vehicles[v].initial_station = in.stations[state.vehicle_positions[v]].id;
    plan.vehicles[v].initial_load = state.vehicle_loads[v];
  }
  plan.demand.F = Tensor3<double>(S, S, L);
  plan.demand.horizon = L;
  plan.economics.R = Tensor3<double>(S, S, L);
  for (int s = 0; s < S; ++s)
    for (int s2 = 0; s2 < S; ++s2)
      for (int t = 0; t < L; ++t) {
        plan.demand.F(s, s2, t) = in.demand.F(s, s2, e + t);
        plan.economics.R(s, s2, t) = in.economics.R(s, s2, e + t);
      }
  // Bikes landing during the first planning epoch, clamped so the planning
  // model stays feasible; the executor handles real overflow by redirecting.
  plan.incoming.assign(S, 0.0);
  for (const auto& tr : state.in_transit) {
    if (tr.arrival_epoch == e) plan.incoming[tr.destination] += tr.count;
  }
  for (int s = 0; s < S; ++s) {
    plan.incoming[s] = std::min(
        plan.incoming[s],
        double(in.stations[s].capacity - state.station_bikes[s]));
  }
  return plan;
}

PlanMode mode_for(Policy policy) {
  switch (policy) {
    case Policy::Drrpv:
      return PlanMode::VehiclesOnly;
    case Policy::Drrpt:
      return PlanMode::TrailersOnly;
    default:
      return PlanMode::Joint;
  }
}

Planner resolve_planner(const PolicyConfig& cfg, const ProblemInstance& in) {
  if (cfg.planner != Planner::Auto) return cfg.planner;
  if (cfg.policy == Policy::Drrpvt) {
    return in.num_stations() >= 10 ? Planner::ClusteredLdd : Planner::Ldd;
  }
  return Planner::ExactMilp;
}

// Clamp a slice to live stocks and dock space so phase execution cannot
// fail; used for cluster-level plans that were built on aggregate state.
void clamp_slice(const ProblemInstance& in, const SystemState& state,
                 PlanSlice& slice) {
  int S = in.num_stations(), V = in.num_vehicles(), W = in.num_trailers();
  std::vector<int> stock = state.station_bikes;
  std::vector<int> space(S);
  for (int s = 0; s < S; ++s) space[s] = in.stations[s].capacity - stock[s];

  for (int v = 0; v < V; ++v) {
    for (int s = 0; s < S; ++s) {
      int yp = std::min({slice.y_plus(s, v), stock[s],
                         in.vehicles[v].capacity - state.vehicle_loads[v]});
      yp = std::max(yp, 0);
      stock[s] -= yp;
      slice.y_plus(s, v) = yp;
      int ym = std::min({slice.y_minus(s, v),
                         state.vehicle_loads[v] + yp, space[s]});
      ym = std::max(ym, 0);
      space[s] -= ym;
      slice.y_minus(s, v) = ym;
    }
  }
  for (int w = 0; w < W; ++w) {
    for (int s = 0; s < S; ++s) {
      if (slice.a_plus(s, w) == 0) continue;
      int dest = -1;
      for (int s2 = 0; s2 < S; ++s2) {
        if (slice.b(s, s2, w)) dest = s2;
      }
      int qty = slice.a_plus(s, w);
      qty = std::min({qty, stock[s], dest >= 0 ? space[dest] : 0});
      qty = std::max(qty, 0);
      stock[s] -= qty;
      if (dest >= 0) {
        space[dest] -= qty;
        slice.a_minus(dest, w) = qty;
      }
      slice.a_plus(s, w) = qty;
    }
  }
}

}  // namespace

SimulationReport run_policy(const ProblemInstance& in,
                            const PolicyConfig& config, uint64_t seed) {
  in.validate();
  int S = in.num_stations(), V = in.num_vehicles(), W = in.num_trailers(),
      T = in.horizon;
  Tensor3<int> realized = sample_demand(in.demand.F, mix_seed(seed, 0xd3a1));

  SimulationReport report;
  report.policy = policy_name(config.policy);
  report.seed = seed;

  Planner planner = resolve_planner(config, in);
  int k = config.k > 0 ? config.k : default_cluster_count(S);
  MainStationClustering clustering;
  if (planner == Planner::ClusteredLdd) {
    clustering = compute_main_stations(in.stations, k, mix_seed(seed, 0xc1));
  }

  SystemState state = SystemState::initial(in);
  double budget_left = in.economics.budget;

  for (int e = 0; e < T; ++e) {
    PlanSlice slice = PlanSlice::empty(S, V, W);
    PlanMode mode = mode_for(config.policy);

    if (config.policy != Policy::Noop) {
      ProblemInstance plan_in = planning_instance(in, state, config.lookahead);
      plan_in.economics.budget = budget_left;
      MilpBuildOptions build;
      build.physical_caps = true;

      if (planner == Planner::ExactMilp || planner == Planner::Ldd) {
        Solution planned;
        bool have_plan = false;
        if (planner == Planner::ExactMilp) {
          auto built = build_milp(plan_in, mode, build);
          auto res = solve_milp(built.problem, config.milp);
          if (res.has_incumbent()) {
            planned = decode_solution(plan_in, built.layout, res.incumbent);
            have_plan = true;
          }
        } else {
          LddParams params = config.ldd;
          params.mode = mode;
          params.build = build;
          LddResult ldd = run_ldd(plan_in, params);
          planned = std::move(ldd.solution);
          have_plan = true;
        }
        if (have_plan) slice = PlanSlice::from_solution(planned, 0);
      } else {  // ClusteredLdd
        ReducedInstance parts = reduce_instance(plan_in, clustering);
        LddParams params = config.ldd;
        params.build = build;
        params.mode = PlanMode::Joint;
        LddResult reduced = run_ldd(parts.reduced, params);
        PlanSlice red_slice = PlanSlice::from_solution(reduced.solution, 0);

        // Vehicles act at their real stations; moves target representatives.
        for (int v = 0; v < V; ++v) {
          int pos = state.vehicle_positions[v];
          int from_cluster = -1;
          for (size_t i = 0; i < parts.reduced.stations.size(); ++i) {
            if (parts.reduced.vehicles[v].initial_station ==
                parts.reduced.stations[i].id) {
              from_cluster = static_cast<int>(i);
            }
          }
          if (from_cluster < 0) continue;
          for (int c2 = 0; c2 < clustering.k; ++c2) {
            if (!red_slice.z(from_cluster, c2, v)) continue;
            int target = (c2 == clustering.assignment[pos])
                             ? pos
                             : clustering.representatives[c2];
            slice.z(pos, target, v) = 1;
            slice.y_plus(pos, v) = red_slice.y_plus(from_cluster, v);
            slice.y_minus(pos, v) = red_slice.y_minus(from_cluster, v);
          }
        }
        // Trailer tasks from the per-cluster subproblems.
        for (int c = 0; c < clustering.k; ++c) {
          LddParams sub_params = config.ldd;
          sub_params.mode = PlanMode::TrailersOnly;
          sub_params.build = build;
          ProblemInstance& sub = parts.subinstances[c];
          if (sub.num_trailers() == 0 || sub.num_stations() < 2) continue;
          LddResult sub_res = run_ldd(sub, sub_params);
          PlanSlice sub_slice = PlanSlice::from_solution(sub_res.solution, 0);
          int wi = 0;
          for (int w = 0; w < W; ++w) {
            if (parts.trailer_cluster[w] != c) continue;
            for (int i = 0; i < sub.num_stations(); ++i) {
              int s = parts.members[c][i];
              slice.a_plus(s, w) = sub_slice.a_plus(i, wi);
              slice.a_minus(s, w) = sub_slice.a_minus(i, wi);
              for (int j = 0; j < sub.num_stations(); ++j) {
                slice.b(s, parts.members[c][j], w) = sub_slice.b(i, j, wi);
              }
            }
            ++wi;
          }
        }
        clamp_slice(in, state, slice);
      }
    }

    // Crowdsource the planned trailer moves; unallocated tasks are dropped.
    double paid = 0.0;
    if (config.run_auction && W > 0 && config.policy != Policy::Noop &&
        config.policy != Policy::Drrpv) {
      std::vector<double> stocks(state.station_bikes.begin(),
                                 state.station_bikes.end());
      Tensor2<double> values = trailer_task_values(in, stocks, e);
      auto tasks = tasks_from_plan(slice.a_plus, slice.b, values, e);
      auto bids =
          simulate_bids(tasks, config.bidders_per_task, mix_seed(seed, 0xa0c + e));
      Allocation allocation = allocate_tasks(tasks, bids, budget_left);
      for (size_t i = 0; i < tasks.size(); ++i) {
        if (allocation.awards[i].winner >= 0) continue;
        const TrailerTask& task = tasks[i];
        slice.a_plus(task.origin, task.trailer) = 0;
        slice.a_minus(task.destination, task.trailer) = 0;
        slice.b(task.origin, task.destination, task.trailer) = 0;
      }
      paid = allocation.total_paid;
      budget_left -= paid;
    }

    Tensor2<int> realized_slice(S, S);
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2) realized_slice(s, s2) = realized(s, s2, e);

    auto [next, metrics] = step(in, state, slice, realized_slice);
    metrics.trailer_payments = paid;

    // Per-station demand-vs-served points; service happens after pickups.
    for (int s = 0; s < S; ++s) {
      int actual = 0;
      for (int s2 = 0; s2 < S; ++s2) actual += realized_slice(s, s2);
      if (actual == 0) continue;
      int available = state.station_bikes[s];
      for (int v = 0; v < V; ++v) available -= slice.y_plus(s, v);
      for (int w = 0; w < W; ++w) available -= slice.a_plus(s, w);
      report.scatter.push_back({s, e, actual, std::min(actual, available)});
    }
    state = std::move(next);
    report.per_epoch.push_back(metrics);
    report.total_requested += metrics.requested;
    report.total_served += metrics.served;
    report.total_lost += metrics.lost;
    report.total_revenue += metrics.revenue;
    report.total_routing_cost += metrics.routing_cost;
    report.total_trailer_payments += metrics.trailer_payments;
  }
  report.profit = report.total_revenue - report.total_routing_cost -
                  report.total_trailer_payments;
  return report;
}

CompareMetrics compare_metrics(double u_vt, double u_v, double u_t,
                               double e_vt, double e_v, double e_t) {
  CompareMetrics out;
  if (u_v != 0.0) out.g_v = (u_vt - u_v) / u_v;
  if (u_t != 0.0) out.g_t = (u_vt - u_t) / u_t;
  if (e_v != 0.0) out.l_v = (e_vt - e_v) / e_v;
  if (e_t != 0.0) out.l_t = (e_vt - e_t) / e_t;
  return out;
}

std::string report_epoch_csv(const SimulationReport& report) {
  std::string out =
      "epoch,requested,served,lost,redirected,revenue,routing_cost,"
      "trailer_payments,profit\n";
  char line[256];
  for (const auto& m : report.per_epoch) {
    std::snprintf(line, sizeof line, "%d,%d,%d,%d,%d,%.9g,%.9g,%.9g,%.9g\n",
                  m.epoch, m.requested, m.served, m.lost, m.redirected,
                  m.revenue, m.routing_cost, m.trailer_payments,
                  m.revenue - m.routing_cost - m.trailer_payments);
    out += line;
  }
  return out;
}

std::string report_scatter_csv(const SimulationReport& report) {
  std::string out = "actual,served,station,epoch\n";
  char line[128];
  for (const auto& p : report.scatter) {
    std::snprintf(line, sizeof line, "%d,%d,%d,%d\n", p.actual, p.served,
                  p.station, p.epoch);
    out += line;
  }
  return out;
}

std::string policy_name(Policy policy) {
  switch (policy) {
    case Policy::Drrpvt:
      return "drrpvt";
    case Policy::Drrpv:
      return "drrpv";
    case Policy::Drrpt:
      return "drrpt";
    default:
      return "noop";
  }
}

}  // namespace drrpvt
