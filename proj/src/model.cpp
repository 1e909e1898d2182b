#include "drrpvt/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "drrpvt/error.hpp"

namespace drrpvt {

namespace {

std::string tag(const char* base, std::initializer_list<int> idx) {
  std::string s(base);
  s += '[';
  bool first = true;
  for (int i : idx) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  s += ']';
  return s;
}

double demand_row_sum(const Tensor3<double>& F, int s, int t) {
  double sum = 0.0;
  for (int s2 = 0; s2 < F.dim1(); ++s2) sum += F(s, s2, t);
  return sum;
}

// Transition fraction of C2 with 0/0 defined as 0.
double c2_fraction(const Tensor3<double>& F, int s, int s2, int t) {
  double row = demand_row_sum(F, s, t);
  if (row <= 0.0) return 0.0;
  return F(s, s2, t) / row;
}

}  // namespace

Tensor2<double> trailer_task_values(const ProblemInstance& instance,
                                    const std::vector<double>& d_sharp_t,
                                    int t) {
  int S = instance.num_stations();
  if (static_cast<int>(d_sharp_t.size()) != S) {
    throw Error("dimension_mismatch", "d_sharp_t must have one entry per station",
                {{"tensor", "d_sharp_t"}});
  }
  Tensor2<double> values(S, S);
  for (int s = 0; s < S; ++s) {
    double shortage_base = d_sharp_t[s];
    for (int s2 = 0; s2 < S; ++s2) {
      values(s, s2) = instance.economics.xi *
                      std::max(0.0, instance.demand.F(s, s2, t) - shortage_base);
    }
  }
  return values;
}

Tensor3<double> task_values_for_planning(const ProblemInstance& instance) {
  int S = instance.num_stations();
  int T = instance.horizon;
  std::vector<double> d0(S);
  for (int s = 0; s < S; ++s) d0[s] = instance.stations[s].initial_bikes;
  Tensor3<double> values(S, S, T);
  for (int t = 0; t < T; ++t) {
    Tensor2<double> vt = trailer_task_values(instance, d0, t);
    for (int s = 0; s < S; ++s) {
      for (int s2 = 0; s2 < S; ++s2) values(s, s2, t) = vt(s, s2);
    }
  }
  return values;
}

namespace {

void require_dims(bool ok, const char* tensor) {
  if (!ok) {
    throw Error("dimension_mismatch", "solution tensor has wrong dimensions",
                {{"tensor", tensor}});
  }
}

void check_solution_dims(const ProblemInstance& in, const Solution& sol) {
  int S = in.num_stations(), V = in.num_vehicles(), W = in.num_trailers(),
      T = in.horizon;
  require_dims(sol.x.dim0() == S && sol.x.dim1() == S && sol.x.dim2() == T, "x");
  require_dims(sol.y_plus.dim0() == S && sol.y_plus.dim1() == V &&
                   sol.y_plus.dim2() == T, "y_plus");
  require_dims(sol.y_minus.dim0() == S && sol.y_minus.dim1() == V &&
                   sol.y_minus.dim2() == T, "y_minus");
  require_dims(sol.z.dim0() == S && sol.z.dim1() == S && sol.z.dim2() == V &&
                   sol.z.dim3() == T, "z");
  require_dims(sol.a_plus.dim0() == S && sol.a_plus.dim1() == W &&
                   sol.a_plus.dim2() == T, "a_plus");
  require_dims(sol.a_minus.dim0() == S && sol.a_minus.dim1() == W &&
                   sol.a_minus.dim2() == T, "a_minus");
  require_dims(sol.b.dim0() == S && sol.b.dim1() == S && sol.b.dim2() == W &&
                   sol.b.dim3() == T, "b");
  require_dims(sol.d_sharp.dim0() == S && sol.d_sharp.dim1() == T + 1,
               "d_sharp");
  require_dims(sol.d_star.dim0() == V && sol.d_star.dim1() == T + 1, "d_star");
  require_dims(sol.sigma.dim0() == V && sol.sigma.dim1() == S &&
                   sol.sigma.dim2() == T + 1, "sigma");
}

}  // namespace

double evaluate_objective(const ProblemInstance& instance,
                          const Solution& sol) {
  check_solution_dims(instance, sol);
  int S = instance.num_stations(), V = instance.num_vehicles(),
      W = instance.num_trailers(), T = instance.horizon;
  Tensor3<double> values = task_values_for_planning(instance);

  double revenue = 0.0, routing = 0.0, tasks = 0.0;
  for (int s = 0; s < S; ++s) {
    for (int s2 = 0; s2 < S; ++s2) {
      for (int t = 0; t < T; ++t) {
        revenue += instance.economics.R(s, s2, t) * sol.x(s, s2, t);
        for (int v = 0; v < V; ++v) {
          routing += instance.economics.P(s, s2) * sol.z(s, s2, v, t);
        }
        for (int w = 0; w < W; ++w) {
          tasks += values(s, s2, t) * sol.b(s, s2, w, t);
        }
      }
    }
  }
  return revenue - routing - tasks;
}

std::vector<ConstraintViolation> check_task_values(
    const ProblemInstance& instance, const Tensor3<double>& task_values) {
  int S = instance.num_stations(), T = instance.horizon;
  std::vector<ConstraintViolation> out;
  if (task_values.dim0() != S || task_values.dim1() != S ||
      task_values.dim2() != T) {
    throw Error("dimension_mismatch", "task_values has wrong dimensions",
                {{"tensor", "task_values"}});
  }
  Tensor3<double> expected = task_values_for_planning(instance);
  for (int s = 0; s < S; ++s) {
    for (int s2 = 0; s2 < S; ++s2) {
      for (int t = 0; t < T; ++t) {
        double diff = std::abs(task_values(s, s2, t) - expected(s, s2, t));
        if (diff > 1e-9) {
          out.push_back({"C3", s, s2, -1, -1, t, diff,
                         "task value differs from xi*max(0, F - d_sharp)"});
        }
      }
    }
  }
  return out;
}

std::vector<ConstraintViolation> check_solution(const ProblemInstance& instance,
                                                const Solution& sol, double tol,
                                                const CheckOptions& opts) {
  check_solution_dims(instance, sol);
  int S = instance.num_stations(), V = instance.num_vehicles(),
      W = instance.num_trailers(), T = instance.horizon;
  const auto& F = instance.demand.F;
  std::vector<ConstraintViolation> out;
  auto push = [&](const char* id, int s, int s2, int v, int w, int t,
                  double mag, const char* detail = "") {
    if (mag > tol) out.push_back({id, s, s2, v, w, t, mag, detail});
  };

  // C1: station stock balance; arrivals lag one epoch behind departures.
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < T; ++t) {
      double in = (t == 0) ? instance.incoming_at(s) : 0.0;
      if (t >= 1) {
        for (int s2 = 0; s2 < S; ++s2) in += sol.x(s2, s, t - 1);
      }
      double outflow = 0.0;
      for (int s2 = 0; s2 < S; ++s2) outflow += sol.x(s, s2, t);
      double net = 0.0;
      for (int v = 0; v < V; ++v) net += sol.y_minus(s, v, t) - sol.y_plus(s, v, t);
      for (int w = 0; w < W; ++w) net += sol.a_minus(s, w, t) - sol.a_plus(s, w, t);
      double lhs = sol.d_sharp(s, t + 1) -
                   (sol.d_sharp(s, t) + in - outflow + net);
      push("C1", s, -1, -1, -1, t, std::abs(lhs));
    }
  }

  // C2: flows follow observed transition fractions of the current stock.
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < T; ++t) {
      for (int s2 = 0; s2 < S; ++s2) {
        double cap = sol.d_sharp(s, t) * c2_fraction(F, s, s2, t);
        push("C2", s, s2, -1, -1, t, sol.x(s, s2, t) - cap);
      }
    }
  }

  // C4: total trailer payments within budget.
  {
    Tensor3<double> values = task_values_for_planning(instance);
    if (opts.per_epoch_budget) {
      for (int t = 0; t < T; ++t) {
        double paid = 0.0;
        for (int s = 0; s < S; ++s)
          for (int s2 = 0; s2 < S; ++s2)
            for (int w = 0; w < W; ++w)
              paid += values(s, s2, t) * sol.b(s, s2, w, t);
        push("C4", -1, -1, -1, -1, t, paid - instance.economics.budget);
      }
    } else {
      double paid = 0.0;
      for (int s = 0; s < S; ++s)
        for (int s2 = 0; s2 < S; ++s2)
          for (int w = 0; w < W; ++w)
            for (int t = 0; t < T; ++t)
              paid += values(s, s2, t) * sol.b(s, s2, w, t);
      push("C4", -1, -1, -1, -1, -1, paid - instance.economics.budget);
    }
  }

  // C5: vehicle load balance.
  for (int v = 0; v < V; ++v) {
    for (int t = 0; t < T; ++t) {
      double net = 0.0;
      for (int s = 0; s < S; ++s) net += sol.y_plus(s, v, t) - sol.y_minus(s, v, t);
      double lhs = sol.d_star(v, t + 1) - (sol.d_star(v, t) + net);
      push("C5", -1, -1, v, -1, t, std::abs(lhs));
    }
  }

  // C6: vehicle flow conservation against initial positions.
  for (int v = 0; v < V; ++v) {
    int home = instance.station_index(instance.vehicles[v].initial_station);
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t <= T; ++t) {
        double expected;
        if (t == 0) {
          expected = (s == home) ? 1.0 : 0.0;
        } else {
          expected = sol.sigma(v, s, t - 1);
          for (int s2 = 0; s2 < S; ++s2) expected += sol.z(s2, s, v, t - 1);
        }
        double actual = sol.sigma(v, s, t);
        if (t < T) {
          for (int s2 = 0; s2 < S; ++s2) actual += sol.z(s, s2, v, t);
        }
        push("C6", s, -1, v, -1, t, std::abs(actual - expected));
      }
    }
  }

  // C7: at most one vehicle present per station and epoch (departing or
  // idle; arrivals show up at the next boundary).
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t <= T; ++t) {
      double present = 0.0;
      for (int v = 0; v < V; ++v) {
        present += sol.sigma(v, s, t);
        if (t < T) {
          for (int s2 = 0; s2 < S; ++s2) present += sol.z(s, s2, v, t);
        }
      }
      push("C7", s, -1, -1, -1, t, present - 1.0);
    }
  }

  // C8: pickups and dropoffs only where the vehicle is routed.
  for (int s = 0; s < S; ++s) {
    for (int v = 0; v < V; ++v) {
      for (int t = 0; t < T; ++t) {
        double moved = 0.0;
        for (int s2 = 0; s2 < S; ++s2) moved += sol.z(s, s2, v, t);
        double lhs = sol.y_plus(s, v, t) + sol.y_minus(s, v, t) -
                     instance.vehicles[v].capacity * moved;
        push("C8", s, -1, v, -1, t, lhs);
      }
    }
  }

  // C9: trailer pickup bounded by min(stock, trailer capacity) when tasked.
  for (int s = 0; s < S; ++s) {
    for (int w = 0; w < W; ++w) {
      for (int t = 0; t < T; ++t) {
        double tasked = 0.0;
        for (int s2 = 0; s2 < S; ++s2) tasked += sol.b(s, s2, w, t);
        double cap = tasked * std::min(sol.d_sharp(s, t),
                                       double(instance.trailers[w].capacity));
        push("C9", s, -1, -1, w, t, sol.a_plus(s, w, t) - cap);
      }
    }
  }

  // C10: total trailer pickups within available stock.
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < T; ++t) {
      double total = 0.0;
      for (int w = 0; w < W; ++w) total += sol.a_plus(s, w, t);
      push("C10", s, -1, -1, -1, t, total - sol.d_sharp(s, t));
    }
  }

  // C11: total trailer dropoffs within free docks.
  for (int s = 0; s < S; ++s) {
    for (int t = 0; t < T; ++t) {
      double total = 0.0;
      for (int w = 0; w < W; ++w) total += sol.a_minus(s, w, t);
      double free_docks = instance.stations[s].capacity - sol.d_sharp(s, t);
      push("C11", s, -1, -1, -1, t, total - free_docks);
    }
  }

  // C12: task distance within the trailer range.
  for (int s = 0; s < S; ++s) {
    for (int s2 = 0; s2 < S; ++s2) {
      for (int w = 0; w < W; ++w) {
        for (int t = 0; t < T; ++t) {
          double lhs = sol.b(s, s2, w, t) * instance.distances.D(s, s2) -
                       instance.trailers[w].max_distance_km;
          push("C12", s, s2, -1, w, t, lhs);
        }
      }
    }
  }

  // C13: exactly one task per trailer and epoch.
  for (int w = 0; w < W; ++w) {
    for (int t = 0; t < T; ++t) {
      double total = 0.0;
      for (int s = 0; s < S; ++s)
        for (int s2 = 0; s2 < S; ++s2) total += sol.b(s, s2, w, t);
      push("C13", -1, -1, -1, w, t, std::abs(total - 1.0));
    }
  }

  // C14: dropoffs return exactly the picked-up bikes (product form).
  for (int s2 = 0; s2 < S; ++s2) {
    for (int w = 0; w < W; ++w) {
      for (int t = 0; t < T; ++t) {
        double rhs = 0.0;
        for (int s = 0; s < S; ++s) rhs += sol.b(s, s2, w, t) * sol.a_plus(s, w, t);
        push("C14", -1, s2, -1, w, t,
             std::abs(sol.a_minus(s2, w, t) - rhs));
      }
    }
  }

  // C15: domain bounds, including the stock-coupled ones and the anchoring
  // of the state trajectories to the instance's initial data.
  for (int s = 0; s < S; ++s) {
    push("C15", s, -1, -1, -1, 0,
         std::abs(sol.d_sharp(s, 0) - instance.stations[s].initial_bikes),
         "d_sharp starts at initial_bikes");
    for (int t = 0; t <= T; ++t) {
      push("C15", s, -1, -1, -1, t, -sol.d_sharp(s, t), "d_sharp >= 0");
      push("C15", s, -1, -1, -1, t,
           sol.d_sharp(s, t) - instance.stations[s].capacity,
           "d_sharp <= station capacity");
    }
    for (int s2 = 0; s2 < S; ++s2) {
      for (int t = 0; t < T; ++t) {
        push("C15", s, s2, -1, -1, t, -sol.x(s, s2, t), "x >= 0");
        push("C15", s, s2, -1, -1, t, sol.x(s, s2, t) - F(s, s2, t), "x <= F");
      }
    }
  }
  for (int v = 0; v < V; ++v) {
    push("C15", -1, -1, v, -1, 0,
         std::abs(double(sol.d_star(v, 0)) - instance.vehicles[v].initial_load),
         "d_star starts at initial_load");
    for (int t = 0; t <= T; ++t) {
      push("C15", -1, -1, v, -1, t, -double(sol.d_star(v, t)), "d_star >= 0");
      push("C15", -1, -1, v, -1, t,
           double(sol.d_star(v, t)) - instance.vehicles[v].capacity,
           "d_star <= vehicle capacity");
    }
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t < T; ++t) {
        double cap = instance.vehicles[v].capacity;
        push("C15", s, -1, v, -1, t, -double(sol.y_plus(s, v, t)), "y+ >= 0");
        push("C15", s, -1, v, -1, t, -double(sol.y_minus(s, v, t)), "y- >= 0");
        push("C15", s, -1, v, -1, t, sol.y_plus(s, v, t) - cap,
             "y+ <= vehicle capacity");
        push("C15", s, -1, v, -1, t, sol.y_minus(s, v, t) - cap,
             "y- <= vehicle capacity");
        push("C15", s, -1, v, -1, t, sol.y_plus(s, v, t) - sol.d_sharp(s, t),
             "y+ <= d_sharp");
        push("C15", s, -1, v, -1, t,
             sol.y_minus(s, v, t) -
                 (instance.stations[s].capacity - sol.d_sharp(s, t)),
             "y- <= free docks");
      }
      for (int t = 0; t <= T; ++t) {
        int sg = sol.sigma(v, s, t);
        if (sg != 0 && sg != 1) {
          push("C15", s, -1, v, -1, t, std::abs(double(sg)), "sigma binary");
        }
      }
      for (int s2 = 0; s2 < S; ++s2) {
        for (int t = 0; t < T; ++t) {
          int zv = sol.z(s, s2, v, t);
          if (zv != 0 && zv != 1) {
            push("C15", s, s2, v, -1, t, std::abs(double(zv)), "z binary");
          }
        }
      }
    }
  }
  for (int w = 0; w < W; ++w) {
    double cap = instance.trailers[w].capacity;
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t < T; ++t) {
        push("C15", s, -1, -1, w, t, -double(sol.a_plus(s, w, t)), "a+ >= 0");
        push("C15", s, -1, -1, w, t, -double(sol.a_minus(s, w, t)), "a- >= 0");
        push("C15", s, -1, -1, w, t, sol.a_plus(s, w, t) - cap,
             "a+ <= trailer capacity");
        push("C15", s, -1, -1, w, t, sol.a_minus(s, w, t) - cap,
             "a- <= trailer capacity");
        push("C15", s, -1, -1, w, t, sol.a_plus(s, w, t) - sol.d_sharp(s, t),
             "a+ <= d_sharp");
        push("C15", s, -1, -1, w, t,
             sol.a_minus(s, w, t) -
                 (instance.stations[s].capacity - sol.d_sharp(s, t)),
             "a- <= free docks");
      }
      for (int s2 = 0; s2 < S; ++s2) {
        for (int t = 0; t < T; ++t) {
          int bv = sol.b(s, s2, w, t);
          if (bv != 0 && bv != 1) {
            push("C15", s, s2, -1, w, t, std::abs(double(bv)), "b binary");
          }
        }
      }
    }
  }

  return out;
}

namespace {

struct AsmConfig {
  bool demand = true;
  bool veh_inv = false;
  bool routing = false;
  bool trailers = false;
  bool include_c8 = true;
  const Tensor3<double>* alpha = nullptr;  // [s][t][v]
  const Tensor3<int>* zbar = nullptr;      // [s][v][t]
  bool obj_revenue = true;
  bool obj_routing = true;
  bool obj_tasks = true;
  Sense sense = Sense::Maximize;
  MilpBuildOptions opts;
};

ModelMilp assemble(const ProblemInstance& in, const AsmConfig& cfg) {
  in.validate();
  int S = in.num_stations(), V = in.num_vehicles(), W = in.num_trailers(),
      T = in.horizon;
  const auto& F = in.demand.F;

  ModelMilp built;
  built.task_values = task_values_for_planning(in);
  const Tensor3<double>& phat = built.task_values;

  VarLayout& L = built.layout;
  L.with_demand = cfg.demand;
  L.with_vehicles = cfg.veh_inv;
  L.with_routing = cfg.routing;
  L.with_trailers = cfg.trailers;
  L.S = S;
  L.V = V;
  L.W = W;
  L.T = T;

  MilpProblem& p = built.problem;
  p.sense = cfg.sense;

  // Variable blocks in fixed order; bounds encode the static parts of C15
  // and the variable fixings of C2 (zero-fraction pairs) and C12 (tasks
  // beyond trailer range).
  if (cfg.demand) {
    L.x0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2)
        for (int t = 0; t < T; ++t) {
          double ub = F(s, s2, t);
          if (c2_fraction(F, s, s2, t) <= 0.0) ub = 0.0;
          double obj = cfg.obj_revenue ? in.economics.R(s, s2, t) : 0.0;
          if (cfg.sense == Sense::Minimize) obj = -obj;
          p.add_var(0.0, ub, obj, false, tag("x", {s, s2, t}));
        }
  }
  if (cfg.veh_inv) {
    L.yp0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int v = 0; v < V; ++v)
        for (int t = 0; t < T; ++t) {
          double obj = cfg.alpha ? (*cfg.alpha)(s, t, v) : 0.0;
          p.add_var(0.0, in.vehicles[v].capacity, obj, true,
                    tag("y+", {s, v, t}));
        }
    L.ym0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int v = 0; v < V; ++v)
        for (int t = 0; t < T; ++t) {
          double obj = cfg.alpha ? (*cfg.alpha)(s, t, v) : 0.0;
          p.add_var(0.0, in.vehicles[v].capacity, obj, true,
                    tag("y-", {s, v, t}));
        }
  }
  if (cfg.routing) {
    L.z0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2)
        for (int v = 0; v < V; ++v)
          for (int t = 0; t < T; ++t) {
            double obj = 0.0;
            if (cfg.obj_routing) {
              obj = -in.economics.P(s, s2);
              if (cfg.sense == Sense::Minimize) obj = -obj;
            }
            if (cfg.alpha) {
              // Routing slave pricing: P - C* . alpha (minimization).
              obj -= in.vehicles[v].capacity * (*cfg.alpha)(s, t, v);
            }
            p.add_var(0.0, 1.0, obj, true, tag("z", {s, s2, v, t}));
          }
    L.sg0 = p.n_vars;
    for (int v = 0; v < V; ++v)
      for (int s = 0; s < S; ++s)
        for (int t = 0; t <= T; ++t) {
          p.add_var(0.0, 1.0, 0.0, true, tag("sg", {v, s, t}));
        }
  }
  if (cfg.trailers) {
    L.ap0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int w = 0; w < W; ++w)
        for (int t = 0; t < T; ++t) {
          p.add_var(0.0, in.trailers[w].capacity, 0.0, true,
                    tag("a+", {s, w, t}));
        }
    L.am0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int w = 0; w < W; ++w)
        for (int t = 0; t < T; ++t) {
          p.add_var(0.0, in.trailers[w].capacity, 0.0, true,
                    tag("a-", {s, w, t}));
        }
    L.b0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2)
        for (int w = 0; w < W; ++w)
          for (int t = 0; t < T; ++t) {
            double ub =
                (in.distances.D(s, s2) > in.trailers[w].max_distance_km)
                    ? 0.0
                    : 1.0;  // C12 as a fixing
            double obj = cfg.obj_tasks ? -phat(s, s2, t) : 0.0;
            if (cfg.sense == Sense::Minimize) obj = -obj;
            p.add_var(0.0, ub, obj, true, tag("b", {s, s2, w, t}));
          }
  }
  if (cfg.demand) {
    L.ds0 = p.n_vars;
    for (int s = 0; s < S; ++s)
      for (int t = 0; t <= T; ++t) {
        double lo = 0.0, hi = in.stations[s].capacity;
        if (t == 0) lo = hi = in.stations[s].initial_bikes;
        p.add_var(lo, hi, 0.0, false, tag("d#", {s, t}));
      }
  }
  if (cfg.veh_inv) {
    L.dv0 = p.n_vars;
    for (int v = 0; v < V; ++v)
      for (int t = 0; t <= T; ++t) {
        double lo = 0.0, hi = in.vehicles[v].capacity;
        if (t == 0) lo = hi = in.vehicles[v].initial_load;
        p.add_var(lo, hi, 0.0, false, tag("d*", {v, t}));
      }
  }
  L.total = p.n_vars;

  // C1: stock balance rows.
  if (cfg.demand) {
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        terms.push_back({L.d_sharp(s, t + 1), 1.0});
        terms.push_back({L.d_sharp(s, t), -1.0});
        for (int s2 = 0; s2 < S; ++s2) {
          terms.push_back({L.x(s, s2, t), 1.0});
          if (t >= 1) terms.push_back({L.x(s2, s, t - 1), -1.0});
        }
        if (cfg.veh_inv) {
          for (int v = 0; v < V; ++v) {
            terms.push_back({L.y_minus(s, v, t), -1.0});
            terms.push_back({L.y_plus(s, v, t), 1.0});
          }
        }
        if (cfg.trailers) {
          for (int w = 0; w < W; ++w) {
            terms.push_back({L.a_minus(s, w, t), -1.0});
            terms.push_back({L.a_plus(s, w, t), 1.0});
          }
        }
        double rhs = (t == 0) ? in.incoming_at(s) : 0.0;
        p.add_constraint(std::move(terms), Relation::Equal, rhs,
                         tag("C1", {s, t}));
      }
    }

    // C2: positive-fraction rows only; zero fractions were fixed above.
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t < T; ++t) {
        for (int s2 = 0; s2 < S; ++s2) {
          double frac = c2_fraction(F, s, s2, t);
          if (frac <= 0.0) continue;
          p.add_constraint(
              {{L.x(s, s2, t), 1.0}, {L.d_sharp(s, t), -frac}},
              Relation::LessEqual, 0.0, tag("C2", {s, s2, t}));
        }
      }
    }
  }

  // C4: budget on task payments.
  if (cfg.trailers) {
    if (cfg.opts.per_epoch_budget) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        for (int s = 0; s < S; ++s)
          for (int s2 = 0; s2 < S; ++s2)
            for (int w = 0; w < W; ++w)
              if (phat(s, s2, t) != 0.0)
                terms.push_back({L.b(s, s2, w, t), phat(s, s2, t)});
        p.add_constraint(std::move(terms), Relation::LessEqual,
                         in.economics.budget, tag("C4", {t}));
      }
    } else {
      std::vector<LinearTerm> terms;
      for (int s = 0; s < S; ++s)
        for (int s2 = 0; s2 < S; ++s2)
          for (int w = 0; w < W; ++w)
            for (int t = 0; t < T; ++t)
              if (phat(s, s2, t) != 0.0)
                terms.push_back({L.b(s, s2, w, t), phat(s, s2, t)});
      p.add_constraint(std::move(terms), Relation::LessEqual,
                       in.economics.budget, "C4");
    }
  }

  // C5: vehicle load balance.
  if (cfg.veh_inv) {
    for (int v = 0; v < V; ++v) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        terms.push_back({L.d_star(v, t + 1), 1.0});
        terms.push_back({L.d_star(v, t), -1.0});
        for (int s = 0; s < S; ++s) {
          terms.push_back({L.y_plus(s, v, t), -1.0});
          terms.push_back({L.y_minus(s, v, t), 1.0});
        }
        p.add_constraint(std::move(terms), Relation::Equal, 0.0,
                         tag("C5", {v, t}));
      }
    }
  }

  if (cfg.routing) {
    // C6: per-vehicle flow over stations and epochs.
    for (int v = 0; v < V; ++v) {
      int home = in.station_index(in.vehicles[v].initial_station);
      for (int s = 0; s < S; ++s) {
        for (int t = 0; t <= T; ++t) {
          std::vector<LinearTerm> terms;
          terms.push_back({L.sigma(v, s, t), 1.0});
          if (t < T) {
            for (int s2 = 0; s2 < S; ++s2)
              terms.push_back({L.z(s, s2, v, t), 1.0});
          }
          double rhs = 0.0;
          if (t == 0) {
            rhs = (s == home) ? 1.0 : 0.0;
          } else {
            terms.push_back({L.sigma(v, s, t - 1), -1.0});
            for (int s2 = 0; s2 < S; ++s2)
              terms.push_back({L.z(s2, s, v, t - 1), -1.0});
          }
          p.add_constraint(std::move(terms), Relation::Equal, rhs,
                           tag("C6", {v, s, t}));
        }
      }
    }

    // C7: single vehicle present per station and epoch.
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t <= T; ++t) {
        std::vector<LinearTerm> terms;
        for (int v = 0; v < V; ++v) {
          terms.push_back({L.sigma(v, s, t), 1.0});
          if (t < T) {
            for (int s2 = 0; s2 < S; ++s2)
              terms.push_back({L.z(s, s2, v, t), 1.0});
          }
        }
        p.add_constraint(std::move(terms), Relation::LessEqual, 1.0,
                         tag("C7", {s, t}));
      }
    }

    // C8: repositioning only along routed moves (the coupling the
    // decomposition dualizes).
    if (cfg.veh_inv && cfg.include_c8) {
      for (int s = 0; s < S; ++s) {
        for (int v = 0; v < V; ++v) {
          for (int t = 0; t < T; ++t) {
            std::vector<LinearTerm> terms;
            terms.push_back({L.y_plus(s, v, t), 1.0});
            terms.push_back({L.y_minus(s, v, t), 1.0});
            for (int s2 = 0; s2 < S; ++s2) {
              terms.push_back(
                  {L.z(s, s2, v, t), -double(in.vehicles[v].capacity)});
            }
            p.add_constraint(std::move(terms), Relation::LessEqual, 0.0,
                             tag("C8", {s, v, t}));
          }
        }
      }
    }
  }

  // Extraction variant: C8 with the routing fixed from outside.
  if (cfg.veh_inv && cfg.zbar) {
    for (int s = 0; s < S; ++s) {
      for (int v = 0; v < V; ++v) {
        for (int t = 0; t < T; ++t) {
          double rhs = in.vehicles[v].capacity * double((*cfg.zbar)(s, v, t));
          p.add_constraint(
              {{L.y_plus(s, v, t), 1.0}, {L.y_minus(s, v, t), 1.0}},
              Relation::LessEqual, rhs, tag("C8fix", {s, v, t}));
        }
      }
    }
  }

  if (cfg.trailers) {
    // C9: pickup allowed only where the trailer's task originates.
    for (int s = 0; s < S; ++s) {
      for (int w = 0; w < W; ++w) {
        for (int t = 0; t < T; ++t) {
          std::vector<LinearTerm> terms;
          terms.push_back({L.a_plus(s, w, t), 1.0});
          for (int s2 = 0; s2 < S; ++s2) {
            terms.push_back(
                {L.b(s, s2, w, t), -double(in.trailers[w].capacity)});
          }
          p.add_constraint(std::move(terms), Relation::LessEqual, 0.0,
                           tag("C9", {s, w, t}));
        }
      }
    }

    // C10/C11: aggregate pickups within stock, dropoffs within free docks.
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> pick, drop;
        for (int w = 0; w < W; ++w) {
          pick.push_back({L.a_plus(s, w, t), 1.0});
          drop.push_back({L.a_minus(s, w, t), 1.0});
        }
        pick.push_back({L.d_sharp(s, t), -1.0});
        p.add_constraint(std::move(pick), Relation::LessEqual, 0.0,
                         tag("C10", {s, t}));
        drop.push_back({L.d_sharp(s, t), 1.0});
        p.add_constraint(std::move(drop), Relation::LessEqual,
                         in.stations[s].capacity, tag("C11", {s, t}));
      }
    }

    // C13: one task per trailer and epoch.
    for (int w = 0; w < W; ++w) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> terms;
        for (int s = 0; s < S; ++s)
          for (int s2 = 0; s2 < S; ++s2)
            terms.push_back({L.b(s, s2, w, t), 1.0});
        p.add_constraint(std::move(terms), Relation::Equal, 1.0,
                         tag("C13", {w, t}));
      }
    }

    // C14 linearization of a-(s') = sum_s b(s,s') * a+(s).
    for (int s2 = 0; s2 < S; ++s2) {
      for (int w = 0; w < W; ++w) {
        double cap = in.trailers[w].capacity;
        for (int t = 0; t < T; ++t) {
          std::vector<LinearTerm> r1, r2, r3;
          r1.push_back({L.a_minus(s2, w, t), 1.0});
          r2.push_back({L.a_minus(s2, w, t), 1.0});
          r3.push_back({L.a_minus(s2, w, t), 1.0});
          for (int s = 0; s < S; ++s) {
            r1.push_back({L.b(s, s2, w, t), -cap});
            r2.push_back({L.a_plus(s, w, t), -1.0});
            r3.push_back({L.a_plus(s, w, t), -1.0});
            r3.push_back({L.b(s, s2, w, t), -cap});
          }
          p.add_constraint(std::move(r1), Relation::LessEqual, 0.0,
                           tag("C14a", {s2, w, t}));
          p.add_constraint(std::move(r2), Relation::LessEqual, 0.0,
                           tag("C14b", {s2, w, t}));
          p.add_constraint(std::move(r3), Relation::GreaterEqual, -cap,
                           tag("C14c", {s2, w, t}));
        }
      }
    }
  }

  // C15 stock-coupled rows.
  if (cfg.demand && cfg.veh_inv) {
    for (int s = 0; s < S; ++s)
      for (int v = 0; v < V; ++v)
        for (int t = 0; t < T; ++t) {
          p.add_constraint({{L.y_plus(s, v, t), 1.0}, {L.d_sharp(s, t), -1.0}},
                           Relation::LessEqual, 0.0, tag("C15yp", {s, v, t}));
          p.add_constraint({{L.y_minus(s, v, t), 1.0}, {L.d_sharp(s, t), 1.0}},
                           Relation::LessEqual, in.stations[s].capacity,
                           tag("C15ym", {s, v, t}));
        }
  }
  if (cfg.demand && cfg.trailers) {
    for (int s = 0; s < S; ++s)
      for (int w = 0; w < W; ++w)
        for (int t = 0; t < T; ++t) {
          p.add_constraint({{L.a_plus(s, w, t), 1.0}, {L.d_sharp(s, t), -1.0}},
                           Relation::LessEqual, 0.0, tag("C15ap", {s, w, t}));
          p.add_constraint({{L.a_minus(s, w, t), 1.0}, {L.d_sharp(s, t), 1.0}},
                           Relation::LessEqual, in.stations[s].capacity,
                           tag("C15am", {s, w, t}));
        }
  }

  // Optional joint caps making epoch slices executable phase by phase.
  if (cfg.opts.physical_caps && cfg.demand && (cfg.veh_inv || cfg.trailers)) {
    for (int s = 0; s < S; ++s) {
      for (int t = 0; t < T; ++t) {
        std::vector<LinearTerm> pick, drop;
        if (cfg.veh_inv) {
          for (int v = 0; v < V; ++v) {
            pick.push_back({L.y_plus(s, v, t), 1.0});
            drop.push_back({L.y_minus(s, v, t), 1.0});
          }
        }
        if (cfg.trailers) {
          for (int w = 0; w < W; ++w) {
            pick.push_back({L.a_plus(s, w, t), 1.0});
            drop.push_back({L.a_minus(s, w, t), 1.0});
          }
        }
        pick.push_back({L.d_sharp(s, t), -1.0});
        p.add_constraint(std::move(pick), Relation::LessEqual, 0.0,
                         tag("cap_pick", {s, t}));
        drop.push_back({L.d_sharp(s, t), 1.0});
        p.add_constraint(std::move(drop), Relation::LessEqual,
                         in.stations[s].capacity, tag("cap_drop", {s, t}));
      }
    }
  }

  return built;
}

}  // namespace

ModelMilp build_milp(const ProblemInstance& instance, PlanMode mode,
                     const MilpBuildOptions& opts) {
  AsmConfig cfg;
  cfg.demand = true;
  cfg.veh_inv = cfg.routing = (mode != PlanMode::TrailersOnly);
  cfg.trailers = (mode != PlanMode::VehiclesOnly);
  cfg.opts = opts;
  return assemble(instance, cfg);
}

ModelMilp build_reposition_slave_milp(const ProblemInstance& instance,
                                      const Tensor3<double>& alpha,
                                      PlanMode mode,
                                      const MilpBuildOptions& opts) {
  AsmConfig cfg;
  cfg.demand = true;
  cfg.veh_inv = (mode != PlanMode::TrailersOnly);
  cfg.routing = false;
  cfg.trailers = (mode != PlanMode::VehiclesOnly);
  cfg.alpha = &alpha;
  cfg.sense = Sense::Minimize;
  cfg.obj_routing = false;
  cfg.opts = opts;
  return assemble(instance, cfg);
}

ModelMilp build_routing_slave_milp(const ProblemInstance& instance,
                                   const Tensor3<double>& alpha) {
  AsmConfig cfg;
  cfg.demand = false;
  cfg.veh_inv = false;
  cfg.routing = true;
  cfg.trailers = false;
  cfg.alpha = &alpha;
  cfg.sense = Sense::Minimize;
  cfg.obj_revenue = false;
  cfg.obj_tasks = false;
  return assemble(instance, cfg);
}

ModelMilp build_extraction_milp(const ProblemInstance& instance,
                                const Tensor3<int>& z_bar, PlanMode mode,
                                const MilpBuildOptions& opts) {
  AsmConfig cfg;
  cfg.demand = true;
  cfg.veh_inv = (mode != PlanMode::TrailersOnly);
  cfg.routing = false;
  cfg.trailers = (mode != PlanMode::VehiclesOnly);
  cfg.zbar = &z_bar;
  cfg.opts = opts;
  return assemble(instance, cfg);
}

Solution decode_solution(const ProblemInstance& instance,
                         const VarLayout& L,
                         const std::vector<double>& assignment) {
  if (static_cast<int>(assignment.size()) != L.total) {
    throw Error("dimension_mismatch", "assignment length differs from layout",
                {{"tensor", "assignment"}});
  }
  int S = L.S, V = L.V, W = L.W, T = L.T;
  auto ival = [&](int idx) {
    return static_cast<int>(std::lround(assignment[idx]));
  };

  Solution sol = Solution::idle(instance);
  if (!L.with_trailers) {
    // VehiclesOnly semantics: all trailer activity fixed to zero, including
    // the idle self-tasks Solution::idle uses to satisfy C13.
    std::fill(sol.b.data().begin(), sol.b.data().end(), 0);
  }
  if (L.with_demand) {
    for (int s = 0; s < S; ++s) {
      for (int s2 = 0; s2 < S; ++s2)
        for (int t = 0; t < T; ++t) sol.x(s, s2, t) = assignment[L.x(s, s2, t)];
      for (int t = 0; t <= T; ++t)
        sol.d_sharp(s, t) = assignment[L.d_sharp(s, t)];
    }
  }
  if (L.with_vehicles) {
    for (int s = 0; s < S; ++s)
      for (int v = 0; v < V; ++v)
        for (int t = 0; t < T; ++t) {
          sol.y_plus(s, v, t) = ival(L.y_plus(s, v, t));
          sol.y_minus(s, v, t) = ival(L.y_minus(s, v, t));
        }
    for (int v = 0; v < V; ++v)
      for (int t = 0; t <= T; ++t)
        sol.d_star(v, t) = ival(L.d_star(v, t));
  }
  if (L.with_routing) {
    for (int v = 0; v < V; ++v)
      for (int s = 0; s < S; ++s) {
        for (int s2 = 0; s2 < S; ++s2)
          for (int t = 0; t < T; ++t)
            sol.z(s, s2, v, t) = ival(L.z(s, s2, v, t));
        for (int t = 0; t <= T; ++t)
          sol.sigma(v, s, t) = ival(L.sigma(v, s, t));
      }
  }
  if (L.with_trailers) {
    // Clear the idle self-tasks before copying the decoded plan.
    std::fill(sol.b.data().begin(), sol.b.data().end(), 0);
    for (int s = 0; s < S; ++s)
      for (int w = 0; w < W; ++w)
        for (int t = 0; t < T; ++t) {
          sol.a_plus(s, w, t) = ival(L.a_plus(s, w, t));
          sol.a_minus(s, w, t) = ival(L.a_minus(s, w, t));
        }
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2)
        for (int w = 0; w < W; ++w)
          for (int t = 0; t < T; ++t)
            sol.b(s, s2, w, t) = ival(L.b(s, s2, w, t));
  }
  return sol;
}

std::vector<double> encode_solution(const ProblemInstance& instance,
                                    const VarLayout& L, const Solution& sol) {
  check_solution_dims(instance, sol);
  std::vector<double> a(L.total, 0.0);
  int S = L.S, V = L.V, W = L.W, T = L.T;
  if (L.with_demand) {
    for (int s = 0; s < S; ++s) {
      for (int s2 = 0; s2 < S; ++s2)
        for (int t = 0; t < T; ++t) a[L.x(s, s2, t)] = sol.x(s, s2, t);
      for (int t = 0; t <= T; ++t) a[L.d_sharp(s, t)] = sol.d_sharp(s, t);
    }
  }
  if (L.with_vehicles) {
    for (int s = 0; s < S; ++s)
      for (int v = 0; v < V; ++v)
        for (int t = 0; t < T; ++t) {
          a[L.y_plus(s, v, t)] = sol.y_plus(s, v, t);
          a[L.y_minus(s, v, t)] = sol.y_minus(s, v, t);
        }
    for (int v = 0; v < V; ++v)
      for (int t = 0; t <= T; ++t) a[L.d_star(v, t)] = sol.d_star(v, t);
  }
  if (L.with_routing) {
    for (int v = 0; v < V; ++v)
      for (int s = 0; s < S; ++s) {
        for (int s2 = 0; s2 < S; ++s2)
          for (int t = 0; t < T; ++t)
            a[L.z(s, s2, v, t)] = sol.z(s, s2, v, t);
        for (int t = 0; t <= T; ++t) a[L.sigma(v, s, t)] = sol.sigma(v, s, t);
      }
  }
  if (L.with_trailers) {
    for (int s = 0; s < S; ++s)
      for (int w = 0; w < W; ++w)
        for (int t = 0; t < T; ++t) {
          a[L.a_plus(s, w, t)] = sol.a_plus(s, w, t);
          a[L.a_minus(s, w, t)] = sol.a_minus(s, w, t);
        }
    for (int s = 0; s < S; ++s)
      for (int s2 = 0; s2 < S; ++s2)
        for (int w = 0; w < W; ++w)
          for (int t = 0; t < T; ++t)
            a[L.b(s, s2, w, t)] = sol.b(s, s2, w, t);
  }
  return a;
}

}  // namespace drrpvt
