#include "drrpvt/types.hpp"

#include <cmath>
#include <set>

#include "drrpvt/error.hpp"
#include "drrpvt/model.hpp"

namespace drrpvt {

int ProblemInstance::station_index(const std::string& id) const {
  for (size_t i = 0; i < stations.size(); ++i) {
    if (stations[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

void ProblemInstance::validate() const {
  int S = num_stations();
  int V = num_vehicles();
  int T = horizon;
  if (S < 1) throw Error("instance_invalid", "instance has no stations");
  if (T < 1) throw Error("instance_invalid", "instance has zero horizon");
  if (epoch_minutes < 1) {
    throw Error("instance_invalid", "epoch_minutes must be positive");
  }

  std::set<std::string> ids;
  for (const auto& st : stations) {
    if (st.id.empty()) throw Error("instance_invalid", "empty station id");
    if (!ids.insert(st.id).second) {
      throw Error("instance_invalid", "duplicate station id",
                  {{"id", st.id}});
    }
    if (st.capacity < 0) {
      throw Error("instance_invalid", "negative station capacity",
                  {{"id", st.id}});
    }
    if (st.initial_bikes < 0 || st.initial_bikes > st.capacity) {
      throw Error("instance_invalid",
                  "initial_bikes outside [0, capacity]", {{"id", st.id}});
    }
    if (std::abs(st.latitude) > 90.0 || std::abs(st.longitude) > 180.0) {
      throw Error("instance_invalid", "coordinates out of range",
                  {{"id", st.id}});
    }
  }

  std::set<std::string> veh_stations;
  for (const auto& v : vehicles) {
    if (v.capacity < 1) {
      throw Error("instance_invalid", "vehicle capacity must be >= 1",
                  {{"id", v.id}});
    }
    if (v.initial_load < 0 || v.initial_load > v.capacity) {
      throw Error("instance_invalid", "initial_load outside [0, capacity]",
                  {{"id", v.id}});
    }
    if (station_index(v.initial_station) < 0) {
      throw Error("instance_invalid", "vehicle references unknown station",
                  {{"id", v.id}, {"station", v.initial_station}});
    }
    // C7 admits one vehicle per station, so starts must be distinct.
    if (!veh_stations.insert(v.initial_station).second) {
      throw Error("instance_invalid",
                  "two vehicles share an initial station",
                  {{"station", v.initial_station}});
    }
  }

  for (const auto& w : trailers) {
    if (w.capacity < 1) {
      throw Error("instance_invalid", "trailer capacity must be >= 1",
                  {{"id", w.id}});
    }
    if (!(w.max_distance_km > 0.0)) {
      throw Error("instance_invalid", "trailer max_distance_km must be > 0",
                  {{"id", w.id}});
    }
  }

  auto check3 = [&](const Tensor3<double>& ten, const char* name, int d2) {
    if (ten.dim0() != S || ten.dim1() != S || ten.dim2() != d2) {
      throw Error("dimension_mismatch", "tensor has wrong dimensions",
                  {{"tensor", name}});
    }
    for (double v : ten.data()) {
      if (!(v >= 0.0)) {
        throw Error("instance_invalid", "tensor has negative entries",
                    {{"tensor", name}});
      }
    }
  };
  check3(demand.F, "F", T);
  if (demand.horizon != T) {
    throw Error("dimension_mismatch", "demand horizon differs from instance",
                {{"tensor", "F"}});
  }
  check3(economics.R, "R", T);
  if (economics.P.dim0() != S || economics.P.dim1() != S) {
    throw Error("dimension_mismatch", "tensor has wrong dimensions",
                {{"tensor", "P"}});
  }
  if (distances.D.dim0() != S || distances.D.dim1() != S) {
    throw Error("dimension_mismatch", "tensor has wrong dimensions",
                {{"tensor", "D"}});
  }
  for (int s = 0; s < S; ++s) {
    if (economics.P(s, s) != 0.0) {
      throw Error("instance_invalid", "P diagonal must be zero");
    }
    if (distances.D(s, s) != 0.0) {
      throw Error("instance_invalid", "D diagonal must be zero");
    }
    for (int s2 = 0; s2 < S; ++s2) {
      if (economics.P(s, s2) < 0.0 || distances.D(s, s2) < 0.0) {
        throw Error("instance_invalid", "P and D must be nonnegative");
      }
      if (std::abs(distances.D(s, s2) - distances.D(s2, s)) > 1e-9) {
        throw Error("instance_invalid", "D must be symmetric");
      }
    }
  }
  if (economics.xi < 0.0 || economics.budget < 0.0) {
    throw Error("instance_invalid", "xi and budget must be nonnegative");
  }
  if (!incoming.empty() && static_cast<int>(incoming.size()) != S) {
    throw Error("dimension_mismatch", "incoming must have one entry per station",
                {{"tensor", "incoming"}});
  }
  for (double inc : incoming) {
    if (!(inc >= 0.0)) {
      throw Error("instance_invalid", "incoming entries must be nonnegative");
    }
  }
  (void)V;
}

Solution Solution::idle(const ProblemInstance& instance) {
  int S = instance.num_stations();
  int V = instance.num_vehicles();
  int W = instance.num_trailers();
  int T = instance.horizon;

  Solution sol;
  sol.x = Tensor3<double>(S, S, T);
  sol.y_plus = Tensor3<int>(S, V, T);
  sol.y_minus = Tensor3<int>(S, V, T);
  sol.z = Tensor4<int>(S, S, V, T);
  sol.a_plus = Tensor3<int>(S, W, T);
  sol.a_minus = Tensor3<int>(S, W, T);
  sol.b = Tensor4<int>(S, S, W, T);
  sol.d_sharp = Tensor2<double>(S, T + 1);
  sol.d_star = Tensor2<int>(V, T + 1);
  sol.sigma = Tensor3<int>(V, S, T + 1);

  for (int s = 0; s < S; ++s) {
    sol.d_sharp(s, 0) = instance.stations[s].initial_bikes;
    for (int t = 1; t <= T; ++t) {
      sol.d_sharp(s, t) =
          instance.stations[s].initial_bikes + instance.incoming_at(s);
    }
  }
  for (int v = 0; v < V; ++v) {
    int home = instance.station_index(instance.vehicles[v].initial_station);
    for (int t = 0; t <= T; ++t) {
      sol.d_star(v, t) = instance.vehicles[v].initial_load;
      sol.sigma(v, home, t) = 1;
    }
  }
  // C13 demands one task per trailer and epoch; idle trailers take the
  // cheapest zero-move self task.
  if (W > 0) {
    Tensor3<double> values = task_values_for_planning(instance);
    for (int t = 0; t < T; ++t) {
      int best = 0;
      for (int s = 1; s < S; ++s) {
        if (values(s, s, t) < values(best, best, t)) best = s;
      }
      for (int w = 0; w < W; ++w) sol.b(best, best, w, t) = 1;
    }
  }
  return sol;
}

}  // namespace drrpvt
