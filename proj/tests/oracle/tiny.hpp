#pragma once

// Random miniature instances for oracle and property tests: a handful of
// stations, at most one vehicle and one trailer, small capacities, integer
// demand. Diagonal demand stays zero so idle self-tasks are free and the
// restricted modes embed into the joint one at no cost.

#include <cstdint>

#include "drrpvt/types.hpp"

namespace drrpvt::testing {

struct TinyConfig {
  int n_stations = 2;
  int horizon = 2;
  int n_vehicles = 1;  // 0 or 1 for brute-force compatibility
  int n_trailers = 1;  // 0 or 1
  int max_station_capacity = 4;
  int max_vehicle_capacity = 3;
  int max_trailer_capacity = 2;
  int max_demand = 2;     // per OD cell
  double demand_density = 0.5;
  double budget = 50.0;   // generous unless a test narrows it
  uint64_t seed = 1;
};

ProblemInstance random_tiny_instance(const TinyConfig& cfg);

}  // namespace drrpvt::testing
