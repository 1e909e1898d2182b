#pragma once

// Domain types for the DRRPVT problem: stations, fleets, demand, economics,
// and the full decision-variable bundle over a planning horizon.
//
// Time convention: decisions happen at epochs t = 0..T-1. Station stocks
// d_sharp and vehicle loads d_star are boundary states over t = 0..T.
// Customer trips departing at epoch t are in transit at the t+1 boundary and
// join the destination stock at t+2. sigma[v][s][t] = 1 means vehicle v sits
// idle at s during epoch t; a vehicle departing s at t is represented in z,
// not sigma.

#include <string>
#include <vector>

#include "drrpvt/tensor.hpp"

namespace drrpvt {

struct Station {
  std::string id;
  double latitude = 0.0;
  double longitude = 0.0;
  int capacity = 0;       // dock count C#
  int initial_bikes = 0;  // d# at t = 0
};

struct Vehicle {
  std::string id;
  int capacity = 1;  // C*
  std::string initial_station;
  int initial_load = 0;
};

struct Trailer {
  std::string id;
  int capacity = 1;  // bikes per task, typically 3-5
  double max_distance_km = 5.0;
};

struct DemandTensor {
  Tensor3<double> F;  // [s][s'][t], expected (or realized) requests
  int horizon = 0;
};

struct EconomicModel {
  Tensor3<double> R;  // [s][s'][t] revenue per hired bike
  Tensor2<double> P;  // [s][s'] vehicle routing cost, zero diagonal
  double xi = 0.0;    // unit value of lost demand
  double budget = 0.0;  // B, cap on trailer payments
};

struct DistanceMatrix {
  Tensor2<double> D;  // km, symmetric, zero diagonal
};

struct ProblemInstance {
  std::vector<Station> stations;
  std::vector<Vehicle> vehicles;
  std::vector<Trailer> trailers;
  DemandTensor demand;
  EconomicModel economics;
  DistanceMatrix distances;
  int horizon = 0;
  int epoch_minutes = 30;
  // Bikes already in transit that land during epoch 0 (used by the rolling
  // planner); empty means none.
  std::vector<double> incoming;

  int num_stations() const { return static_cast<int>(stations.size()); }
  int num_vehicles() const { return static_cast<int>(vehicles.size()); }
  int num_trailers() const { return static_cast<int>(trailers.size()); }

  // Index of a station id, or -1 when unknown.
  int station_index(const std::string& id) const;

  double incoming_at(int s) const {
    return incoming.empty() ? 0.0 : incoming[s];
  }

  // Throws Error on any cross-reference or dimension inconsistency.
  void validate() const;
};

struct Solution {
  Tensor3<double> x;       // [s][s'][t] hired-bike flow
  Tensor3<int> y_plus;     // [s][v][t] vehicle pickups
  Tensor3<int> y_minus;    // [s][v][t] vehicle dropoffs
  Tensor4<int> z;          // [s][s'][v][t] vehicle move indicator
  Tensor3<int> a_plus;     // [s][w][t] trailer pickups
  Tensor3<int> a_minus;    // [s][w][t] trailer dropoffs
  Tensor4<int> b;          // [s][s'][w][t] trailer task indicator
  Tensor2<double> d_sharp; // [s][0..T] station stock
  Tensor2<int> d_star;     // [v][0..T] vehicle load
  Tensor3<int> sigma;      // [v][s][0..T] idle-presence indicator

  // The do-nothing plan: zero flows and moves, stocks propagated, vehicles
  // parked at their initial stations. Feasible for any valid instance up to
  // C13 (which forces one trailer task per epoch; idle self-tasks with zero
  // quantity fill that role and are added here).
  static Solution idle(const ProblemInstance& instance);

  bool operator==(const Solution& o) const = default;
};

struct ConstraintViolation {
  std::string constraint_id;  // "C1".."C15"
  int s = -1, s2 = -1, v = -1, w = -1, t = -1;
  double magnitude = 0.0;
  std::string detail;
};

}  // namespace drrpvt
