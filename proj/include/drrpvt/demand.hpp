#pragma once

// Empirical demand: epoch-binned mean OD counts fitted from historical
// trips, Poisson scenario sampling, and the transition fractions C2 uses.

#include <cstdint>
#include <string>
#include <vector>

#include "drrpvt/tensor.hpp"

namespace drrpvt {

struct TripRecord {
  int64_t start_time = 0;  // unix seconds
  int64_t end_time = 0;
  std::string start_station;
  std::string end_station;
};

struct DayWindow {
  int start_hour = 5;
  int end_hour = 11;  // exclusive; (5,11) is the six-hour morning window
};

struct DemandModel {
  Tensor3<double> F;  // [s][s'][t] mean daily counts
  int epoch_minutes = 30;
  DayWindow day_window;
};

struct FitDiagnostics {
  int64_t rows = 0;
  int64_t retained = 0;
  int64_t dropped_unknown_station = 0;
  int64_t dropped_outside_window = 0;
  int64_t dropped_bad_times = 0;
  int days = 0;  // calendar span of the retained trips
};

// F[s][s'][t] = mean daily count of trips departing in epoch t, averaged
// over the calendar span of the retained data. epoch_minutes must divide the
// window. Trips outside the window or with unknown stations are counted in
// the diagnostics, never silently dropped.
DemandModel fit_empirical(const std::vector<TripRecord>& trips,
                          int epoch_minutes, DayWindow window,
                          const std::vector<std::string>& station_ids,
                          FitDiagnostics* diagnostics = nullptr);

// Independent Poisson draw per cell; deterministic per seed.
Tensor3<int> sample_scenario(const DemandModel& model, uint64_t seed);
Tensor3<int> sample_demand(const Tensor3<double>& mean, uint64_t seed);

// Alternative scenario mode: resample whole historical days uniformly.
Tensor3<int> bootstrap_scenario(const std::vector<TripRecord>& trips,
                                int epoch_minutes, DayWindow window,
                                const std::vector<std::string>& station_ids,
                                uint64_t seed);

// F[s][s'][t] / sum_s'' F[s][s''][t], with 0/0 = 0.
double transition_fraction(const Tensor3<double>& F, int s, int s2, int t);

}  // namespace drrpvt
