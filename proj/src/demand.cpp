#include "drrpvt/demand.hpp"

#include <map>
#include <set>

#include "drrpvt/error.hpp"
#include "drrpvt/rng.hpp"

namespace drrpvt {

namespace {

constexpr int64_t kSecondsPerDay = 86400;

int window_epochs(int epoch_minutes, DayWindow w) {
  int minutes = (w.end_hour - w.start_hour) * 60;
  if (minutes <= 0 || epoch_minutes <= 0 || minutes % epoch_minutes != 0) {
    throw Error("demand_window",
                "epoch_minutes must divide the day window exactly",
                {{"window_minutes", std::to_string(minutes)},
                 {"epoch_minutes", std::to_string(epoch_minutes)}});
  }
  return minutes / epoch_minutes;
}

}  // namespace

DemandModel fit_empirical(const std::vector<TripRecord>& trips,
                          int epoch_minutes, DayWindow window,
                          const std::vector<std::string>& station_ids,
                          FitDiagnostics* diagnostics) {
  if (station_ids.empty()) {
    throw Error("demand_fit", "station set must not be empty");
  }
  int T = window_epochs(epoch_minutes, window);
  int S = static_cast<int>(station_ids.size());
  std::map<std::string, int> index;
  for (int s = 0; s < S; ++s) index[station_ids[s]] = s;

  FitDiagnostics diag;
  diag.rows = static_cast<int64_t>(trips.size());
  Tensor3<double> counts(S, S, T);
  int64_t day_min = 0, day_max = 0;
  bool have_day = false;

  for (const auto& trip : trips) {
    if (trip.end_time < trip.start_time) {
      ++diag.dropped_bad_times;
      continue;
    }
    auto it_s = index.find(trip.start_station);
    auto it_e = index.find(trip.end_station);
    if (it_s == index.end() || it_e == index.end()) {
      ++diag.dropped_unknown_station;
      continue;
    }
    int64_t day = trip.start_time / kSecondsPerDay;
    int64_t second_of_day = trip.start_time % kSecondsPerDay;
    int64_t offset = second_of_day - int64_t(window.start_hour) * 3600;
    int epoch = static_cast<int>(offset / (60 * epoch_minutes));
    if (offset < 0 || epoch >= T) {
      ++diag.dropped_outside_window;
      continue;
    }
    counts(it_s->second, it_e->second, epoch) += 1.0;
    ++diag.retained;
    if (!have_day) {
      day_min = day_max = day;
      have_day = true;
    } else {
      day_min = std::min(day_min, day);
      day_max = std::max(day_max, day);
    }
  }

  diag.days = have_day ? static_cast<int>(day_max - day_min + 1) : 0;
  DemandModel model;
  model.epoch_minutes = epoch_minutes;
  model.day_window = window;
  model.F = Tensor3<double>(S, S, T);
  if (diag.days > 0) {
    for (size_t i = 0; i < counts.data().size(); ++i) {
      model.F.data()[i] = counts.data()[i] / diag.days;
    }
  }
  if (diagnostics) *diagnostics = diag;
  return model;
}

Tensor3<int> sample_demand(const Tensor3<double>& mean, uint64_t seed) {
  Rng rng(seed);
  Tensor3<int> out(mean.dim0(), mean.dim1(), mean.dim2());
  for (size_t i = 0; i < mean.data().size(); ++i) {
    out.data()[i] = rng.poisson(mean.data()[i]);
  }
  return out;
}

Tensor3<int> sample_scenario(const DemandModel& model, uint64_t seed) {
  return sample_demand(model.F, seed);
}

Tensor3<int> bootstrap_scenario(const std::vector<TripRecord>& trips,
                                int epoch_minutes, DayWindow window,
                                const std::vector<std::string>& station_ids,
                                uint64_t seed) {
  int T = window_epochs(epoch_minutes, window);
  int S = static_cast<int>(station_ids.size());
  std::map<std::string, int> index;
  for (int s = 0; s < S; ++s) index[station_ids[s]] = s;

  // Bucket retained trips by calendar day, then draw one whole day.
  std::map<int64_t, std::vector<std::tuple<int, int, int>>> by_day;
  for (const auto& trip : trips) {
    if (trip.end_time < trip.start_time) continue;
    auto it_s = index.find(trip.start_station);
    auto it_e = index.find(trip.end_station);
    if (it_s == index.end() || it_e == index.end()) continue;
    int64_t offset =
        trip.start_time % kSecondsPerDay - int64_t(window.start_hour) * 3600;
    int epoch = static_cast<int>(offset / (60 * epoch_minutes));
    if (offset < 0 || epoch >= T) continue;
    by_day[trip.start_time / kSecondsPerDay].push_back(
        {it_s->second, it_e->second, epoch});
  }
  Tensor3<int> out(S, S, T);
  if (by_day.empty()) return out;
  Rng rng(seed);
  auto it = by_day.begin();
  std::advance(it, rng.uniform_int(0, static_cast<int64_t>(by_day.size()) - 1));
  for (const auto& [s, s2, t] : it->second) out(s, s2, t) += 1;
  return out;
}

double transition_fraction(const Tensor3<double>& F, int s, int s2, int t) {
  double row = 0.0;
  for (int k = 0; k < F.dim1(); ++k) row += F(s, k, t);
  if (row <= 0.0) return 0.0;
  return F(s, s2, t) / row;
}

}  // namespace drrpvt
