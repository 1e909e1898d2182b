#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "drrpvt/demand.hpp"
#include "drrpvt/error.hpp"
#include "drrpvt/rng.hpp"

using namespace drrpvt;

namespace {

// 2016-01-04 is a Monday; seconds for hh:mm on day `d`.
int64_t at(int day, int hour, int minute) {
  return (16804LL + day) * 86400 + hour * 3600 + minute * 60;
}

}  // namespace

TEST_CASE("fit: no trips yields an all-zero tensor") {
  DemandModel model = fit_empirical({}, 30, {5, 11}, {"a", "b"});
  CHECK(model.F.dim2() == 12);
  for (double v : model.F.data()) CHECK(v == 0.0);
}

TEST_CASE("fit: one trip in one day fills exactly its cell") {
  std::vector<TripRecord> trips = {{at(0, 8, 10), at(0, 8, 40), "a", "b"}};
  FitDiagnostics diag;
  DemandModel model = fit_empirical(trips, 30, {5, 11}, {"a", "b"}, &diag);
  CHECK(diag.retained == 1);
  CHECK(diag.days == 1);
  // 08:10 in a (5,11) window of 30-minute epochs is epoch 6.
  CHECK(model.F(0, 1, 6) == doctest::Approx(1.0));
  double total = 0.0;
  for (double v : model.F.data()) total += v;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("fit: totals times day span equals retained trips") {
  Rng rng(8);
  std::vector<TripRecord> trips;
  for (int i = 0; i < 400; ++i) {
    int day = static_cast<int>(rng.uniform_int(0, 6));
    int hour = static_cast<int>(rng.uniform_int(0, 23));
    int minute = static_cast<int>(rng.uniform_int(0, 59));
    std::string from = rng.uniform01() < 0.9 ? "a" : "ghost";
    std::string to = rng.uniform01() < 0.5 ? "a" : "b";
    trips.push_back({at(day, hour, minute), at(day, hour, minute) + 600,
                     from, to});
  }
  FitDiagnostics diag;
  DemandModel model = fit_empirical(trips, 30, {5, 11}, {"a", "b"}, &diag);
  CHECK(diag.rows == 400);
  CHECK(diag.retained + diag.dropped_unknown_station +
            diag.dropped_outside_window + diag.dropped_bad_times ==
        diag.rows);
  double total = 0.0;
  for (double v : model.F.data()) total += v;
  CHECK(total * diag.days == doctest::Approx(double(diag.retained)));
}

TEST_CASE("fit is invariant to trip order") {
  std::vector<TripRecord> trips;
  for (int i = 0; i < 40; ++i) {
    trips.push_back({at(i % 3, 5 + (i % 6), 7 * (i % 8)), at(i % 3, 12, 0),
                     i % 2 ? "a" : "b", i % 3 ? "b" : "a"});
  }
  DemandModel forward = fit_empirical(trips, 30, {5, 11}, {"a", "b"});
  std::reverse(trips.begin(), trips.end());
  DemandModel backward = fit_empirical(trips, 30, {5, 11}, {"a", "b"});
  CHECK(forward.F == backward.F);
}

TEST_CASE("fit rejects an empty station set and a non-dividing epoch") {
  CHECK_THROWS_AS(fit_empirical({}, 30, {5, 11}, {}), Error);
  CHECK_THROWS_AS(fit_empirical({}, 25, {5, 11}, {"a"}), Error);
}

TEST_CASE("sampling: zero mean, determinism, and the CLT band") {
  Tensor3<double> mean(1, 1, 3);
  mean(0, 0, 1) = 2.0;
  auto draw = sample_demand(mean, 99);
  CHECK(draw(0, 0, 0) == 0);
  CHECK(draw(0, 0, 2) == 0);
  CHECK(sample_demand(mean, 99) == draw);

  Tensor3<double> wide(1, 1, 10000, 2.0);
  auto many = sample_demand(wide, 7);
  double sum = 0.0;
  for (int v : many.data()) sum += v;
  double avg = sum / 10000.0;
  CHECK(avg > 1.9);
  CHECK(avg < 2.1);
}

TEST_CASE("transition fractions: point mass, empty row, and a 2:3 split") {
  Tensor3<double> F(2, 2, 2);
  F(0, 1, 0) = 4.0;
  CHECK(transition_fraction(F, 0, 1, 0) == doctest::Approx(1.0));
  CHECK(transition_fraction(F, 1, 0, 0) == doctest::Approx(0.0));  // 0/0
  F(0, 0, 1) = 2.0;
  F(0, 1, 1) = 3.0;
  CHECK(transition_fraction(F, 0, 0, 1) == doctest::Approx(0.4));
  CHECK(transition_fraction(F, 0, 1, 1) == doctest::Approx(0.6));
}

TEST_CASE("fractions per origin sum to one or zero") {
  Rng rng(31);
  Tensor3<double> F(3, 3, 4);
  for (auto& v : F.data()) {
    v = rng.uniform01() < 0.4 ? double(rng.uniform_int(0, 5)) : 0.0;
  }
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 4; ++t) {
      double row = 0.0, frac_sum = 0.0;
      for (int s2 = 0; s2 < 3; ++s2) {
        row += F(s, s2, t);
        frac_sum += transition_fraction(F, s, s2, t);
      }
      if (row > 0.0) {
        CHECK(frac_sum == doctest::Approx(1.0));
      } else {
        CHECK(frac_sum == doctest::Approx(0.0));
      }
    }
  }
}

TEST_CASE("bootstrap scenario draws a whole historical day") {
  std::vector<TripRecord> trips = {
      {at(0, 8, 10), at(0, 8, 40), "a", "b"},
      {at(0, 9, 10), at(0, 9, 40), "a", "b"},
      {at(1, 8, 10), at(1, 8, 40), "b", "a"},
  };
  auto scenario = bootstrap_scenario(trips, 30, {5, 11}, {"a", "b"}, 5);
  long total = 0;
  for (int v : scenario.data()) total += v;
  // Either day 0 (2 trips a->b) or day 1 (1 trip b->a), never a mixture.
  bool day0 = scenario(0, 1, 6) == 1 && scenario(0, 1, 8) == 1 && total == 2;
  bool day1 = scenario(1, 0, 6) == 1 && total == 1;
  CHECK((day0 || day1));
}
