#include "drrpvt/clustering.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "drrpvt/error.hpp"
#include "drrpvt/rng.hpp"

namespace drrpvt {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

struct XY {
  double x, y;
};

// Local equirectangular projection; adequate at city scale where k-means
// needs a plain vector space.
std::vector<XY> project(const std::vector<Station>& stations) {
  double lat0 = 0.0;
  for (const auto& s : stations) lat0 += s.latitude;
  lat0 /= stations.empty() ? 1.0 : stations.size();
  double coslat = std::cos(lat0 * kDegToRad);
  std::vector<XY> out;
  out.reserve(stations.size());
  for (const auto& s : stations) {
    out.push_back({kEarthRadiusKm * s.longitude * kDegToRad * coslat,
                   kEarthRadiusKm * s.latitude * kDegToRad});
  }
  return out;
}

double sq_dist(const XY& a, const XY& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  double p1 = lat1 * kDegToRad, p2 = lat2 * kDegToRad;
  double dp = (lat2 - lat1) * kDegToRad, dl = (lon2 - lon1) * kDegToRad;
  double a = std::sin(dp / 2) * std::sin(dp / 2) +
             std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

int default_cluster_count(int n_stations) {
  return (n_stations + 4) / 5;
}

MainStationClustering compute_main_stations(const std::vector<Station>& stations,
                                            int k, uint64_t seed) {
  int n = static_cast<int>(stations.size());
  if (k < 1 || k > n) {
    throw Error("clustering", "cluster count must be within [1, n_stations]",
                {{"k", std::to_string(k)}, {"n", std::to_string(n)}});
  }
  std::vector<XY> pts = project(stations);
  Rng rng(seed);

  // k-means++ seeding.
  std::vector<XY> centers;
  centers.push_back(pts[rng.uniform_int(0, n - 1)]);
  std::vector<double> d2(n);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      d2[i] = 1e300;
      for (const auto& c : centers) d2[i] = std::min(d2[i], sq_dist(pts[i], c));
      total += d2[i];
    }
    if (total <= 0.0) {
      // All remaining points coincide with a center; spread deterministically.
      centers.push_back(pts[centers.size() % n]);
      continue;
    }
    double pick = rng.uniform01() * total;
    int chosen = n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += d2[i];
      if (acc >= pick) {
        chosen = i;
        break;
      }
    }
    centers.push_back(pts[chosen]);
  }

  std::vector<int> assign(n, 0), prev(n, -1);
  for (int iter = 0; iter < 200 && assign != prev; ++iter) {
    prev = assign;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double bestd = sq_dist(pts[i], centers[0]);
      for (int c = 1; c < k; ++c) {
        double d = sq_dist(pts[i], centers[c]);
        if (d < bestd - 1e-15) {
          bestd = d;
          best = c;
        }
      }
      assign[i] = best;
    }
    // Recompute centers; empty clusters reseed from the farthest point.
    std::vector<XY> sums(k, {0.0, 0.0});
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums[assign[i]].x += pts[i].x;
      sums[assign[i]].y += pts[i].y;
      counts[assign[i]]++;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
      } else {
        int far = 0;
        double fard = -1.0;
        for (int i = 0; i < n; ++i) {
          double d = sq_dist(pts[i], centers[assign[i]]);
          if (d > fard) {
            fard = d;
            far = i;
          }
        }
        centers[c] = pts[far];
        assign[far] = c;
      }
    }
  }

  MainStationClustering out;
  out.k = k;
  out.assignment = assign;
  out.representatives.assign(k, -1);
  // Medoids by geodesic distance restore what the projection distorted.
  for (int c = 0; c < k; ++c) {
    double best = 1e300;
    for (int i = 0; i < n; ++i) {
      if (assign[i] != c) continue;
      double total = 0.0;
      for (int j = 0; j < n; ++j) {
        if (assign[j] != c) continue;
        total += haversine_km(stations[i].latitude, stations[i].longitude,
                              stations[j].latitude, stations[j].longitude);
      }
      if (total < best - 1e-12) {
        best = total;
        out.representatives[c] = i;
      }
    }
  }
  return out;
}

ReducedInstance reduce_instance(const ProblemInstance& in,
                                const MainStationClustering& cl) {
  int S = in.num_stations(), T = in.horizon, k = cl.k;
  if (static_cast<int>(cl.assignment.size()) != S) {
    throw Error("clustering", "clustering does not cover the instance");
  }
  ReducedInstance out;
  out.members.assign(k, {});
  for (int s = 0; s < S; ++s) out.members[cl.assignment[s]].push_back(s);

  // Reduced station per cluster at the medoid's coordinates.
  ProblemInstance& red = out.reduced;
  red.horizon = T;
  red.epoch_minutes = in.epoch_minutes;
  for (int c = 0; c < k; ++c) {
    const Station& rep = in.stations[cl.representatives[c]];
    Station agg;
    agg.id = rep.id;
    agg.latitude = rep.latitude;
    agg.longitude = rep.longitude;
    agg.capacity = 0;
    agg.initial_bikes = 0;
    for (int s : out.members[c]) {
      agg.capacity += in.stations[s].capacity;
      agg.initial_bikes += in.stations[s].initial_bikes;
    }
    red.stations.push_back(std::move(agg));
  }
  if (in.num_vehicles() > k) {
    throw Error("clustering", "more vehicles than clusters; C7 cannot hold on "
                              "the reduced instance",
                {{"vehicles", std::to_string(in.num_vehicles())},
                 {"k", std::to_string(k)}});
  }
  std::vector<char> cluster_taken(k, 0);
  for (const auto& v : in.vehicles) {
    Vehicle rv = v;
    int want = cl.assignment[in.station_index(v.initial_station)];
    if (cluster_taken[want]) {
      // Two vehicles in one cluster: push the later one (by list order) to
      // the nearest free cluster so starts stay distinct.
      int rep = cl.representatives[want];
      int best = -1;
      double bestd = 1e300;
      for (int c = 0; c < k; ++c) {
        if (cluster_taken[c]) continue;
        double d = in.distances.D(rep, cl.representatives[c]);
        if (d < bestd - 1e-12) {
          bestd = d;
          best = c;
        }
      }
      want = best;
    }
    cluster_taken[want] = 1;
    rv.initial_station = red.stations[want].id;
    red.vehicles.push_back(std::move(rv));
  }

  red.demand.F = Tensor3<double>(k, k, T);
  red.demand.horizon = T;
  red.economics.R = Tensor3<double>(k, k, T);
  red.economics.P = Tensor2<double>(k, k);
  red.distances.D = Tensor2<double>(k, k);
  red.economics.xi = in.economics.xi;
  red.economics.budget = in.economics.budget;
  if (!in.incoming.empty()) red.incoming.assign(k, 0.0);

  Tensor3<double> weighted_r(k, k, T);
  for (int s = 0; s < S; ++s) {
    int c = cl.assignment[s];
    if (!in.incoming.empty()) red.incoming[c] += in.incoming[s];
    for (int s2 = 0; s2 < S; ++s2) {
      int c2 = cl.assignment[s2];
      for (int t = 0; t < T; ++t) {
        double f = in.demand.F(s, s2, t);
        red.demand.F(c, c2, t) += f;  // diagonal keeps intra-cluster volume
        weighted_r(c, c2, t) += in.economics.R(s, s2, t) * f;
      }
    }
  }
  for (int c = 0; c < k; ++c) {
    int rc = cl.representatives[c];
    for (int c2 = 0; c2 < k; ++c2) {
      int rc2 = cl.representatives[c2];
      red.distances.D(c, c2) = in.distances.D(rc, rc2);
      red.economics.P(c, c2) = (c == c2) ? 0.0 : in.economics.P(rc, rc2);
      for (int t = 0; t < T; ++t) {
        double f = red.demand.F(c, c2, t);
        red.economics.R(c, c2, t) = f > 0.0 ? weighted_r(c, c2, t) / f : 0.0;
      }
    }
  }
  // Clamp reduced incoming to aggregate free docks so planning stays feasible.
  if (!red.incoming.empty()) {
    for (int c = 0; c < k; ++c) {
      red.incoming[c] = std::min(
          red.incoming[c],
          double(red.stations[c].capacity - red.stations[c].initial_bikes));
    }
  }

  // Subinstances: members with within-cluster demand; trailers round-robin;
  // budget proportional to demand volume.
  std::vector<double> volume(k, 0.0);
  double total_volume = 0.0;
  for (int c = 0; c < k; ++c) {
    for (int s : out.members[c])
      for (int s2 : out.members[c])
        for (int t = 0; t < T; ++t) volume[c] += in.demand.F(s, s2, t);
    total_volume += volume[c];
  }
  out.trailer_cluster.resize(in.num_trailers());
  for (int w = 0; w < in.num_trailers(); ++w) out.trailer_cluster[w] = w % k;

  for (int c = 0; c < k; ++c) {
    ProblemInstance sub;
    sub.horizon = T;
    sub.epoch_minutes = in.epoch_minutes;
    int m = static_cast<int>(out.members[c].size());
    for (int s : out.members[c]) sub.stations.push_back(in.stations[s]);
    for (int w = 0; w < in.num_trailers(); ++w) {
      if (out.trailer_cluster[w] == c) sub.trailers.push_back(in.trailers[w]);
    }
    sub.demand.F = Tensor3<double>(m, m, T);
    sub.demand.horizon = T;
    sub.economics.R = Tensor3<double>(m, m, T);
    sub.economics.P = Tensor2<double>(m, m);
    sub.distances.D = Tensor2<double>(m, m);
    sub.economics.xi = in.economics.xi;
    sub.economics.budget =
        total_volume > 0.0 ? in.economics.budget * volume[c] / total_volume
                           : in.economics.budget / k;
    if (!in.incoming.empty()) sub.incoming.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      int s = out.members[c][i];
      if (!in.incoming.empty()) sub.incoming[i] = in.incoming[s];
      for (int j = 0; j < m; ++j) {
        int s2 = out.members[c][j];
        sub.economics.P(i, j) = in.economics.P(s, s2);
        sub.distances.D(i, j) = in.distances.D(s, s2);
        for (int t = 0; t < T; ++t) {
          sub.demand.F(i, j, t) = in.demand.F(s, s2, t);
          sub.economics.R(i, j, t) = in.economics.R(s, s2, t);
        }
      }
    }
    out.subinstances.push_back(std::move(sub));
  }
  return out;
}

std::string clustering_csv(const std::vector<Station>& stations,
                           const MainStationClustering& cl) {
  std::string out = "station_id,cluster_id,representative_flag\n";
  for (size_t s = 0; s < stations.size(); ++s) {
    int c = cl.assignment[s];
    bool rep = cl.representatives[c] == static_cast<int>(s);
    out += stations[s].id + "," + std::to_string(c) + "," + (rep ? "1" : "0") +
           "\n";
  }
  return out;
}

ClusteredSolveReport solve_clustered_ldd(const ProblemInstance& instance, int k,
                                         uint64_t seed, const LddParams& params) {
  auto t0 = std::chrono::steady_clock::now();
  ClusteredSolveReport report;
  report.clustering = compute_main_stations(instance.stations, k, seed);
  ReducedInstance parts = reduce_instance(instance, report.clustering);

  report.reduced = run_ldd(parts.reduced, params);
  report.combined_profit = report.reduced.primal_value;
  for (const auto& sub : parts.subinstances) {
    LddParams sub_params = params;
    sub_params.mode = PlanMode::TrailersOnly;
    report.subs.push_back(run_ldd(sub, sub_params));
    report.combined_profit += report.subs.back().primal_value;
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace drrpvt
