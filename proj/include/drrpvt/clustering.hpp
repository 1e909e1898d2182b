#pragma once

// Main-station computation: seeded k-means over a local equirectangular
// projection of the station coordinates, medoid representatives by geodesic
// distance, and the instance reduction that sends carrier vehicles to the
// cluster level while trailers work inside each cluster.

#include <cstdint>
#include <string>
#include <vector>

#include "drrpvt/ldd.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

struct MainStationClustering {
  std::vector<int> assignment;       // station index -> cluster id
  std::vector<int> representatives;  // cluster id -> station index (medoid)
  int k = 0;
};

// Great-circle distance, Earth radius 6371.0 km.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

MainStationClustering compute_main_stations(const std::vector<Station>& stations,
                                            int k, uint64_t seed);

// Default cluster count: one main station per five base stations.
int default_cluster_count(int n_stations);

struct ReducedInstance {
  ProblemInstance reduced;                  // one station per cluster, vehicles
  std::vector<ProblemInstance> subinstances;  // per cluster, trailers only
  std::vector<std::vector<int>> members;    // cluster -> original station idx
  std::vector<int> trailer_cluster;         // trailer index -> cluster id
};

// Aggregates capacity, stock, and demand by cluster (cross-cluster demand on
// the off-diagonal, within-cluster demand both on the reduced diagonal and in
// the owning subinstance), takes D and P between representatives, splits the
// budget across subinstances proportionally to their demand volume.
ReducedInstance reduce_instance(const ProblemInstance& instance,
                                const MainStationClustering& clustering);

// csv: station_id,cluster_id,representative_flag
std::string clustering_csv(const std::vector<Station>& stations,
                           const MainStationClustering& clustering);

struct ClusteredSolveReport {
  MainStationClustering clustering;
  LddResult reduced;
  std::vector<LddResult> subs;
  double combined_profit = 0.0;  // planning-layer total: reduced + subs
  double wall_time_seconds = 0.0;
};

// Algorithm step 1 + the dual loop on the reduced layers.
ClusteredSolveReport solve_clustered_ldd(const ProblemInstance& instance, int k,
                                         uint64_t seed, const LddParams& params);

}  // namespace drrpvt
