#pragma once

// Dataset ingestion (station and trip CSVs with column remapping), the
// parametric synthetic-instance generator, and assembly of a full
// ProblemInstance from fitted demand.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drrpvt/demand.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

struct StationRecord {
  std::string id;
  std::string name;
  double latitude = 0.0;
  double longitude = 0.0;
  int capacity = 0;
};

// canonical column name -> actual header in the file.
struct ColumnMapping {
  std::map<std::string, std::string> rename;
  std::string resolve(const std::string& canonical) const {
    auto it = rename.find(canonical);
    return it == rename.end() ? canonical : it->second;
  }
};

struct ReadDiagnostics {
  int64_t rows = 0;  // data rows read (excluding the header)
  std::vector<std::string> issues;  // one entry per excluded row
};

// Station CSV: id,name,latitude,longitude,capacity (header required).
// Malformed rows land in diagnostics; records + issues = rows read.
std::vector<StationRecord> read_stations(const std::string& path,
                                         const ColumnMapping& mapping = {},
                                         ReadDiagnostics* diagnostics = nullptr);

// Trip CSV: start_time,end_time,start_station,end_station with ISO-8601
// timestamps ("2016-01-04T08:31:00" or with a space separator).
std::vector<TripRecord> read_trips(const std::string& path,
                                   const ColumnMapping& mapping = {},
                                   ReadDiagnostics* diagnostics = nullptr);

struct SyntheticConfig {
  int n_stations = 60;
  int n_vehicles = 2;
  int n_trailers = 7;
  int horizon = 12;  // six hours of 30-minute epochs
  double demand_intensity = 1.0;
  double extent_km = 8.0;
  uint64_t seed = 1;
};

// Morning-commute synthetic instance: uniform station placement, capacities
// in [15, 40] at half fill, OD demand peaked toward a central station,
// revenue and fuel cost proportional to distance. Pure function of config.
ProblemInstance generate_synthetic(const SyntheticConfig& config);

struct IngestEconomics {
  double fare_base = 1.0;
  double fare_per_km = 0.5;
  double fuel_per_km = 0.8;
  double xi = 1.5;
  double budget = 100.0;
  int n_vehicles = 3;
  int vehicle_capacity = 20;
  int n_trailers = 20;
  int trailer_capacity = 4;
  double trailer_range_km = 5.0;
};

// Full instance from real data: geodesic distances, fitted mean demand as F,
// distance-based fares and fuel costs, fleets spread over the stations.
ProblemInstance build_instance_from_data(const std::vector<StationRecord>& stations,
                                         const std::vector<TripRecord>& trips,
                                         int epoch_minutes, DayWindow window,
                                         const IngestEconomics& econ,
                                         FitDiagnostics* fit_diagnostics = nullptr);

}  // namespace drrpvt
