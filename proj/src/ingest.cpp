#include "drrpvt/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "drrpvt/clustering.hpp"
#include "drrpvt/error.hpp"
#include "drrpvt/rng.hpp"

namespace drrpvt {

namespace {

// Minimal CSV reader: comma-separated, double quotes for embedded commas.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvFile read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("io", "cannot open file for reading", {{"path", path}});
  CsvFile csv;
  std::string line;
  if (!std::getline(f, line)) {
    throw Error("csv", "file is empty; a header row is required",
                {{"path", path}});
  }
  csv.header = split_csv_line(line);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    csv.rows.push_back(split_csv_line(line));
  }
  return csv;
}

int column_of(const CsvFile& csv, const std::string& name,
              const std::string& path) {
  for (size_t i = 0; i < csv.header.size(); ++i) {
    if (csv.header[i] == name) return static_cast<int>(i);
  }
  throw Error("csv", "missing mandatory column",
              {{"column", name}, {"path", path}});
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  *out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_int(const std::string& s, int* out) {
  double v;
  if (!parse_double(s, &v) || v != std::floor(v)) return false;
  *out = static_cast<int>(v);
  return true;
}

// days_from_civil (Howard Hinnant's algorithm); keeps timestamp parsing
// timezone-free and bit-stable across platforms.
int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  int64_t era = (y >= 0 ? y : y - 399) / 400;
  int yoe = static_cast<int>(y - era * 400);
  int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

bool parse_timestamp(const std::string& s, int64_t* out) {
  // YYYY-MM-DD[T ]HH:MM[:SS]
  int y, mo, d, h, mi, se = 0;
  if (s.size() < 16) return false;
  char sep = s[10];
  if (sep != 'T' && sep != ' ') return false;
  auto num = [&](size_t pos, size_t len, int* v) {
    int acc = 0;
    for (size_t i = pos; i < pos + len; ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
      acc = acc * 10 + (s[i] - '0');
    }
    *v = acc;
    return true;
  };
  if (!num(0, 4, &y) || s[4] != '-' || !num(5, 2, &mo) || s[7] != '-' ||
      !num(8, 2, &d) || !num(11, 2, &h) || s[13] != ':' || !num(14, 2, &mi)) {
    return false;
  }
  if (s.size() >= 19 && s[16] == ':') {
    if (!num(17, 2, &se)) return false;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) {
    return false;
  }
  *out = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
  return true;
}

}  // namespace

std::vector<StationRecord> read_stations(const std::string& path,
                                         const ColumnMapping& mapping,
                                         ReadDiagnostics* diagnostics) {
  CsvFile csv = read_csv(path);
  int c_id = column_of(csv, mapping.resolve("id"), path);
  int c_lat = column_of(csv, mapping.resolve("latitude"), path);
  int c_lon = column_of(csv, mapping.resolve("longitude"), path);
  int c_cap = column_of(csv, mapping.resolve("capacity"), path);
  int c_name = -1;
  try {
    c_name = column_of(csv, mapping.resolve("name"), path);
  } catch (const Error&) {
    // name column is optional
  }

  ReadDiagnostics diag;
  std::vector<StationRecord> out;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    ++diag.rows;
    int width = static_cast<int>(row.size());
    auto bad = [&](const std::string& why) {
      diag.issues.push_back("row " + std::to_string(r + 2) + ": " + why);
    };
    if (c_id >= width || c_lat >= width || c_lon >= width || c_cap >= width) {
      bad("too few fields");
      continue;
    }
    StationRecord rec;
    rec.id = row[c_id];
    if (c_name >= 0 && c_name < width) rec.name = row[c_name];
    if (rec.id.empty()) {
      bad("empty id");
      continue;
    }
    if (!parse_double(row[c_lat], &rec.latitude) ||
        !parse_double(row[c_lon], &rec.longitude)) {
      bad("unparseable coordinates");
      continue;
    }
    if (!parse_int(row[c_cap], &rec.capacity) || rec.capacity < 0) {
      bad("unparseable capacity '" + row[c_cap] + "'");
      continue;
    }
    out.push_back(std::move(rec));
  }
  if (diagnostics) *diagnostics = std::move(diag);
  return out;
}

std::vector<TripRecord> read_trips(const std::string& path,
                                   const ColumnMapping& mapping,
                                   ReadDiagnostics* diagnostics) {
  CsvFile csv = read_csv(path);
  int c_start = column_of(csv, mapping.resolve("start_time"), path);
  int c_end = column_of(csv, mapping.resolve("end_time"), path);
  int c_from = column_of(csv, mapping.resolve("start_station"), path);
  int c_to = column_of(csv, mapping.resolve("end_station"), path);

  ReadDiagnostics diag;
  std::vector<TripRecord> out;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    ++diag.rows;
    int width = static_cast<int>(row.size());
    if (c_start >= width || c_end >= width || c_from >= width ||
        c_to >= width) {
      diag.issues.push_back("row " + std::to_string(r + 2) + ": too few fields");
      continue;
    }
    TripRecord trip;
    trip.start_station = row[c_from];
    trip.end_station = row[c_to];
    if (!parse_timestamp(row[c_start], &trip.start_time) ||
        !parse_timestamp(row[c_end], &trip.end_time)) {
      diag.issues.push_back("row " + std::to_string(r + 2) +
                            ": unparseable timestamp");
      continue;
    }
    out.push_back(std::move(trip));
  }
  if (diagnostics) *diagnostics = std::move(diag);
  return out;
}

ProblemInstance generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.n_stations < 1) {
    throw Error("synthetic", "n_stations must be positive");
  }
  if (cfg.n_vehicles > cfg.n_stations) {
    throw Error("synthetic", "more vehicles than stations");
  }
  Rng rng(cfg.seed);
  int S = cfg.n_stations, T = cfg.horizon;
  const double lat0 = 42.36, lon0 = -71.06;
  const double km_per_deg_lat = 110.574;
  const double km_per_deg_lon = 111.320 * std::cos(lat0 * M_PI / 180.0);

  ProblemInstance in;
  in.horizon = T;
  in.epoch_minutes = 30;
  char buf[32];
  for (int s = 0; s < S; ++s) {
    Station st;
    std::snprintf(buf, sizeof buf, "s%03d", s);
    st.id = buf;
    st.latitude = lat0 + rng.uniform(-0.5, 0.5) * cfg.extent_km / km_per_deg_lat;
    st.longitude = lon0 + rng.uniform(-0.5, 0.5) * cfg.extent_km / km_per_deg_lon;
    st.capacity = static_cast<int>(rng.uniform_int(15, 40));
    st.initial_bikes = st.capacity / 2;
    in.stations.push_back(std::move(st));
  }

  in.distances.D = Tensor2<double>(S, S);
  for (int s = 0; s < S; ++s)
    for (int s2 = 0; s2 < S; ++s2)
      in.distances.D(s, s2) =
          (s == s2) ? 0.0
                    : haversine_km(in.stations[s].latitude,
                                   in.stations[s].longitude,
                                   in.stations[s2].latitude,
                                   in.stations[s2].longitude);

  // Commute target: the station closest to the centroid.
  int center = 0;
  {
    double clat = 0.0, clon = 0.0;
    for (const auto& st : in.stations) {
      clat += st.latitude;
      clon += st.longitude;
    }
    clat /= S;
    clon /= S;
    double best = 1e300;
    for (int s = 0; s < S; ++s) {
      double d = haversine_km(in.stations[s].latitude, in.stations[s].longitude,
                              clat, clon);
      if (d < best) {
        best = d;
        center = s;
      }
    }
  }

  // Sparse morning-peak OD demand: up to three preferred destinations per
  // origin, weighted toward the center, with a mid-horizon intensity bump.
  in.demand.F = Tensor3<double>(S, S, T);
  in.demand.horizon = T;
  in.economics.R = Tensor3<double>(S, S, T);
  for (int s = 0; s < S; ++s) {
    std::vector<std::pair<double, int>> weighted;
    for (int s2 = 0; s2 < S; ++s2) {
      if (s2 == s) continue;
      double w = std::exp(-in.distances.D(s, s2) / 3.0) *
                 (s2 == center ? 3.0 : 1.0);
      weighted.push_back({-w, s2});
    }
    std::sort(weighted.begin(), weighted.end());
    int keep = std::min<int>(3, static_cast<int>(weighted.size()));
    double total = 0.0;
    for (int i = 0; i < keep; ++i) total += -weighted[i].first;
    double base = rng.uniform(0.5, 1.5);
    for (int t = 0; t < T; ++t) {
      double peak = 1.0 + std::sin(M_PI * (t + 0.5) / T);
      for (int i = 0; i < keep; ++i) {
        int s2 = weighted[i].second;
        double share = -weighted[i].first / total;
        in.demand.F(s, s2, t) =
            cfg.demand_intensity * base * peak * share * 2.0;
      }
    }
  }
  for (int s = 0; s < S; ++s)
    for (int s2 = 0; s2 < S; ++s2)
      for (int t = 0; t < T; ++t)
        in.economics.R(s, s2, t) = 1.0 + 0.5 * in.distances.D(s, s2);

  in.economics.P = Tensor2<double>(S, S);
  for (int s = 0; s < S; ++s)
    for (int s2 = 0; s2 < S; ++s2)
      in.economics.P(s, s2) = 0.8 * in.distances.D(s, s2);

  for (int v = 0; v < cfg.n_vehicles; ++v) {
    Vehicle veh;
    std::snprintf(buf, sizeof buf, "v%02d", v);
    veh.id = buf;
    veh.capacity = 20;
    veh.initial_station =
        in.stations[(static_cast<long>(v) * S) / cfg.n_vehicles].id;
    veh.initial_load = 5;
    in.vehicles.push_back(std::move(veh));
  }
  for (int w = 0; w < cfg.n_trailers; ++w) {
    Trailer tr;
    std::snprintf(buf, sizeof buf, "w%02d", w);
    tr.id = buf;
    tr.capacity = 4;
    tr.max_distance_km = 5.0;
    in.trailers.push_back(std::move(tr));
  }

  in.economics.xi = 1.5;
  in.economics.budget = 3.0 * std::max(1, cfg.n_trailers) * T;
  in.validate();
  return in;
}

ProblemInstance build_instance_from_data(const std::vector<StationRecord>& stations,
                                         const std::vector<TripRecord>& trips,
                                         int epoch_minutes, DayWindow window,
                                         const IngestEconomics& econ,
                                         FitDiagnostics* fit_diagnostics) {
  if (stations.empty()) {
    throw Error("ingest", "no stations to build an instance from");
  }
  std::vector<std::string> ids;
  for (const auto& st : stations) ids.push_back(st.id);
  DemandModel model =
      fit_empirical(trips, epoch_minutes, window, ids, fit_diagnostics);

  int S = static_cast<int>(stations.size());
  ProblemInstance in;
  in.horizon = model.F.dim2();
  in.epoch_minutes = epoch_minutes;
  for (const auto& rec : stations) {
    Station st;
    st.id = rec.id;
    st.latitude = rec.latitude;
    st.longitude = rec.longitude;
    st.capacity = rec.capacity;
    st.initial_bikes = rec.capacity / 2;
    in.stations.push_back(std::move(st));
  }
  in.demand.F = model.F;
  in.demand.horizon = in.horizon;
  in.distances.D = Tensor2<double>(S, S);
  in.economics.P = Tensor2<double>(S, S);
  in.economics.R = Tensor3<double>(S, S, in.horizon);
  for (int s = 0; s < S; ++s) {
    for (int s2 = 0; s2 < S; ++s2) {
      double d = (s == s2) ? 0.0
                           : haversine_km(stations[s].latitude,
                                          stations[s].longitude,
                                          stations[s2].latitude,
                                          stations[s2].longitude);
      in.distances.D(s, s2) = d;
      in.economics.P(s, s2) = econ.fuel_per_km * d;
      for (int t = 0; t < in.horizon; ++t) {
        in.economics.R(s, s2, t) = econ.fare_base + econ.fare_per_km * d;
      }
    }
  }
  int V = std::min(econ.n_vehicles, S);
  char buf[32];
  for (int v = 0; v < V; ++v) {
    Vehicle veh;
    std::snprintf(buf, sizeof buf, "v%02d", v);
    veh.id = buf;
    veh.capacity = econ.vehicle_capacity;
    veh.initial_station = stations[(static_cast<long>(v) * S) / V].id;
    veh.initial_load = 0;
    in.vehicles.push_back(std::move(veh));
  }
  for (int w = 0; w < econ.n_trailers; ++w) {
    Trailer tr;
    std::snprintf(buf, sizeof buf, "w%02d", w);
    tr.id = buf;
    tr.capacity = econ.trailer_capacity;
    tr.max_distance_km = econ.trailer_range_km;
    in.trailers.push_back(std::move(tr));
  }
  in.economics.xi = econ.xi;
  in.economics.budget = econ.budget;
  in.validate();
  return in;
}

}  // namespace drrpvt
