#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "drrpvt/error.hpp"
#include "drrpvt/ingest.hpp"
#include "drrpvt/json_io.hpp"

using namespace drrpvt;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("stations: empty file with header yields an empty list") {
  auto path = temp_file("drrpvt_st_empty.csv",
                        "id,name,latitude,longitude,capacity\n");
  ReadDiagnostics diag;
  auto records = read_stations(path, {}, &diag);
  CHECK(records.empty());
  CHECK(diag.rows == 0);
}

TEST_CASE("stations: one well-formed row parses exactly") {
  auto path = temp_file("drrpvt_st_one.csv",
                        "id,name,latitude,longitude,capacity\n"
                        "a1,\"Main, North\",42.3601,-71.0589,19\n");
  auto records = read_stations(path);
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "a1");
  CHECK(records[0].name == "Main, North");
  CHECK(records[0].latitude == doctest::Approx(42.3601));
  CHECK(records[0].longitude == doctest::Approx(-71.0589));
  CHECK(records[0].capacity == 19);
}

TEST_CASE("stations: malformed capacity lands in diagnostics") {
  auto path = temp_file("drrpvt_st_bad.csv",
                        "id,name,latitude,longitude,capacity\n"
                        "a1,x,42.0,-71.0,abc\n"
                        "a2,y,42.1,-71.1,15\n");
  ReadDiagnostics diag;
  auto records = read_stations(path, {}, &diag);
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "a2");
  CHECK(diag.rows == 2);
  REQUIRE(diag.issues.size() == 1);
  CHECK(diag.issues[0].find("capacity") != std::string::npos);
  CHECK(static_cast<int64_t>(records.size() + diag.issues.size()) == diag.rows);
}

TEST_CASE("stations: a missing mandatory column is a structured error") {
  auto path = temp_file("drrpvt_st_col.csv", "id,name,latitude,longitude\n");
  try {
    read_stations(path);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "csv");
    bool names_column = false;
    for (const auto& [k, v] : e.context()) {
      names_column |= (k == "column" && v == "capacity");
    }
    CHECK(names_column);
  }
}

TEST_CASE("stations: column remapping follows the mapping file") {
  auto path = temp_file("drrpvt_st_map.csv",
                        "Station ID,Lat,Lon,Docks\n"
                        "b7,42.2,-71.2,21\n");
  ColumnMapping mapping;
  mapping.rename = {{"id", "Station ID"},
                    {"latitude", "Lat"},
                    {"longitude", "Lon"},
                    {"capacity", "Docks"},
                    {"name", "Station ID"}};
  auto records = read_stations(path, mapping);
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "b7");
  CHECK(records[0].capacity == 21);
}

TEST_CASE("trips: both ISO-8601 separators parse") {
  auto path = temp_file("drrpvt_tr.csv",
                        "start_time,end_time,start_station,end_station\n"
                        "2016-01-04T08:31:00,2016-01-04T08:47:00,a,b\n"
                        "2016-01-05 09:00:00,2016-01-05 09:20:00,b,a\n"
                        "garbage,2016-01-05 09:20:00,b,a\n");
  ReadDiagnostics diag;
  auto trips = read_trips(path, {}, &diag);
  REQUIRE(trips.size() == 2);
  CHECK(trips[0].start_station == "a");
  CHECK(trips[1].start_time - trips[0].start_time ==
        86400 + 29 * 60);  // next day, 08:31 -> 09:00
  CHECK(diag.issues.size() == 1);
}

TEST_CASE("synthetic generation is deterministic and at the paper scale") {
  SyntheticConfig cfg;  // default: 60 stations, 2 vehicles, 7 trailers
  cfg.seed = 5;
  ProblemInstance a = generate_synthetic(cfg);
  ProblemInstance b = generate_synthetic(cfg);
  CHECK(a.num_stations() == 60);
  CHECK(a.num_vehicles() == 2);
  CHECK(a.num_trailers() == 7);
  CHECK(canonical_dump(instance_to_json(a)) ==
        canonical_dump(instance_to_json(b)));

  SyntheticConfig other = cfg;
  other.seed = 6;
  ProblemInstance c = generate_synthetic(other);
  CHECK(canonical_dump(instance_to_json(a)) !=
        canonical_dump(instance_to_json(c)));
}

TEST_CASE("synthetic generation rejects empty systems") {
  SyntheticConfig cfg;
  cfg.n_stations = 0;
  CHECK_THROWS_AS(generate_synthetic(cfg), Error);
}

TEST_CASE("instance json round-trips byte-identically") {
  SyntheticConfig cfg;
  cfg.n_stations = 8;
  cfg.n_vehicles = 1;
  cfg.n_trailers = 2;
  cfg.horizon = 4;
  cfg.seed = 13;
  ProblemInstance in = generate_synthetic(cfg);
  auto path = (std::filesystem::temp_directory_path() / "drrpvt_inst.json").string();
  save_instance(in, path);
  ProblemInstance loaded = load_instance(path);
  auto path2 = (std::filesystem::temp_directory_path() / "drrpvt_inst2.json").string();
  save_instance(loaded, path2);

  std::ifstream f1(path), f2(path2);
  std::string s1((std::istreambuf_iterator<char>(f1)),
                 std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)),
                 std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  CHECK(!s1.empty());
}

TEST_CASE("unknown top-level fields are rejected by name") {
  SyntheticConfig cfg;
  cfg.n_stations = 3;
  cfg.n_vehicles = 1;
  cfg.n_trailers = 1;
  cfg.horizon = 2;
  ProblemInstance in = generate_synthetic(cfg);
  nlohmann::json j = instance_to_json(in);
  j["surprise"] = 1;
  try {
    instance_from_json(j);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "json_schema");
    CHECK(std::string(e.what()).find("surprise") != std::string::npos);
  }
}

TEST_CASE("schema version mismatches report found and expected") {
  nlohmann::json j;
  j["schema"] = "drrpvt-instance/999";
  try {
    instance_from_json(j);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "json_schema");
    bool found = false, expected = false;
    for (const auto& [k, v] : e.context()) {
      found |= (k == "found" && v == "drrpvt-instance/999");
      expected |= (k == "expected" && v == std::string(kInstanceSchema));
    }
    CHECK(found);
    CHECK(expected);
  }
}

TEST_CASE("truncated files report a parse error with a byte offset") {
  auto path = temp_file("drrpvt_trunc.json", "{\"schema\": \"drrpvt-inst");
  try {
    load_instance(path);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "json_parse");
    bool has_byte = false;
    for (const auto& [k, v] : e.context()) has_byte |= (k == "byte");
    CHECK(has_byte);
  }
}

TEST_CASE("instances assemble from station and trip data") {
  std::vector<StationRecord> stations = {
      {"a", "A", 42.36, -71.06, 20},
      {"b", "B", 42.37, -71.05, 16},
  };
  std::vector<TripRecord> trips;
  for (int day = 0; day < 3; ++day) {
    trips.push_back({(16804 + day) * 86400LL + 8 * 3600,
                     (16804 + day) * 86400LL + 8 * 3600 + 900, "a", "b"});
  }
  FitDiagnostics diag;
  IngestEconomics econ;
  econ.n_vehicles = 1;
  econ.n_trailers = 2;
  ProblemInstance in =
      build_instance_from_data(stations, trips, 30, {5, 11}, econ, &diag);
  CHECK(in.num_stations() == 2);
  CHECK(in.horizon == 12);
  CHECK(diag.retained == 3);
  CHECK(in.demand.F(0, 1, 6) == doctest::Approx(1.0));  // one per day at 08:00
  CHECK(in.economics.P(0, 1) > 0.0);
  CHECK(in.economics.R(0, 1, 0) > 1.0);
  in.validate();
}
