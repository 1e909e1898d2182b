#include "drrpvt/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "drrpvt/error.hpp"

namespace drrpvt {

namespace {

using nlohmann::json;

template <class T>
json tensor2_to_json(const Tensor2<T>& t) {
  json rows = json::array();
  for (int i = 0; i < t.dim0(); ++i) {
    json row = json::array();
    for (int j = 0; j < t.dim1(); ++j) row.push_back(t(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
json tensor3_to_json(const Tensor3<T>& t) {
  json out = json::array();
  for (int i = 0; i < t.dim0(); ++i) {
    json mid = json::array();
    for (int j = 0; j < t.dim1(); ++j) {
      json row = json::array();
      for (int k = 0; k < t.dim2(); ++k) row.push_back(t(i, j, k));
      mid.push_back(std::move(row));
    }
    out.push_back(std::move(mid));
  }
  return out;
}

template <class T>
json tensor4_to_json(const Tensor4<T>& t) {
  json out = json::array();
  for (int i = 0; i < t.dim0(); ++i) {
    json a = json::array();
    for (int j = 0; j < t.dim1(); ++j) {
      json b = json::array();
      for (int k = 0; k < t.dim2(); ++k) {
        json row = json::array();
        for (int l = 0; l < t.dim3(); ++l) row.push_back(t(i, j, k, l));
        b.push_back(std::move(row));
      }
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

[[noreturn]] void bad_tensor(const std::string& name, const char* why) {
  throw Error("json_schema", std::string("tensor '") + name + "': " + why,
              {{"tensor", name}});
}

template <class T>
Tensor2<T> tensor2_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) bad_tensor(name, "expected array");
  int n0 = static_cast<int>(j.size());
  int n1 = n0 > 0 ? static_cast<int>(j[0].size()) : 0;
  Tensor2<T> t(n0, n1);
  for (int i = 0; i < n0; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n1) {
      bad_tensor(name, "ragged array");
    }
    for (int k = 0; k < n1; ++k) t(i, k) = j[i][k].get<T>();
  }
  return t;
}

template <class T>
Tensor3<T> tensor3_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) bad_tensor(name, "expected array");
  int n0 = static_cast<int>(j.size());
  int n1 = n0 > 0 ? static_cast<int>(j[0].size()) : 0;
  int n2 = (n0 > 0 && n1 > 0) ? static_cast<int>(j[0][0].size()) : 0;
  Tensor3<T> t(n0, n1, n2);
  for (int i = 0; i < n0; ++i) {
    if (static_cast<int>(j[i].size()) != n1) bad_tensor(name, "ragged array");
    for (int k = 0; k < n1; ++k) {
      if (static_cast<int>(j[i][k].size()) != n2) {
        bad_tensor(name, "ragged array");
      }
      for (int l = 0; l < n2; ++l) t(i, k, l) = j[i][k][l].get<T>();
    }
  }
  return t;
}

template <class T>
Tensor4<T> tensor4_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) bad_tensor(name, "expected array");
  int n0 = static_cast<int>(j.size());
  int n1 = n0 > 0 ? static_cast<int>(j[0].size()) : 0;
  int n2 = (n0 > 0 && n1 > 0) ? static_cast<int>(j[0][0].size()) : 0;
  int n3 = (n0 > 0 && n1 > 0 && n2 > 0) ? static_cast<int>(j[0][0][0].size()) : 0;
  Tensor4<T> t(n0, n1, n2, n3);
  for (int i = 0; i < n0; ++i)
    for (int k = 0; k < n1; ++k)
      for (int l = 0; l < n2; ++l) {
        if (static_cast<int>(j[i][k][l].size()) != n3) {
          bad_tensor(name, "ragged array");
        }
        for (int m = 0; m < n3; ++m) t(i, k, l, m) = j[i][k][l][m].get<T>();
      }
  return t;
}

// Round every double in the tree to the canonical precision.
json canonize(const json& j) {
  if (j.is_number_float()) return json(round9(j.get<double>()));
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = canonize(*it);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& el : j) out.push_back(canonize(el));
    return out;
  }
  return j;
}

void require_fields(const json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional,
                    const char* what) {
  for (const char* f : required) {
    if (!j.contains(f)) {
      throw Error("json_schema",
                  std::string(what) + " is missing field '" + f + "'",
                  {{"field", f}});
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* f : required) known |= (it.key() == f);
    for (const char* f : optional) known |= (it.key() == f);
    if (!known) {
      throw Error("json_schema",
                  std::string(what) + " has unknown field '" + it.key() + "'",
                  {{"field", it.key()}});
    }
  }
}

void require_schema(const json& j, const char* expected) {
  std::string found = j.value("schema", "<absent>");
  if (found != expected) {
    throw Error("json_schema", "schema version mismatch",
                {{"expected", expected}, {"found", found}});
  }
}

}  // namespace

double round9(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

json instance_to_json(const ProblemInstance& in) {
  json j;
  j["schema"] = kInstanceSchema;
  j["horizon"] = in.horizon;
  j["epoch_minutes"] = in.epoch_minutes;
  j["stations"] = json::array();
  for (const auto& s : in.stations) {
    j["stations"].push_back({{"id", s.id},
                             {"latitude", s.latitude},
                             {"longitude", s.longitude},
                             {"capacity", s.capacity},
                             {"initial_bikes", s.initial_bikes}});
  }
  j["vehicles"] = json::array();
  for (const auto& v : in.vehicles) {
    j["vehicles"].push_back({{"id", v.id},
                             {"capacity", v.capacity},
                             {"initial_station", v.initial_station},
                             {"initial_load", v.initial_load}});
  }
  j["trailers"] = json::array();
  for (const auto& w : in.trailers) {
    j["trailers"].push_back({{"id", w.id},
                             {"capacity", w.capacity},
                             {"max_distance_km", w.max_distance_km}});
  }
  j["demand"] = {{"F", tensor3_to_json(in.demand.F)},
                 {"horizon", in.demand.horizon}};
  j["economics"] = {{"R", tensor3_to_json(in.economics.R)},
                    {"P", tensor2_to_json(in.economics.P)},
                    {"xi", in.economics.xi},
                    {"budget", in.economics.budget}};
  j["distances"] = {{"D", tensor2_to_json(in.distances.D)}};
  if (!in.incoming.empty()) j["incoming"] = in.incoming;
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  require_schema(j, kInstanceSchema);
  require_fields(j,
                 {"schema", "horizon", "epoch_minutes", "stations", "vehicles",
                  "trailers", "demand", "economics", "distances"},
                 {"incoming"}, "instance");
  ProblemInstance in;
  in.horizon = j.at("horizon").get<int>();
  in.epoch_minutes = j.at("epoch_minutes").get<int>();
  for (const auto& js : j.at("stations")) {
    require_fields(js, {"id", "latitude", "longitude", "capacity",
                        "initial_bikes"}, {"name"}, "station");
    Station s;
    s.id = js.at("id").get<std::string>();
    s.latitude = js.at("latitude").get<double>();
    s.longitude = js.at("longitude").get<double>();
    s.capacity = js.at("capacity").get<int>();
    s.initial_bikes = js.at("initial_bikes").get<int>();
    in.stations.push_back(std::move(s));
  }
  for (const auto& jv : j.at("vehicles")) {
    require_fields(jv, {"id", "capacity", "initial_station", "initial_load"},
                   {}, "vehicle");
    Vehicle v;
    v.id = jv.at("id").get<std::string>();
    v.capacity = jv.at("capacity").get<int>();
    v.initial_station = jv.at("initial_station").get<std::string>();
    v.initial_load = jv.at("initial_load").get<int>();
    in.vehicles.push_back(std::move(v));
  }
  for (const auto& jw : j.at("trailers")) {
    require_fields(jw, {"id", "capacity", "max_distance_km"}, {}, "trailer");
    Trailer w;
    w.id = jw.at("id").get<std::string>();
    w.capacity = jw.at("capacity").get<int>();
    w.max_distance_km = jw.at("max_distance_km").get<double>();
    in.trailers.push_back(std::move(w));
  }
  in.demand.F = tensor3_from_json<double>(j.at("demand").at("F"), "F");
  in.demand.horizon = j.at("demand").at("horizon").get<int>();
  in.economics.R = tensor3_from_json<double>(j.at("economics").at("R"), "R");
  in.economics.P = tensor2_from_json<double>(j.at("economics").at("P"), "P");
  in.economics.xi = j.at("economics").at("xi").get<double>();
  in.economics.budget = j.at("economics").at("budget").get<double>();
  in.distances.D = tensor2_from_json<double>(j.at("distances").at("D"), "D");
  if (j.contains("incoming")) {
    in.incoming = j.at("incoming").get<std::vector<double>>();
  }
  in.validate();
  return in;
}

json solution_to_json(const Solution& sol) {
  json j;
  j["schema"] = kSolutionSchema;
  j["x"] = tensor3_to_json(sol.x);
  j["y_plus"] = tensor3_to_json(sol.y_plus);
  j["y_minus"] = tensor3_to_json(sol.y_minus);
  j["z"] = tensor4_to_json(sol.z);
  j["a_plus"] = tensor3_to_json(sol.a_plus);
  j["a_minus"] = tensor3_to_json(sol.a_minus);
  j["b"] = tensor4_to_json(sol.b);
  j["d_sharp"] = tensor2_to_json(sol.d_sharp);
  j["d_star"] = tensor2_to_json(sol.d_star);
  j["sigma"] = tensor3_to_json(sol.sigma);
  return j;
}

Solution solution_from_json(const json& j) {
  require_schema(j, kSolutionSchema);
  require_fields(j,
                 {"schema", "x", "y_plus", "y_minus", "z", "a_plus", "a_minus",
                  "b", "d_sharp", "d_star", "sigma"},
                 {}, "solution");
  Solution sol;
  sol.x = tensor3_from_json<double>(j.at("x"), "x");
  sol.y_plus = tensor3_from_json<int>(j.at("y_plus"), "y_plus");
  sol.y_minus = tensor3_from_json<int>(j.at("y_minus"), "y_minus");
  sol.z = tensor4_from_json<int>(j.at("z"), "z");
  sol.a_plus = tensor3_from_json<int>(j.at("a_plus"), "a_plus");
  sol.a_minus = tensor3_from_json<int>(j.at("a_minus"), "a_minus");
  sol.b = tensor4_from_json<int>(j.at("b"), "b");
  sol.d_sharp = tensor2_from_json<double>(j.at("d_sharp"), "d_sharp");
  sol.d_star = tensor2_from_json<int>(j.at("d_star"), "d_star");
  sol.sigma = tensor3_from_json<int>(j.at("sigma"), "sigma");
  return sol;
}

json milp_to_json(const MilpProblem& p) {
  json j;
  j["n_vars"] = p.n_vars;
  j["sense"] = p.sense == Sense::Maximize ? "max" : "min";
  j["objective"] = p.objective;
  j["lower"] = p.lower;
  j["upper"] = p.upper;
  j["integrality"] = p.integrality;
  if (!p.var_names.empty()) j["var_names"] = p.var_names;
  json rows = json::array();
  for (const auto& c : p.constraints) {
    json row;
    row["name"] = c.name;
    row["relation"] = c.relation == Relation::LessEqual    ? "<="
                      : c.relation == Relation::GreaterEqual ? ">="
                                                             : "==";
    row["rhs"] = c.rhs;
    json terms = json::array();
    for (const auto& t : c.terms) terms.push_back({{"var", t.var}, {"coef", t.coef}});
    row["terms"] = std::move(terms);
    rows.push_back(std::move(row));
  }
  j["constraints"] = std::move(rows);
  return j;
}

json load_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error("io", "cannot open file for reading", {{"path", path}});
  }
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error("json_parse", e.what(),
                {{"path", path}, {"byte", std::to_string(e.byte)}});
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error("io", "cannot open file for writing", {{"path", path}});
  }
  f << content;
}

std::string canonical_dump(const json& j) {
  return canonize(j).dump(2) + "\n";
}

ProblemInstance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

void save_instance(const ProblemInstance& instance, const std::string& path) {
  write_text(path, canonical_dump(instance_to_json(instance)));
}

Solution load_solution(const std::string& path) {
  return solution_from_json(load_json(path));
}

void save_solution(const Solution& sol, const std::string& path) {
  write_text(path, canonical_dump(solution_to_json(sol)));
}

}  // namespace drrpvt
