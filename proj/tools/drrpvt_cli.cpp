// drrpvt: command-line toolkit for the joint bike-repositioning model.
// Subcommands: ingest, synth, cluster, solve, simulate, experiment, report.
// Every artifact path written on success is printed to stdout; failures
// emit one machine-readable JSON error line on stderr and a nonzero exit.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "drrpvt/clustering.hpp"
#include "drrpvt/demand.hpp"
#include "drrpvt/error.hpp"
#include "drrpvt/ingest.hpp"
#include "drrpvt/json_io.hpp"
#include "drrpvt/ldd.hpp"
#include "drrpvt/model.hpp"
#include "drrpvt/rng.hpp"
#include "drrpvt/simulator.hpp"

using namespace drrpvt;
using nlohmann::json;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct GlobalArgs {
  std::string output_dir = "out";
  uint64_t seed = 1;
  int jobs = 1;
};

std::string out_path(const GlobalArgs& g, const std::string& name) {
  return (std::filesystem::path(g.output_dir) / name).string();
}

void emit_artifact(const std::string& path) { std::cout << path << "\n"; }

void write_artifact(const GlobalArgs& g, const std::string& name,
                    const std::string& content) {
  std::string path = out_path(g, name);
  write_text(path, content);
  emit_artifact(path);
}

PlanMode parse_mode(const std::string& mode) {
  if (mode == "joint") return PlanMode::Joint;
  if (mode == "vehicles") return PlanMode::VehiclesOnly;
  if (mode == "trailers") return PlanMode::TrailersOnly;
  throw Error("usage", "unknown mode '" + mode + "'");
}

Policy parse_policy(const std::string& name) {
  if (name == "drrpvt") return Policy::Drrpvt;
  if (name == "drrpv") return Policy::Drrpv;
  if (name == "drrpt") return Policy::Drrpt;
  if (name == "noop") return Policy::Noop;
  throw Error("usage", "unknown policy '" + name + "'");
}

Planner parse_planner(const std::string& name) {
  if (name == "auto") return Planner::Auto;
  if (name == "milp") return Planner::ExactMilp;
  if (name == "ldd") return Planner::Ldd;
  if (name == "clustered") return Planner::ClusteredLdd;
  throw Error("usage", "unknown planner '" + name + "'");
}

json report_to_json(const SimulationReport& report) {
  json j;
  j["schema"] = "drrpvt-report/1";
  j["policy"] = report.policy;
  j["seed"] = report.seed;
  j["totals"] = {{"requested", report.total_requested},
                 {"served", report.total_served},
                 {"lost", report.total_lost},
                 {"revenue", report.total_revenue},
                 {"routing_cost", report.total_routing_cost},
                 {"trailer_payments", report.total_trailer_payments},
                 {"profit", report.profit}};
  json epochs = json::array();
  for (const auto& m : report.per_epoch) {
    epochs.push_back({{"epoch", m.epoch},
                      {"requested", m.requested},
                      {"served", m.served},
                      {"lost", m.lost},
                      {"redirected", m.redirected},
                      {"revenue", m.revenue},
                      {"routing_cost", m.routing_cost},
                      {"trailer_payments", m.trailer_payments}});
  }
  j["per_epoch"] = std::move(epochs);
  return j;
}

// --- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string instance_path;
  std::string solver = "milp";
  std::string mode = "joint";
  bool clustered = false;
  int k = 0;
  double time_limit = 300.0;
  double slave_time_limit = 10.0;
  double gamma0 = 1.0;
  double delta = 0.01;
  int max_iters = 500;
  std::string dump_milp;
};

int cmd_solve(const GlobalArgs& g, const SolveArgs& a) {
  ProblemInstance in = load_instance(a.instance_path);
  PlanMode mode = parse_mode(a.mode);
  json summary;
  summary["schema"] = "drrpvt-solve/1";
  summary["instance"] = a.instance_path;
  summary["solver"] = a.solver;
  summary["mode"] = a.mode;

  if (a.solver == "milp") {
    ModelMilp built = build_milp(in, mode);
    if (!a.dump_milp.empty()) {
      write_text(a.dump_milp, canonical_dump(milp_to_json(built.problem)));
      emit_artifact(a.dump_milp);
    }
    SolverOptions opt;
    opt.time_limit_seconds = a.time_limit;
    SolveResult res = solve_milp(built.problem, opt);
    summary["status"] = res.status == SolveStatus::Optimal      ? "optimal"
                        : res.status == SolveStatus::Infeasible ? "infeasible"
                                                                : "time_limit";
    summary["wall_seconds"] = res.wall_time_seconds;
    summary["nodes"] = res.node_count;
    summary["best_bound"] = res.best_bound;
    if (res.has_incumbent()) {
      summary["objective"] = res.incumbent_value;
      Solution sol = decode_solution(in, built.layout, res.incumbent);
      save_solution(sol, out_path(g, "solution.json"));
      emit_artifact(out_path(g, "solution.json"));
    }
  } else if (a.solver == "ldd") {
    LddParams params;
    params.mode = mode;
    params.gamma.gamma0 = a.gamma0;
    params.delta_rel = a.delta;
    params.max_iterations = a.max_iters;
    params.solver.time_limit_seconds = a.slave_time_limit;

    double t0 = now_seconds();
    if (a.clustered) {
      int k = a.k > 0 ? a.k : default_cluster_count(in.num_stations());
      ClusteredSolveReport rep = solve_clustered_ldd(in, k, g.seed, params);
      summary["status"] = "heuristic";
      summary["wall_seconds"] = rep.wall_time_seconds;
      summary["objective"] = rep.combined_profit;
      summary["k"] = k;
      summary["reduced_profit"] = rep.reduced.primal_value;
      summary["reduced_dual_bound"] = rep.reduced.dual_bound;
      save_solution(rep.reduced.solution, out_path(g, "solution_reduced.json"));
      emit_artifact(out_path(g, "solution_reduced.json"));
      write_artifact(g, "gap_trace.csv", gap_trace_csv(rep.reduced.gap_trace));
      write_artifact(g, "clustering.csv",
                     clustering_csv(in.stations, rep.clustering));
    } else {
      LddResult res = run_ldd(in, params);
      summary["status"] = res.converged ? "converged" : "iteration_limit";
      summary["wall_seconds"] = now_seconds() - t0;
      summary["objective"] = res.primal_value;
      summary["dual_bound"] = res.dual_bound;
      summary["iterations"] = res.iterations_used;
      save_solution(res.solution, out_path(g, "solution.json"));
      emit_artifact(out_path(g, "solution.json"));
      write_artifact(g, "gap_trace.csv", gap_trace_csv(res.gap_trace));
    }
  } else {
    throw Error("usage", "unknown solver '" + a.solver + "'");
  }

  write_artifact(g, "solve_summary.json", canonical_dump(summary));
  return 0;
}

// --- simulate ------------------------------------------------------------

struct SimulateArgs {
  std::string instance_path;
  std::string policy = "drrpvt";
  std::string planner = "auto";
  int lookahead = 2;
  int k = 0;
  double time_limit = 60.0;
  double slave_time_limit = 5.0;
  int max_iters = 40;
  int bidders = 3;
  bool no_auction = false;
};

SimulationReport simulate_one(const ProblemInstance& in, const SimulateArgs& a,
                              Policy policy, uint64_t seed) {
  PolicyConfig pc;
  pc.policy = policy;
  pc.planner = parse_planner(a.planner);
  pc.lookahead = a.lookahead;
  pc.k = a.k;
  pc.milp.time_limit_seconds = a.time_limit;
  pc.ldd.max_iterations = a.max_iters;
  pc.ldd.solver.time_limit_seconds = a.slave_time_limit;
  pc.run_auction = !a.no_auction;
  pc.bidders_per_task = a.bidders;
  return run_policy(in, pc, seed);
}

void write_report(const GlobalArgs& g, const SimulationReport& report) {
  std::string tag = report.policy;
  write_artifact(g, "report_" + tag + ".json",
                 canonical_dump(report_to_json(report)));
  write_artifact(g, "epochs_" + tag + ".csv", report_epoch_csv(report));
  write_artifact(g, "scatter_" + tag + ".csv", report_scatter_csv(report));
}

int cmd_simulate(const GlobalArgs& g, const SimulateArgs& a) {
  ProblemInstance in = load_instance(a.instance_path);
  if (a.policy != "all") {
    SimulationReport report = simulate_one(in, a, parse_policy(a.policy), g.seed);
    write_report(g, report);
    return 0;
  }

  SimulationReport vt = simulate_one(in, a, Policy::Drrpvt, g.seed);
  SimulationReport v = simulate_one(in, a, Policy::Drrpv, g.seed);
  SimulationReport t = simulate_one(in, a, Policy::Drrpt, g.seed);
  SimulationReport noop = simulate_one(in, a, Policy::Noop, g.seed);
  for (const auto& r : {vt, v, t, noop}) write_report(g, r);

  CompareMetrics m = compare_metrics(vt.profit, v.profit, t.profit,
                                     vt.total_lost, v.total_lost,
                                     t.total_lost);
  auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string("NA");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return std::string(buf);
  };
  std::string csv = "metric,value\n";
  csv += "G_v," + cell(m.g_v) + "\n";
  csv += "L_v," + cell(m.l_v) + "\n";
  csv += "G_t," + cell(m.g_t) + "\n";
  csv += "L_t," + cell(m.l_t) + "\n";
  csv += "U_vt," + std::to_string(vt.profit) + "\n";
  csv += "U_v," + std::to_string(v.profit) + "\n";
  csv += "U_t," + std::to_string(t.profit) + "\n";
  csv += "E_vt," + std::to_string(vt.total_lost) + "\n";
  csv += "E_v," + std::to_string(v.total_lost) + "\n";
  csv += "E_t," + std::to_string(t.total_lost) + "\n";
  write_artifact(g, "comparison.csv", csv);
  return 0;
}

// --- experiment ----------------------------------------------------------

struct ExperimentArgs {
  std::string name;
  int instances = 5;
  int stations = 30;
  int k = 6;
  int vehicles = 1;
  int trailers = 2;
  int horizon = 2;
  int min_stations = 5;
  int max_stations = 30;
  int step = 5;
  double time_limit = 60.0;
  double slave_time_limit = 5.0;
  int max_iters = 8;
  std::string vary = "main-stations";
  std::string ratios = "2,3,5,8,12";
};

SyntheticConfig sweep_config(const ExperimentArgs& a, int stations,
                             int vehicles, int trailers, uint64_t seed) {
  SyntheticConfig cfg;
  cfg.n_stations = stations;
  cfg.n_vehicles = vehicles;
  cfg.n_trailers = trailers;
  cfg.horizon = a.horizon;
  cfg.seed = seed;
  return cfg;
}

int cmd_experiment(const GlobalArgs& g, const ExperimentArgs& a) {
  if (a.name == "main-stations") {
    std::string csv =
        "instance,profit_with_ms,runtime_with_ms,profit_without_ms,"
        "runtime_without_ms\n";
    for (int i = 0; i < a.instances; ++i) {
      ProblemInstance in = generate_synthetic(
          sweep_config(a, a.stations, a.vehicles, a.trailers,
                       mix_seed(g.seed, i)));
      LddParams params;
      params.max_iterations = a.max_iters;
      params.solver.time_limit_seconds = a.slave_time_limit;

      double t0 = now_seconds();
      LddResult plain = run_ldd(in, params);
      double plain_time = now_seconds() - t0;

      ClusteredSolveReport clustered =
          solve_clustered_ldd(in, a.k, mix_seed(g.seed, 1000 + i), params);

      char line[256];
      std::snprintf(line, sizeof line, "%d,%.6g,%.3f,%.6g,%.3f\n", i,
                    clustered.combined_profit, clustered.wall_time_seconds,
                    plain.primal_value, plain_time);
      csv += line;
    }
    write_artifact(g, "main_stations.csv", csv);
    return 0;
  }

  if (a.name == "runtime-sweep") {
    int points = (a.max_stations - a.min_stations) / a.step + 1;
    std::vector<std::string> rows(points);
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, g.jobs));
#pragma omp parallel for schedule(dynamic)
#endif
    for (int p = 0; p < points; ++p) {
      int stations = a.min_stations + p * a.step;
      ProblemInstance in = generate_synthetic(
          sweep_config(a, stations, a.vehicles, a.trailers,
                       mix_seed(g.seed, stations)));

      SolverOptions milp_opt;
      milp_opt.time_limit_seconds = a.time_limit;
      double t0 = now_seconds();
      SolveResult milp = solve_milp(build_milp(in, PlanMode::Joint).problem,
                                    milp_opt);
      double milp_time = now_seconds() - t0;

      LddParams params;
      params.max_iterations = a.max_iters;
      params.solver.time_limit_seconds = a.slave_time_limit;
      t0 = now_seconds();
      LddResult ldd = run_ldd(in, params);
      double ldd_time = now_seconds() - t0;

      char line[256];
      std::snprintf(line, sizeof line, "%d,%.3f,%.3f,%d,%d\n", stations,
                    milp_time, ldd_time,
                    milp.status == SolveStatus::Optimal ? 1 : 0,
                    ldd.converged ? 1 : 0);
      rows[p] = line;
    }
    std::string csv =
        "stations,milp_seconds,ldd_seconds,milp_completed,ldd_converged\n";
    for (const auto& row : rows) csv += row;
    write_artifact(g, "runtime_sweep.csv", csv);
    return 0;
  }

  if (a.name == "ratio-sweep") {
    std::vector<double> ratios;
    std::string token;
    for (char c : a.ratios + ",") {
      if (c == ',') {
        if (!token.empty()) ratios.push_back(std::stod(token));
        token.clear();
      } else {
        token += c;
      }
    }
    std::string csv = "ratio,profit\n";
    for (double ratio : ratios) {
      int stations = a.stations;
      int vehicles = a.vehicles;
      int trailers = a.trailers;
      int k = a.k;
      if (a.vary == "main-stations") {
        k = std::max(1, static_cast<int>(stations / ratio));
      } else if (a.vary == "vehicles") {
        vehicles = std::max(1, static_cast<int>(stations / ratio));
      } else if (a.vary == "trailers") {
        trailers = std::max(1, static_cast<int>(stations / ratio));
      } else {
        throw Error("usage", "unknown vary target '" + a.vary + "'");
      }
      ProblemInstance in = generate_synthetic(
          sweep_config(a, stations, vehicles, trailers, g.seed));
      LddParams params;
      params.max_iterations = a.max_iters;
      params.solver.time_limit_seconds = a.slave_time_limit;
      ClusteredSolveReport rep =
          solve_clustered_ldd(in, std::min(k, stations), g.seed, params);
      char line[128];
      std::snprintf(line, sizeof line, "%.4g,%.6g\n", ratio,
                    rep.combined_profit);
      csv += line;
    }
    write_artifact(g, "ratio_sweep.csv", csv);
    return 0;
  }

  throw Error("usage", "unknown experiment '" + a.name +
                           "'; expected main-stations, runtime-sweep, or "
                           "ratio-sweep");
}

// --- report --------------------------------------------------------------

int cmd_report(const GlobalArgs& g, const std::string& input,
               const std::string& out) {
  std::string rendered;
  if (input.size() > 4 && input.substr(input.size() - 4) == ".csv") {
    std::ifstream f(input);
    if (!f) throw Error("io", "cannot open file", {{"path", input}});
    std::string line;
    bool header = true;
    while (std::getline(f, line)) {
      std::string row = "|";
      std::string cell;
      int cells = 0;
      for (char c : line + ",") {
        if (c == ',') {
          row += " " + cell + " |";
          cell.clear();
          ++cells;
        } else if (c != '\r') {
          cell += c;
        }
      }
      rendered += row + "\n";
      if (header) {
        rendered += "|";
        for (int i = 0; i < cells; ++i) rendered += " --- |";
        rendered += "\n";
        header = false;
      }
    }
  } else {
    json j = load_json(input);
    if (j.value("schema", "") == "drrpvt-report/1") {
      rendered += "# Simulation report: " + j["policy"].get<std::string>() + "\n\n";
      rendered += "| metric | value |\n| --- | --- |\n";
      for (auto it = j["totals"].begin(); it != j["totals"].end(); ++it) {
        rendered += "| " + it.key() + " | " + it.value().dump() + " |\n";
      }
    } else {
      rendered += "```json\n" + j.dump(2) + "\n```\n";
    }
  }
  if (out.empty()) {
    std::cout << rendered;
  } else {
    write_text(out, rendered);
    emit_artifact(out);
  }
  (void)g;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DRRPVT: dynamic bike repositioning with carrier vehicles and "
               "crowdsourced trailers"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--output-dir", g.output_dir, "artifact directory");
  app.add_option("--seed", g.seed, "global random seed");
  app.add_option("--jobs", g.jobs, "parallel workers for sweeps");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic instance");
  SyntheticConfig syn;
  std::string synth_out;
  synth->add_option("--stations", syn.n_stations);
  synth->add_option("--vehicles", syn.n_vehicles);
  synth->add_option("--trailers", syn.n_trailers);
  synth->add_option("--horizon", syn.horizon);
  synth->add_option("--intensity", syn.demand_intensity);
  synth->add_option("--extent", syn.extent_km, "square side in km");
  synth->add_option("--out", synth_out, "instance path");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "build an instance from CSVs");
  std::string stations_csv, trips_csv, map_json, ingest_out;
  int epoch_minutes = 30;
  DayWindow window;
  IngestEconomics econ;
  ingest->add_option("--stations-csv", stations_csv)->required();
  ingest->add_option("--trips-csv", trips_csv)->required();
  ingest->add_option("--map", map_json, "column mapping JSON");
  ingest->add_option("--epoch-minutes", epoch_minutes);
  ingest->add_option("--window-start", window.start_hour);
  ingest->add_option("--window-end", window.end_hour);
  ingest->add_option("--fare-base", econ.fare_base);
  ingest->add_option("--fare-per-km", econ.fare_per_km);
  ingest->add_option("--fuel-per-km", econ.fuel_per_km);
  ingest->add_option("--xi", econ.xi);
  ingest->add_option("--budget", econ.budget);
  ingest->add_option("--vehicles", econ.n_vehicles);
  ingest->add_option("--trailers", econ.n_trailers);
  ingest->add_option("--vehicle-capacity", econ.vehicle_capacity);
  ingest->add_option("--trailer-capacity", econ.trailer_capacity);
  ingest->add_option("--trailer-range", econ.trailer_range_km);
  ingest->add_option("--out", ingest_out);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "compute main stations");
  std::string cluster_instance, cluster_out;
  int cluster_k = 0;
  cluster->add_option("--instance", cluster_instance)->required();
  cluster->add_option("--k", cluster_k, "cluster count; 0 = ceil(S/5)");
  cluster->add_option("--out", cluster_out);

  // solve
  auto* solve = app.add_subcommand("solve", "single-shot optimization");
  SolveArgs sa;
  solve->add_option("--instance", sa.instance_path)->required();
  solve->add_option("--solver", sa.solver, "milp|ldd");
  solve->add_option("--mode", sa.mode, "joint|vehicles|trailers");
  solve->add_flag("--clustered", sa.clustered, "main-station decomposition");
  solve->add_option("--k", sa.k);
  solve->add_option("--time-limit", sa.time_limit, "seconds (milp)");
  solve->add_option("--slave-time-limit", sa.slave_time_limit);
  solve->add_option("--gamma0", sa.gamma0);
  solve->add_option("--delta", sa.delta, "relative duality-gap threshold");
  solve->add_option("--max-iters", sa.max_iters);
  solve->add_option("--dump-milp", sa.dump_milp, "write the MILP as JSON");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "rolling-horizon simulation");
  SimulateArgs ma;
  simulate->add_option("--instance", ma.instance_path)->required();
  simulate->add_option("--policy", ma.policy, "drrpvt|drrpv|drrpt|noop|all");
  simulate->add_option("--planner", ma.planner, "auto|milp|ldd|clustered");
  simulate->add_option("--lookahead", ma.lookahead);
  simulate->add_option("--k", ma.k);
  simulate->add_option("--time-limit", ma.time_limit);
  simulate->add_option("--slave-time-limit", ma.slave_time_limit);
  simulate->add_option("--max-iters", ma.max_iters);
  simulate->add_option("--bidders", ma.bidders);
  simulate->add_flag("--no-auction", ma.no_auction,
                     "execute planned tasks without crowdsourcing");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "paper-protocol sweeps");
  ExperimentArgs ea;
  experiment->add_option("--name", ea.name)->required();
  experiment->add_option("--instances", ea.instances);
  experiment->add_option("--stations", ea.stations);
  experiment->add_option("--k", ea.k);
  experiment->add_option("--vehicles", ea.vehicles);
  experiment->add_option("--trailers", ea.trailers);
  experiment->add_option("--horizon", ea.horizon);
  experiment->add_option("--min-stations", ea.min_stations);
  experiment->add_option("--max-stations", ea.max_stations);
  experiment->add_option("--step", ea.step);
  experiment->add_option("--time-limit", ea.time_limit);
  experiment->add_option("--slave-time-limit", ea.slave_time_limit);
  experiment->add_option("--max-iters", ea.max_iters);
  experiment->add_option("--vary", ea.vary,
                         "main-stations|vehicles|trailers (ratio-sweep)");
  experiment->add_option("--ratios", ea.ratios, "comma-separated ratio list");

  // report
  auto* report = app.add_subcommand("report", "render an artifact as markdown");
  std::string report_input, report_out;
  report->add_option("--input", report_input)->required();
  report->add_option("--out", report_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err = {{"error", {{"code", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  try {
    if (*synth) {
      syn.seed = g.seed;
      ProblemInstance in = generate_synthetic(syn);
      std::string path = synth_out.empty() ? out_path(g, "instance.json")
                                           : synth_out;
      save_instance(in, path);
      emit_artifact(path);
      return 0;
    }
    if (*ingest) {
      ColumnMapping mapping;
      if (!map_json.empty()) {
        json jm = load_json(map_json);
        for (auto it = jm.begin(); it != jm.end(); ++it) {
          mapping.rename[it.key()] = it.value().get<std::string>();
        }
      }
      ReadDiagnostics st_diag, trip_diag;
      auto stations = read_stations(stations_csv, mapping, &st_diag);
      auto trips = read_trips(trips_csv, mapping, &trip_diag);
      FitDiagnostics fit;
      ProblemInstance in = build_instance_from_data(stations, trips,
                                                    epoch_minutes, window,
                                                    econ, &fit);
      std::string path = ingest_out.empty() ? out_path(g, "instance.json")
                                            : ingest_out;
      save_instance(in, path);
      emit_artifact(path);
      json diag = {{"schema", "drrpvt-ingest-diagnostics/1"},
                   {"station_rows", st_diag.rows},
                   {"station_issues", st_diag.issues},
                   {"trip_rows", trip_diag.rows},
                   {"trip_issues", trip_diag.issues},
                   {"trips_retained", fit.retained},
                   {"trips_outside_window", fit.dropped_outside_window},
                   {"trips_unknown_station", fit.dropped_unknown_station},
                   {"trips_bad_times", fit.dropped_bad_times},
                   {"days", fit.days}};
      write_artifact(g, "ingest_diagnostics.json", canonical_dump(diag));
      return 0;
    }
    if (*cluster) {
      ProblemInstance in = load_instance(cluster_instance);
      int k = cluster_k > 0 ? cluster_k
                            : default_cluster_count(in.num_stations());
      auto cl = compute_main_stations(in.stations, k, g.seed);
      std::string path = cluster_out.empty() ? out_path(g, "clustering.csv")
                                             : cluster_out;
      write_text(path, clustering_csv(in.stations, cl));
      emit_artifact(path);
      return 0;
    }
    if (*solve) return cmd_solve(g, sa);
    if (*simulate) return cmd_simulate(g, ma);
    if (*experiment) return cmd_experiment(g, ea);
    if (*report) return cmd_report(g, report_input, report_out);
  } catch (const Error& e) {
    json ctx = json::object();
    for (const auto& [k, v] : e.context()) ctx[k] = v;
    json err = {{"error",
                 {{"code", e.code()}, {"message", e.what()}, {"context", ctx}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
